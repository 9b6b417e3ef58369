#pragma once

// Finite-dimensional Lie algebras over Q given by a structure-constant table.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "langdual/exactlin.hpp"

namespace langdual {

/// Sorted by index, no explicit zeros.
using SparseVec = std::vector<std::pair<std::uint32_t, Scalar>>;

SparseVec to_sparse(const RatVector& v);
RatVector to_dense(const SparseVec& v, std::size_t dim);
/// acc += f * v
void axpy(SparseVec& acc, const Scalar& f, const SparseVec& v);
SparseVec scaled(const SparseVec& v, const Scalar& f);

class LieAlgebra {
 public:
  /// table[i * dim + j] = [e_i, e_j].
  LieAlgebra(std::vector<std::string> labels, std::vector<SparseVec> table);

  static LieAlgebra abelian(std::size_t dim, const std::string& prefix = "e");
  /// Basis: all of `a`, then all of `b`; labels of `b` get `suffix`.
  static LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b, const std::string& suffix = "^");

  std::size_t dim() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  const SparseVec& bracket_basis(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  SparseVec bracket(const SparseVec& x, const SparseVec& y) const;
  RatVector bracket(const RatVector& x, const RatVector& y) const;

  bool is_abelian() const;

  /// Matrix of ad(e_i) in the basis.
  RatMatrix ad(std::size_t i) const;

  /// Tr(ad x ad y), computed at construction.
  const RatMatrix& killing_matrix() const { return killing_; }
  Scalar killing_form(const RatVector& x, const RatVector& y) const;

  /// First basis pair with [e_i,e_j] != -[e_j,e_i].
  std::optional<std::pair<std::size_t, std::size_t>> antisymmetry_violation() const;

  /// First basis triple violating the Jacobi identity. Work is split over
  /// `jobs` threads; the reported triple is the lexicographically first.
  std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> jacobi_violation(unsigned jobs = 1) const;

 private:
  std::vector<std::string> labels_;
  std::vector<SparseVec> table_;
  RatMatrix killing_;

  RatMatrix compute_killing() const;
};

using LieAlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// First basis pair (i, j) on which `map` (columns = images of src basis)
/// fails to intertwine the brackets.
std::optional<std::pair<std::size_t, std::size_t>> homomorphism_violation(const LieAlgebra& src,
                                                                          const LieAlgebra& target,
                                                                          const RatMatrix& map);

/// Runs fn(begin, end) over [0, n) split into `jobs` contiguous chunks.
void parallel_chunks(std::size_t n, unsigned jobs, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace langdual
