#pragma once

// The reductive Lie algebra of a root datum: radical plus a Chevalley basis
// of the semisimple part.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "langdual/exactlin.hpp"
#include "langdual/lie_algebra.hpp"
#include "langdual/rootdatum.hpp"

namespace langdual {

struct BasisLabel {
  enum class Kind { Radical, Cartan, RootVec };
  Kind kind;
  std::size_t index;  // radical index, root index of the simple root, or root index

  std::string str() const;
};

class JacobiFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Basis order: radical z_0..z_{t-1}, simple coroots h_{s_0}..h_{s_{r-1}}
/// (s = simple root indices, ascending), then X_0..X_{|R|-1} by root index.
///
/// Structure constants use the extraspecial-pair convention: positive roots
/// are ordered by (height, simple-root coordinates), N = +(p+1) on every
/// extraspecial pair, and every other N follows from the standard relations
/// among structure constants. The whole table is checked against the Jacobi
/// identity before the constructor returns.
class ReductiveLieAlgebra {
 public:
  explicit ReductiveLieAlgebra(RootDatum datum, unsigned jobs = 1);

  const RootDatum& datum() const { return datum_; }
  const PositiveSystem& positive_system() const { return ps_; }
  const LieAlgebraPtr& algebra() const { return algebra_; }
  std::size_t dim() const { return dim_; }
  const std::vector<BasisLabel>& labels() const { return labels_; }

  std::size_t radical_rank() const { return radical_.rows(); }
  std::size_t semisimple_rank() const { return ps_.simple.size(); }
  std::size_t cartan_dim() const { return radical_rank() + semisimple_rank(); }

  std::size_t radical_index(std::size_t i) const { return i; }
  std::size_t cartan_index(std::size_t simple_pos) const { return radical_rank() + simple_pos; }
  std::size_t root_index(std::size_t root) const { return cartan_dim() + root; }

  /// Rows: Z-basis of Lambda ∩ rad g (Lambda coordinates).
  const IntMatrix& radical_lattice() const { return radical_; }
  /// Rows: Z-basis of the dual-lattice functionals vanishing on all coroots.
  const IntMatrix& coradical_lattice() const { return coradical_; }

  /// Element of Lambda ⊗ Q written in the algebra basis.
  RatVector torus_element(const IntVector& lambda) const;
  RatVector torus_element(const RatVector& lambda) const;
  /// The coroot h_alpha as an algebra vector.
  RatVector coroot_vector(std::size_t root) const;
  RatVector basis_vector(std::size_t i) const;

  /// Value of a dual-lattice functional on each Cartan basis vector
  /// (radical block first); zero on root vectors when extended.
  RatVector functional_on_torus(const IntVector& weight) const;

  const IntVector& simple_coords(std::size_t root) const { return simple_coords_[root]; }
  Integer height(std::size_t root) const;
  std::optional<std::size_t> negative(std::size_t root) const;
  std::optional<std::size_t> root_sum(std::size_t a, std::size_t b) const;
  /// Positive-root order used for extraspecial pairs.
  bool precedes(std::size_t a, std::size_t b) const;
  /// (alpha, beta) with alpha minimal such that xi - alpha is positive.
  std::pair<std::size_t, std::size_t> extraspecial_pair(std::size_t xi) const;
  /// N_{a,b}: [X_a, X_b] = N_{a,b} X_{a+b}; zero when a+b is not a root.
  Scalar structure_constant(std::size_t a, std::size_t b) const;
  /// Largest p with b - p*a a root.
  std::size_t string_length_below(std::size_t a, std::size_t b) const;
  /// Invariant squared length 4 / K(h_a, h_a).
  Scalar root_length2(std::size_t root) const;

  const RatMatrix& killing_matrix() const { return algebra_->killing_matrix(); }
  Scalar killing_form(const RatVector& x, const RatVector& y) const { return algebra_->killing_form(x, y); }
  RatVector bracket(const RatVector& x, const RatVector& y) const { return algebra_->bracket(x, y); }

 private:
  RootDatum datum_;
  PositiveSystem ps_;
  IntMatrix radical_;
  IntMatrix coradical_;
  RatMatrix torus_basis_inverse_;  // Lambda coords -> (radical, simple coroot) coords
  std::vector<IntVector> simple_coords_;
  std::map<IntVector, std::size_t> by_simple_coords_;
  std::vector<std::size_t> order_;  // position of each positive root in the order
  std::vector<Scalar> length2_;
  mutable std::map<std::pair<std::size_t, std::size_t>, Scalar> n_cache_;
  std::vector<BasisLabel> labels_;
  std::size_t dim_ = 0;
  LieAlgebraPtr algebra_;

  Scalar compute_n(std::size_t a, std::size_t b) const;
};

/// Images of the Chevalley generators; e/f/h are indexed by position in the
/// simple-root list, `radical` by radical index.
struct GeneratorImages {
  std::vector<RatVector> e, f, h, radical;
};

/// Extends generator images to the whole basis (columns of the result),
/// reaching each non-simple root vector through its extraspecial pair.
/// Only meaningful when the images satisfy the Chevalley relations; check
/// the result with homomorphism_violation.
RatMatrix extend_from_generators(const ReductiveLieAlgebra& src, const LieAlgebra& target,
                                 const GeneratorImages& images);

/// Structure-constant dump: {"pairs": [{"x","y","out": [[label, "num/den"]]}]}.
std::string structure_constants_json(const ReductiveLieAlgebra& l);

/// Checks alpha(h) K(h_alpha, h_alpha) = 2 K(h, h_alpha) for every root and
/// every Cartan basis vector h.
struct CorootIdentityReport {
  bool pass = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // (root, cartan basis index)
};
CorootIdentityReport verify_coroot_identity(const ReductiveLieAlgebra& l);

/// sl_n realized by traceless n x n matrices: basis E_ij (i != j, row-major)
/// then H_k = E_kk - E_{k+1,k+1}.
class SlnOracle {
 public:
  explicit SlnOracle(std::size_t n);

  std::size_t n() const { return n_; }
  const LieAlgebraPtr& algebra() const { return algebra_; }
  const RatMatrix& matrix(std::size_t basis) const { return matrices_[basis]; }
  RatMatrix realize(const RatVector& v) const;
  std::size_t e_index(std::size_t i, std::size_t j) const;
  std::size_t h_index(std::size_t k) const;

  /// 2n Tr(XY).
  Scalar trace_form(std::size_t a, std::size_t b) const;
  RatMatrix trace_killing_matrix() const;

 private:
  std::size_t n_;
  std::vector<RatMatrix> matrices_;
  LieAlgebraPtr algebra_;
};

/// Chevalley generators of an A_{n-1} algebra sent to E_{k,k+1}, E_{k+1,k},
/// H_k along the Dynkin path; the result maps the full basis.
RatMatrix sl_n_matching_map(const ReductiveLieAlgebra& l, const SlnOracle& oracle);

}  // namespace langdual
