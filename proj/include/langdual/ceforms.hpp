#pragma once

// Left-invariant forms on a Lie algebra, stored as sparse alternating
// multilinear forms in the dual basis.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "langdual/chevalley.hpp"
#include "langdual/lie_algebra.hpp"

namespace langdual {

/// Symbolic prefactor rat * pi^pi_pow, kept outside the exact coefficients.
struct NormalizationTag {
  Scalar rat = 1;
  int pi_pow = 0;

  friend NormalizationTag operator*(const NormalizationTag& a, const NormalizationTag& b) {
    return {a.rat * b.rat, a.pi_pow + b.pi_pow};
  }
  friend bool operator==(const NormalizationTag& a, const NormalizationTag& b) {
    return a.rat == b.rat && a.pi_pow == b.pi_pow;
  }
};

/// The -1/(4 pi^2) carried by H and F.
inline NormalizationTag cartan_tag() { return {Scalar(-1, 4), -2}; }

class FormMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Support = std::vector<std::uint32_t>;  // strictly increasing basis indices

class InvariantForm {
 public:
  InvariantForm(LieAlgebraPtr base, std::size_t degree, NormalizationTag tag = {});

  static InvariantForm constant(LieAlgebraPtr base, const Scalar& c, NormalizationTag tag = {});
  /// The dual-basis 1-form e^i.
  static InvariantForm dual_basis(LieAlgebraPtr base, std::size_t i);
  /// The 1-form with the given values on the basis.
  static InvariantForm one_form(LieAlgebraPtr base, const RatVector& values);

  const LieAlgebraPtr& base() const { return base_; }
  std::size_t degree() const { return degree_; }
  const NormalizationTag& tag() const { return tag_; }
  const std::map<Support, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * e^{idx_0} ^ ... ^ e^{idx_{k-1}} for indices in any order.
  void add_term(Support idx, const Scalar& c);

  /// Value on basis vectors in the given order (permutation sign applied).
  Scalar evaluate_basis(const std::vector<std::size_t>& idx) const;
  /// Value on arbitrary vectors, (a ^ b)(x, y) = a(x) b(y) - a(y) b(x).
  Scalar evaluate(const std::vector<RatVector>& args) const;

  InvariantForm with_tag(NormalizationTag tag) const;

  InvariantForm& operator+=(const InvariantForm& o);
  InvariantForm& operator-=(const InvariantForm& o);
  friend InvariantForm operator+(InvariantForm a, const InvariantForm& b) { return a += b; }
  friend InvariantForm operator-(InvariantForm a, const InvariantForm& b) { return a -= b; }
  friend InvariantForm operator*(const Scalar& s, const InvariantForm& f);

 private:
  LieAlgebraPtr base_;
  std::size_t degree_;
  NormalizationTag tag_;
  std::map<Support, Scalar> terms_;

  void require_compatible(const InvariantForm& o, const char* what) const;
};

/// Hash lookup for repeated evaluation of one form on sparse vectors.
class FormEvaluator {
 public:
  explicit FormEvaluator(const InvariantForm& form);
  Scalar operator()(const std::vector<const SparseVec*>& args) const;

 private:
  std::size_t degree_;
  std::unordered_map<std::uint64_t, Scalar> values_;
};

InvariantForm wedge(const InvariantForm& a, const InvariantForm& b);

/// Chevalley-Eilenberg differential, extended from d e^m = -sum_{i<j} c^m_ij e^i ^ e^j
/// by the graded Leibniz rule; on 1-forms d w(X, Y) = -w([X, Y]).
InvariantForm ce_differential(const InvariantForm& w, unsigned jobs = 1);

/// Pullback along a linear map target -> base; images[j] is the image of
/// target basis vector j in the base basis.
InvariantForm pullback(const InvariantForm& w, LieAlgebraPtr target, const std::vector<SparseVec>& images);

/// K(x, [y, z]) on basis triples, tagged -1/(4 pi^2). Throws std::logic_error
/// if the three cyclic evaluations of some triple disagree.
InvariantForm cartan_three_form(const LieAlgebraPtr& g);

/// The root alpha on the Cartan subalgebra, zero on root vectors.
InvariantForm extended_root_form(const ReductiveLieAlgebra& l, std::size_t root);

bool is_closed(const InvariantForm& w, unsigned jobs = 1);
/// z . w = 0 for every basis vector z, where (z . w)(x_1..x_k) = -sum_i w(.., [z, x_i], ..).
bool is_invariant(const InvariantForm& w);

/// Flat-torus transform: wedge q*w with exp(F0), F0 = sum_ij P_ij e^i ^ f^j on
/// t (+) t^dual, and keep the coefficient of the full volume of t. Degree k
/// goes to n - k. Both algebras must be abelian of the same dimension n and
/// P must be invertible.
InvariantForm torus_fm_transform(const InvariantForm& w, const RatMatrix& pairing, LieAlgebraPtr target);

}  // namespace langdual
