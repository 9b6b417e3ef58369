#pragma once

// The pair g (+) g^dual, the good isomorphism, the dualizing 2-form and the
// checks of the T-duality theorem.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "langdual/ceforms.hpp"
#include "langdual/chevalley.hpp"

namespace langdual {

class NotADE : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// g = L, g^dual = Ldual, product basis: all of L then all of Ldual.
struct ProductPair {
  std::shared_ptr<const ReductiveLieAlgebra> L, Ldual;
  LieAlgebraPtr product;
  RatMatrix phi;  // Ldual.dim x L.dim, columns = images of the L basis
  std::vector<SparseVec> spanning_set;
  std::vector<std::string> spanning_labels;

  SparseVec q_embed(const RatVector& x) const;      // x (+) 0
  SparseVec qdual_embed(const RatVector& y) const;  // 0 (+) y
  InvariantForm pull_q(const InvariantForm& w) const;
  InvariantForm pull_qdual(const InvariantForm& w) const;
};

/// e_i -> e_i^dual, f_i -> f_i^dual, h_i -> h_i^dual, radical basis -> dual
/// radical basis, extended to all of g and checked to preserve brackets.
/// Throws NotADE unless alpha(h_beta) = beta(h_alpha) for all roots.
RatMatrix good_isomorphism(const ReductiveLieAlgebra& l, const ReductiveLieAlgebra& ldual);

/// Builds both algebras, phi and the spanning set of E0. Throws NotADE.
ProductPair make_product_pair(const RootDatum& datum, unsigned jobs = 1);

/// sum over roots of (q* alpha) ^ ((q^dual)* alpha^dual), tagged -1/(4 pi^2).
InvariantForm tautological_two_form(const ProductPair& p);

/// sum_i (q* w_i) ^ ((q^dual)* z_i): w_i runs over the coradical basis (1-forms
/// on g vanishing on [g, g]) and z_i over the radical basis of g, read as
/// 1-forms on g^dual. Zero for semisimple g.
InvariantForm poincare_correction(const ProductPair& p);

struct CheckRecord {
  std::string name;
  bool pass = true;
  bool mandatory = true;
  std::optional<std::string> witness;
  std::optional<Scalar> residual;
  std::string detail;
  double seconds = 0;
};

CheckRecord check_ade_symmetry(const RootDatum& d);
CheckRecord check_angle_positivity(const RootDatum& d);
CheckRecord check_good_isomorphism(const ProductPair& p);
CheckRecord check_nondegeneracy(const ProductPair& p, bool with_poincare = true);
CheckRecord check_integrality(const ProductPair& p, const Scalar& scale = 1);
/// d(n(F + F_P)) - n q*H + n (q^dual)*H^dual on all triples of the spanning set.
CheckRecord check_flux_equation(const ProductPair& p, const Scalar& scale = 1, unsigned jobs = 1);
/// The same residual must be nonzero somewhere on the full product when g is
/// not abelian.
CheckRecord check_full_space_control(const ProductPair& p, unsigned jobs = 1);
/// H and H^dual closed and invariant, d F_P = 0.
CheckRecord check_ns_flux(const ProductPair& p, unsigned jobs = 1);

/// sum_alpha alpha(h_beta) h_alpha = c_beta h_beta with c_beta = K(h_beta, h_beta)/2.
std::optional<std::size_t> eigen_relation_violation(const ReductiveLieAlgebra& l);

struct VerifyOptions {
  std::vector<long> scales;
  unsigned jobs = 1;
};

struct VerificationReport {
  RootDatum datum, dual;
  std::string type, dual_type;
  FundamentalGroup pi1, dual_pi1;
  std::vector<std::pair<std::string, SparseVec>> phi;  // (source label, image)
  std::vector<std::string> dual_labels;
  std::vector<CheckRecord> checks;
  std::vector<long> scales;
  bool aborted = false;

  bool overall() const;
  const CheckRecord* find(const std::string& name) const;
};

/// Runs every check in order; a non-ADE datum stops after the symmetry check.
VerificationReport verify_all(const RootDatum& datum, const VerifyOptions& options = {});

}  // namespace langdual
