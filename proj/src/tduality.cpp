#include "langdual/tduality.hpp"

#include <chrono>
#include <mutex>
#include <sstream>

namespace langdual {

namespace {

RatVector padded(RatVector v, std::size_t dim) {
  v.resize(dim);
  return v;
}

InvariantForm flux_residual(const ProductPair& p, const Scalar& scale, unsigned jobs) {
  InvariantForm f = tautological_two_form(p);
  f += poincare_correction(p);
  InvariantForm rho = ce_differential(scale * f, jobs);
  rho -= scale * p.pull_q(cartan_three_form(p.L->algebra()));
  rho += scale * p.pull_qdual(cartan_three_form(p.Ldual->algebra()));
  return rho;
}

CheckRecord named(std::string name) {
  CheckRecord r;
  r.name = std::move(name);
  return r;
}

std::string scale_suffix(const Scalar& scale) {
  return scale == 1 ? "" : "[n=" + to_string(scale) + "]";
}

template <class Fn>
CheckRecord timed(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckRecord r = fn();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

SparseVec ProductPair::q_embed(const RatVector& x) const {
  if (x.size() != L->dim()) throw DimensionMismatch("q_embed: wrong length");
  return to_sparse(x);
}

SparseVec ProductPair::qdual_embed(const RatVector& y) const {
  if (y.size() != Ldual->dim()) throw DimensionMismatch("qdual_embed: wrong length");
  SparseVec v = to_sparse(y);
  for (auto& [i, c] : v) i += static_cast<std::uint32_t>(L->dim());
  return v;
}

InvariantForm ProductPair::pull_q(const InvariantForm& w) const {
  std::vector<SparseVec> images(product->dim());
  for (std::size_t i = 0; i < L->dim(); ++i) images[i] = {{static_cast<std::uint32_t>(i), Scalar(1)}};
  return pullback(w, product, images);
}

InvariantForm ProductPair::pull_qdual(const InvariantForm& w) const {
  std::vector<SparseVec> images(product->dim());
  const std::size_t n = L->dim();
  for (std::size_t i = 0; i < Ldual->dim(); ++i) images[n + i] = {{static_cast<std::uint32_t>(i), Scalar(1)}};
  return pullback(w, product, images);
}

RatMatrix good_isomorphism(const ReductiveLieAlgebra& l, const ReductiveLieAlgebra& ldual) {
  if (auto w = ade_asymmetry_witness(l.datum()))
    throw NotADE("no good isomorphism: alpha(h_beta) != beta(h_alpha) for roots " + std::to_string(w->first) + ", " +
                 std::to_string(w->second));
  const auto& simple = l.positive_system().simple;
  if (simple != ldual.positive_system().simple || l.radical_rank() != ldual.radical_rank())
    throw std::logic_error("datum and dual disagree on simple roots");

  GeneratorImages g;
  for (std::size_t j = 0; j < simple.size(); ++j) {
    g.e.push_back(ldual.basis_vector(ldual.root_index(simple[j])));
    g.f.push_back(ldual.basis_vector(ldual.root_index(*ldual.negative(simple[j]))));
    g.h.push_back(ldual.basis_vector(ldual.cartan_index(j)));
  }
  for (std::size_t i = 0; i < l.radical_rank(); ++i) g.radical.push_back(ldual.basis_vector(ldual.radical_index(i)));
  RatMatrix phi = extend_from_generators(l, *ldual.algebra(), g);

  if (auto v = homomorphism_violation(*l.algebra(), *ldual.algebra(), phi))
    throw std::logic_error("good isomorphism fails to preserve [" + l.algebra()->label(v->first) + ", " +
                           l.algebra()->label(v->second) + "]");
  for (std::size_t a = 0; a < l.datum().num_roots(); ++a)
    if (phi * l.coroot_vector(a) != ldual.coroot_vector(a))
      throw std::logic_error("good isomorphism does not send h_alpha to the dual coroot for root " +
                             std::to_string(a));
  return phi;
}

ProductPair make_product_pair(const RootDatum& datum, unsigned jobs) {
  ProductPair p;
  p.L = std::make_shared<const ReductiveLieAlgebra>(datum, jobs);
  p.Ldual = std::make_shared<const ReductiveLieAlgebra>(dualize(datum), jobs);
  p.product = std::make_shared<const LieAlgebra>(LieAlgebra::direct_sum(*p.L->algebra(), *p.Ldual->algebra()));
  p.phi = good_isomorphism(*p.L, *p.Ldual);

  // Spanning set of E0, one representative per vector up to sign: h_{-xi} = -h_xi
  // and Y_xi = X_{-xi}, so the listing over all roots adds nothing new.
  const auto& L = *p.L;
  const auto& D = *p.Ldual;
  const auto& pos = L.positive_system().positive;
  const std::size_t nroots = L.datum().num_roots();
  for (std::size_t a = 0; a < nroots; ++a)
    if (pos[a]) {
      p.spanning_set.push_back(p.q_embed(L.coroot_vector(a)));
      p.spanning_labels.push_back("h" + std::to_string(a));
    }
  for (std::size_t a = 0; a < nroots; ++a)
    if (pos[a]) {
      p.spanning_set.push_back(p.qdual_embed(D.coroot_vector(a)));
      p.spanning_labels.push_back("h" + std::to_string(a) + "^");
    }
  for (std::size_t a = 0; a < nroots; ++a) {
    SparseVec v = p.q_embed(L.basis_vector(L.root_index(a)));
    axpy(v, 1, p.qdual_embed(p.phi.col(L.root_index(a))));
    p.spanning_set.push_back(std::move(v));
    p.spanning_labels.push_back("X" + std::to_string(a) + "+phi(X" + std::to_string(a) + ")");
  }
  for (std::size_t i = 0; i < L.radical_rank(); ++i) {
    p.spanning_set.push_back(p.q_embed(L.basis_vector(L.radical_index(i))));
    p.spanning_labels.push_back("z" + std::to_string(i));
  }
  for (std::size_t i = 0; i < D.radical_rank(); ++i) {
    p.spanning_set.push_back(p.qdual_embed(D.basis_vector(D.radical_index(i))));
    p.spanning_labels.push_back("z" + std::to_string(i) + "^");
  }
  return p;
}

InvariantForm tautological_two_form(const ProductPair& p) {
  InvariantForm f(p.product, 2);
  for (std::size_t a = 0; a < p.L->datum().num_roots(); ++a)
    f += wedge(p.pull_q(extended_root_form(*p.L, a)), p.pull_qdual(extended_root_form(*p.Ldual, a)));
  return f.with_tag(cartan_tag());
}

InvariantForm poincare_correction(const ProductPair& p) {
  InvariantForm f(p.product, 2);
  const auto& L = *p.L;
  const auto& D = *p.Ldual;
  for (std::size_t i = 0; i < L.radical_rank(); ++i) {
    const auto w = InvariantForm::one_form(L.algebra(), padded(L.functional_on_torus(L.coradical_lattice().row(i)), L.dim()));
    const auto z = InvariantForm::one_form(D.algebra(), padded(D.functional_on_torus(L.radical_lattice().row(i)), D.dim()));
    f += wedge(p.pull_q(w), p.pull_qdual(z));
  }
  return f.with_tag(cartan_tag());
}

CheckRecord check_ade_symmetry(const RootDatum& d) {
  CheckRecord r = named("ade_symmetry");
  if (auto w = ade_asymmetry_witness(d)) {
    const auto [i, j] = *w;
    r.pass = false;
    std::ostringstream os;
    os << "roots (" << i << ", " << j << "): alpha_" << j << "(h_" << i << ") = " << d.pairing(i, j) << " vs alpha_"
       << i << "(h_" << j << ") = " << d.pairing(j, i);
    r.witness = os.str();
  }
  r.detail = std::to_string(d.num_roots() * d.num_roots()) + " root pairs";
  return r;
}

CheckRecord check_angle_positivity(const RootDatum& d) {
  CheckRecord r = named("angle_positivity");
  for (std::size_t i = 0; i < d.num_roots(); ++i)
    for (std::size_t j = 0; j < d.num_roots(); ++j) {
      const Integer v = d.pairing(i, j) * d.pairing(j, i);
      if (v < 0 || v > 4) {
        r.pass = false;
        r.witness = "roots (" + std::to_string(i) + ", " + std::to_string(j) + ")";
        r.residual = Scalar(v);
        return r;
      }
    }
  return r;
}

CheckRecord check_good_isomorphism(const ProductPair& p) {
  CheckRecord r = named("good_isomorphism");
  if (auto v = homomorphism_violation(*p.L->algebra(), *p.Ldual->algebra(), p.phi)) {
    r.pass = false;
    r.witness = "[" + p.L->algebra()->label(v->first) + ", " + p.L->algebra()->label(v->second) + "]";
    return r;
  }
  for (std::size_t a = 0; a < p.L->datum().num_roots(); ++a)
    if (p.phi * p.L->coroot_vector(a) != p.Ldual->coroot_vector(a)) {
      r.pass = false;
      r.witness = "phi(h" + std::to_string(a) + ") != h" + std::to_string(a) + "^";
      return r;
    }
  if (rank(p.phi) != p.L->dim()) {
    r.pass = false;
    r.detail = "phi is not invertible";
  }
  return r;
}

std::optional<std::size_t> eigen_relation_violation(const ReductiveLieAlgebra& l) {
  const auto& d = l.datum();
  for (std::size_t b = 0; b < d.num_roots(); ++b) {
    RatVector lhs(d.rank);
    for (std::size_t a = 0; a < d.num_roots(); ++a) {
      const Integer c = d.pairing(b, a);
      for (std::size_t k = 0; k < d.rank; ++k) lhs[k] += c * d.coroots[a][k];
    }
    const RatVector hb = l.coroot_vector(b);
    const Scalar cb = l.killing_form(hb, hb) / 2;
    for (std::size_t k = 0; k < d.rank; ++k)
      if (lhs[k] != cb * d.coroots[b][k]) return b;
  }
  return std::nullopt;
}

CheckRecord check_nondegeneracy(const ProductPair& p, bool with_poincare) {
  CheckRecord r = named(with_poincare ? "nondegeneracy" : "nondegeneracy_without_poincare");
  InvariantForm f = tautological_two_form(p);
  if (with_poincare) f += poincare_correction(p);
  const FormEvaluator ev(f);
  const auto& L = *p.L;
  const auto& D = *p.Ldual;
  RatMatrix m(L.cartan_dim(), D.cartan_dim());
  for (std::size_t i = 0; i < L.cartan_dim(); ++i) {
    const SparseVec x = p.q_embed(L.basis_vector(i));
    for (std::size_t j = 0; j < D.cartan_dim(); ++j) {
      const SparseVec y = p.qdual_embed(D.basis_vector(j));
      m(i, j) = ev({&x, &y});
    }
  }
  const Scalar det = L.cartan_dim() == D.cartan_dim() ? det_exact(m) : Scalar(0);
  r.residual = det;
  r.pass = det != 0;
  r.detail = "det of the pairing on t x t^dual";
  if (auto b = eigen_relation_violation(L)) {
    r.pass = false;
    r.witness = "eigen-relation fails for coroot " + std::to_string(*b);
  } else if (auto b2 = eigen_relation_violation(D)) {
    r.pass = false;
    r.witness = "eigen-relation fails for dual coroot " + std::to_string(*b2);
  } else {
    r.detail += "; c_beta = K(h_beta, h_beta)/2 for every coroot";
  }
  return r;
}

CheckRecord check_integrality(const ProductPair& p, const Scalar& scale) {
  CheckRecord r = named("integrality" + scale_suffix(scale));
  InvariantForm f = tautological_two_form(p);
  f += poincare_correction(p);
  const FormEvaluator ev(scale * f);
  const std::size_t n = p.L->datum().rank;
  std::ostringstream matrix;
  matrix << "[";
  for (std::size_t k = 0; k < n; ++k) {
    IntVector lambda(n, 0);
    lambda[k] = 1;
    const SparseVec x = p.q_embed(p.L->torus_element(lambda));
    matrix << (k ? ", [" : "[");
    for (std::size_t l = 0; l < n; ++l) {
      IntVector mu(n, 0);
      mu[l] = 1;
      const SparseVec y = p.qdual_embed(p.Ldual->torus_element(mu));
      const Scalar v = ev({&x, &y});
      matrix << (l ? ", " : "") << to_string(v);
      if (v.get_den() != 1 && r.pass) {
        r.pass = false;
        r.witness = "lattice pair (e" + std::to_string(k) + ", e" + std::to_string(l) + "^)";
        r.residual = v;
      }
    }
    matrix << "]";
  }
  matrix << "]";
  r.detail = "lattice pairing " + matrix.str();
  return r;
}

CheckRecord check_flux_equation(const ProductPair& p, const Scalar& scale, unsigned jobs) {
  CheckRecord r = named("flux_equation" + scale_suffix(scale));
  const InvariantForm rho = flux_residual(p, scale, jobs);
  const FormEvaluator ev(rho);
  const auto& s = p.spanning_set;
  const std::size_t n = s.size();
  std::mutex mu;
  std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> first;
  Scalar first_value;
  parallel_chunks(n, jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          Scalar v = ev({&s[i], &s[j], &s[k]});
          if (v != 0) {
            std::lock_guard lock(mu);
            auto t = std::make_tuple(i, j, k);
            if (!first || t < *first) {
              first = t;
              first_value = v;
            }
            return;
          }
        }
  });
  const std::size_t triples = n < 3 ? 0 : n * (n - 1) * (n - 2) / 6;
  r.detail = std::to_string(triples) + " triples from " + std::to_string(n) + " spanning vectors";
  if (first) {
    const auto [i, j, k] = *first;
    r.pass = false;
    r.witness = "(" + p.spanning_labels[i] + ", " + p.spanning_labels[j] + ", " + p.spanning_labels[k] + ")";
    r.residual = first_value;
  } else {
    r.residual = Scalar(0);
  }
  return r;
}

CheckRecord check_full_space_control(const ProductPair& p, unsigned jobs) {
  CheckRecord r = named("full_space_control");
  const InvariantForm rho = flux_residual(p, 1, jobs);
  const auto& L = *p.L;
  if (L.algebra()->is_abelian()) {
    r.pass = rho.is_zero();
    r.detail = "abelian: the residual vanishes on the whole product";
    r.residual = Scalar(0);
    return r;
  }
  // rho(h_xi (+) 0, X_xi (+) 0, X_{-xi} (+) 0) = -K(h_xi, h_xi)
  const std::size_t xi = L.positive_system().simple.front();
  const RatVector hx = L.coroot_vector(xi);
  const SparseVec a = p.q_embed(hx);
  const SparseVec b = p.q_embed(L.basis_vector(L.root_index(xi)));
  const SparseVec c = p.q_embed(L.basis_vector(L.root_index(*L.negative(xi))));
  const Scalar v = FormEvaluator(rho)({&a, &b, &c});
  r.residual = v;
  r.witness = "(h" + std::to_string(xi) + ", X" + std::to_string(xi) + ", X" + std::to_string(*L.negative(xi)) + ")";
  r.pass = v != 0 && v == -L.killing_form(hx, hx);
  r.detail = "expected -K(h, h) off E0";
  return r;
}

CheckRecord check_ns_flux(const ProductPair& p, unsigned jobs) {
  CheckRecord r = named("ns_flux");
  const InvariantForm h = cartan_three_form(p.L->algebra());
  const InvariantForm hd = cartan_three_form(p.Ldual->algebra());
  if (!is_closed(h, jobs) || !is_invariant(h)) {
    r.pass = false;
    r.witness = "H";
  } else if (!is_closed(hd, jobs) || !is_invariant(hd)) {
    r.pass = false;
    r.witness = "H^dual";
  } else if (!is_closed(poincare_correction(p), jobs)) {
    r.pass = false;
    r.witness = "F_P";
  }
  r.detail = "H, H^dual closed and invariant; d F_P = 0";
  return r;
}

bool VerificationReport::overall() const {
  if (aborted) return false;
  for (const auto& c : checks)
    if (c.mandatory && !c.pass) return false;
  return !checks.empty();
}

const CheckRecord* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

VerificationReport verify_all(const RootDatum& datum, const VerifyOptions& options) {
  require_valid(datum);
  for (long n : options.scales)
    if (n == 0) throw std::invalid_argument("flux scale must be nonzero");
  VerificationReport rep;
  rep.datum = datum;
  rep.dual = dualize(datum);
  rep.type = identify_type(datum);
  rep.dual_type = identify_type(rep.dual);
  rep.pi1 = fundamental_group(datum);
  rep.dual_pi1 = fundamental_group(rep.dual);
  rep.scales = options.scales;
  const unsigned jobs = options.jobs;

  rep.checks.push_back(timed([&] { return check_ade_symmetry(datum); }));
  if (!rep.checks.back().pass) {
    rep.aborted = true;
    return rep;
  }
  rep.checks.push_back(timed([&] { return check_angle_positivity(datum); }));

  const ProductPair p = make_product_pair(datum, jobs);
  const auto& labels = p.L->algebra()->labels();
  for (std::size_t j = 0; j < p.L->dim(); ++j) rep.phi.emplace_back(labels[j], to_sparse(p.phi.col(j)));
  rep.dual_labels = p.Ldual->algebra()->labels();

  rep.checks.push_back(timed([&] { return check_good_isomorphism(p); }));
  rep.checks.push_back(timed([&] { return check_nondegeneracy(p); }));
  rep.checks.push_back(timed([&] { return check_integrality(p); }));
  rep.checks.push_back(timed([&] { return check_flux_equation(p, 1, jobs); }));
  rep.checks.push_back(timed([&] { return check_full_space_control(p, jobs); }));
  rep.checks.push_back(timed([&] { return check_ns_flux(p, jobs); }));
  for (long n : options.scales) {
    rep.checks.push_back(timed([&] { return check_flux_equation(p, Scalar(n), jobs); }));
    rep.checks.push_back(timed([&] { return check_integrality(p, Scalar(n)); }));
  }
  return rep;
}

}  // namespace langdual
