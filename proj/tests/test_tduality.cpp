#include "doctest.h"
#include "langdual/json_io.hpp"
#include "langdual/tduality.hpp"

using namespace langdual;

namespace {

RootDatum make(const std::string& desc) {
  return build_from_dynkin(parse_descriptor(desc));
}

std::size_t span_dimension(const std::vector<SparseVec>& vs, std::size_t dim) {
  RatMatrix m(vs.size(), dim);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (const auto& [k, c] : vs[i]) m(i, k) = c;
  return rank(m);
}

Json strip_timing(Json j) {
  for (auto& c : j["checks"]) c.erase("seconds");
  return j;
}

}  // namespace

TEST_CASE("good isomorphism for A1") {
  const ProductPair p = make_product_pair(make("A1"));
  const auto& L = *p.L;
  const auto& D = *p.Ldual;
  CHECK(p.phi * L.coroot_vector(0) == D.coroot_vector(0));
  CHECK(p.phi.col(L.root_index(0)) == D.basis_vector(D.root_index(0)));
  CHECK(p.phi.col(L.root_index(1)) == D.basis_vector(D.root_index(1)));
  CHECK(check_good_isomorphism(p).pass);
}

TEST_CASE("good isomorphism is refused off ADE") {
  for (const char* name : {"B3", "C3", "G2", "F4", "B2"}) {
    const RootDatum d = make(name);
    const ReductiveLieAlgebra l(d), ld(dualize(d));
    CHECK_THROWS_AS(good_isomorphism(l, ld), NotADE);
    CHECK_THROWS_AS(make_product_pair(d), NotADE);
  }
}

TEST_CASE("good isomorphism on tori and mixed types") {
  const ProductPair t = make_product_pair(make("T2"));
  CHECK(t.phi == RatMatrix::identity(2));
  CHECK(check_good_isomorphism(t).pass);
  for (const char* name : {"D4", "A3:adj", "A1xT1", "A2xA1", "D5"}) {
    CAPTURE(name);
    const ProductPair p = make_product_pair(make(name));
    CHECK(check_good_isomorphism(p).pass);
    // phi(h_alpha) = h_alpha^dual for every root
    for (std::size_t a = 0; a < p.L->datum().num_roots(); ++a)
      CHECK(p.phi * p.L->coroot_vector(a) == p.Ldual->coroot_vector(a));
  }
}

TEST_CASE("spanning set of E0 has dimension 2 rank + |R|") {
  for (const char* name : {"T1", "A1", "A2", "A1xT1", "D4", "A3:adj"}) {
    CAPTURE(name);
    const RootDatum d = make(name);
    const ProductPair p = make_product_pair(d);
    CHECK(span_dimension(p.spanning_set, p.product->dim()) == 2 * d.rank + d.num_roots());
    CHECK(p.spanning_set.size() == p.spanning_labels.size());
  }
}

TEST_CASE("tautological two-form") {
  const ProductPair p = make_product_pair(make("A1"));
  const InvariantForm f = tautological_two_form(p);
  CHECK(f.tag() == cartan_tag());
  const FormEvaluator ev(f);
  const SparseVec h = p.q_embed(p.L->coroot_vector(0));
  const SparseVec hd = p.qdual_embed(p.Ldual->coroot_vector(0));
  const SparseVec x = p.q_embed(p.L->basis_vector(p.L->root_index(0)));
  CHECK(ev({&h, &hd}) == 8);
  CHECK(ev({&h, &h}) == 0);
  CHECK(ev({&h, &x}) == 0);
  CHECK(tautological_two_form(make_product_pair(make("T2"))).is_zero());
}

TEST_CASE("Poincare correction") {
  const ProductPair t1 = make_product_pair(make("T1"));
  const InvariantForm fp = poincare_correction(t1);
  REQUIRE(fp.terms().size() == 1);
  CHECK(fp.evaluate_basis({0, 1}) == 1);
  CHECK(poincare_correction(make_product_pair(make("A2"))).is_zero());
  const ProductPair gl = make_product_pair(make("A1xT1"));
  const InvariantForm fg = poincare_correction(gl);
  CHECK(fg.terms().size() == 1);
  CHECK(is_closed(fg));
  CHECK(fg.terms().begin()->first == Support{0, static_cast<std::uint32_t>(gl.L->dim())});
}

TEST_CASE("flux equation on the A1 worked triple") {
  const ProductPair p = make_product_pair(make("A1"));
  const auto& L = *p.L;
  const SparseVec h = p.q_embed(L.coroot_vector(0));
  const SparseVec& x = p.spanning_set[2];  // X0 + phi X0
  const SparseVec& y = p.spanning_set[3];  // X1 + phi X1
  REQUIRE(p.spanning_labels[2] == "X0+phi(X0)");
  const InvariantForm qh = p.pull_q(cartan_three_form(L.algebra()));
  const InvariantForm qhd = p.pull_qdual(cartan_three_form(p.Ldual->algebra()));
  CHECK(FormEvaluator(qh)({&h, &x, &y}) == 8);
  // (q^dual)*H^dual(h, X, Y) = sum over xi of xi(h_alpha) zeta(h_alpha) with the
  // dual root forms; it vanishes since h has no component in g^dual.
  CHECK(FormEvaluator(qhd)({&h, &x, &y}) == 0);
  InvariantForm f = tautological_two_form(p);
  f += poincare_correction(p);
  CHECK(FormEvaluator(ce_differential(f))({&h, &x, &y}) == 8);
  const SparseVec hd = p.qdual_embed(p.Ldual->coroot_vector(0));
  CHECK(FormEvaluator(qhd)({&hd, &x, &y}) == 8);
  CHECK(FormEvaluator(ce_differential(f))({&hd, &x, &y}) == -8);
}

TEST_CASE("flux equation holds on E0 and fails off it") {
  for (const char* name : {"T2", "A1", "A1:adj", "A2", "A1xT1", "A3:adj", "D4", "A2xA1"}) {
    CAPTURE(name);
    const ProductPair p = make_product_pair(make(name));
    const CheckRecord flux = check_flux_equation(p);
    CHECK(flux.pass);
    CHECK(flux.residual == Scalar(0));
    CHECK(check_flux_equation(p, -2, 2).pass);
    const CheckRecord control = check_full_space_control(p);
    CHECK(control.pass);
    if (!p.L->algebra()->is_abelian()) CHECK(*control.residual != 0);
    CHECK(check_ns_flux(p).pass);
  }
}

TEST_CASE("nondegeneracy and the eigen-relation") {
  const ProductPair a1 = make_product_pair(make("A1"));
  CHECK(check_nondegeneracy(a1).pass);
  const RatVector h = a1.L->coroot_vector(0);
  CHECK(a1.L->killing_form(h, h) / 2 == 4);
  CHECK_FALSE(eigen_relation_violation(*a1.L).has_value());

  const ProductPair a2 = make_product_pair(make("A2"));
  for (auto s : a2.L->positive_system().simple) {
    const RatVector hs = a2.L->coroot_vector(s);
    CHECK(a2.L->killing_form(hs, hs) / 2 == 6);
  }
  CHECK_FALSE(eigen_relation_violation(*a2.L).has_value());

  const ProductPair a2t = make_product_pair(make("A2xT1"));
  const CheckRecord without = check_nondegeneracy(a2t, false);
  CHECK_FALSE(without.pass);
  CHECK(*without.residual == 0);
  const CheckRecord with = check_nondegeneracy(a2t, true);
  CHECK(with.pass);
  CHECK(*with.residual != 0);
}

TEST_CASE("integrality") {
  const ProductPair a1 = make_product_pair(make("A1"));
  const CheckRecord r = check_integrality(a1);
  CHECK(r.pass);
  CHECK(r.detail == "lattice pairing [[4]]");
  CHECK(check_integrality(make_product_pair(make("T1"))).detail == "lattice pairing [[1]]");
  for (const char* name : {"D4", "A1xT1", "A3:adj", "A2xA1:adj"}) {
    const ProductPair p = make_product_pair(make(name));
    CHECK(check_integrality(p).pass);
    CHECK(check_integrality(p, 3).pass);
  }
}

TEST_CASE("angle positivity and ADE symmetry") {
  const RootDatum a2 = make("A2");
  CHECK(check_angle_positivity(a2).pass);
  CHECK(a2.pairing(0, 0) * a2.pairing(0, 0) == 4);
  const auto& simple = positive_system(a2).simple;
  CHECK(a2.pairing(simple[0], simple[1]) * a2.pairing(simple[1], simple[0]) == 1);
  const RootDatum a1a1 = make("A1xA1");
  CHECK(a1a1.pairing(0, 1) * a1a1.pairing(1, 0) == 0);
  for (const char* name : {"B3", "G2", "F4"}) CHECK(check_angle_positivity(make(name)).pass);

  CHECK(check_ade_symmetry(make("D4")).pass);
  CHECK(check_ade_symmetry(make("D4")).detail == "576 root pairs");
  CHECK(check_ade_symmetry(make("T2")).pass);
  const CheckRecord b3 = check_ade_symmetry(make("B3"));
  CHECK_FALSE(b3.pass);
  REQUIRE(b3.witness);
  CHECK(b3.witness->find("-1") != std::string::npos);
  CHECK(b3.witness->find("-2") != std::string::npos);
}

TEST_CASE("verify_all") {
  const VerificationReport a1 = verify_all(make("A1:sc"), {{3}, 1});
  CHECK(a1.overall());
  CHECK(a1.dual_type == "A1 (adj)");
  CHECK(a1.dual_pi1.torsion == IntVector{2});
  CHECK(a1.find("flux_equation[n=3]") != nullptr);
  CHECK(a1.find("integrality[n=3]")->pass);

  const VerificationReport b2 = verify_all(make("B2"));
  CHECK_FALSE(b2.overall());
  CHECK(b2.aborted);
  CHECK(b2.checks.size() == 1);
  CHECK(b2.find("flux_equation") == nullptr);

  CHECK_THROWS(verify_all(make("A1"), {{0}, 1}));
}

TEST_CASE("reports are deterministic and independent of the job count") {
  const RootDatum d = make("D4");
  const Json r1 = strip_timing(report_to_json(verify_all(d, {{2}, 1})));
  const Json r2 = strip_timing(report_to_json(verify_all(d, {{2}, 1})));
  const Json r3 = report_to_json(verify_all(d, {{2}, 3}), false);
  CHECK(r1.dump() == r2.dump());
  CHECK(r1.dump() == r3.dump());
}

TEST_CASE("dual coroots are the roots") {
  for (const char* name : {"A1", "D4", "A1xT1"}) {
    const ProductPair p = make_product_pair(make(name));
    for (std::size_t a = 0; a < p.L->datum().num_roots(); ++a) {
      CHECK(p.Ldual->datum().coroots[a] == p.L->datum().roots[a]);
      CHECK(dualize(p.Ldual->datum()) == p.L->datum());
    }
  }
}
