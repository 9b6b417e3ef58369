#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "langdual/rootdatum.hpp"

using namespace langdual;

namespace {

RootDatum make(const std::string& desc) {
  return build_from_dynkin(parse_descriptor(desc));
}

bool equal_up_to_permutation(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) return false;
  std::vector<std::size_t> p(a.rows());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool same = true;
    for (std::size_t i = 0; i < a.rows() && same; ++i)
      for (std::size_t j = 0; j < a.rows() && same; ++j) same = a(p[i], p[j]) == b(i, j);
    if (same) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// Classical root counts.
std::size_t expected_roots(char family, std::size_t n) {
  switch (family) {
    case 'A': return n * (n + 1);
    case 'B':
    case 'C': return 2 * n * n;
    case 'D': return 2 * n * (n - 1);
    case 'E': return n == 6 ? 72 : n == 7 ? 126 : 240;
    case 'F': return 48;
    case 'G': return 12;
  }
  return 0;
}

const std::vector<std::string> kBuiltIn = {"A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "B5", "B6",
                                           "C2", "C3", "C4", "C5", "C6", "D3", "D4", "D5", "D6", "E6", "F4",
                                           "G2"};

}  // namespace

TEST_CASE("descriptor grammar") {
  auto d = parse_descriptor("A1xT1:sc");
  CHECK(d.factors.size() == 1);
  CHECK(d.torus_rank == 1);
  CHECK(d.isogeny == Isogeny::SimplyConnected);
  CHECK(parse_descriptor("D4xA2:adj").isogeny == Isogeny::Adjoint);
  CHECK(parse_descriptor("A3:ad").isogeny == Isogeny::Adjoint);
  CHECK(parse_descriptor("A1:adjxA1").isogeny == Isogeny::Adjoint);
  CHECK(parse_descriptor("T2").factors.empty());
  CHECK(parse_descriptor("B3").isogeny == Isogeny::SimplyConnected);
  CHECK_THROWS_AS(parse_descriptor("A1:scxA1:adj"), InvalidDescriptor);
  CHECK_THROWS_AS(parse_descriptor("Z3"), InvalidDescriptor);
  CHECK_THROWS_AS(parse_descriptor("B1"), InvalidDescriptor);
  CHECK_THROWS_AS(parse_descriptor("E9"), InvalidDescriptor);
  CHECK_THROWS_AS(parse_descriptor("F3"), InvalidDescriptor);
  CHECK_THROWS_AS(parse_descriptor("A"), InvalidDescriptor);
  CHECK_THROWS_AS(parse_descriptor(""), InvalidDescriptor);
  CHECK_THROWS_AS(parse_descriptor("A2:xy"), InvalidDescriptor);
  CHECK(descriptor_label(parse_descriptor("A1xT1")) == "A1 x T1 (sc)");
}

TEST_CASE("built-in types satisfy the axioms and have the classical root counts") {
  for (const auto& name : kBuiltIn)
    for (const char* iso : {":sc", ":adj"}) {
      CAPTURE(name);
      const RootDatum d = make(name + iso);
      CHECK(validate(d).ok());
      CHECK(d.num_roots() == expected_roots(name[0], std::stoul(name.substr(1))));
      CHECK(semisimple_rank(d) == d.rank);
    }
}

TEST_CASE("Cartan matrices match the Bourbaki tables up to relabelling") {
  for (const auto& name : kBuiltIn) {
    CAPTURE(name);
    const auto desc = parse_descriptor(name);
    const IntMatrix expected = family_cartan_matrix(desc.factors[0].family, desc.factors[0].rank);
    CHECK(equal_up_to_permutation(cartan_matrix(make(name)), expected));
    CHECK(equal_up_to_permutation(cartan_matrix(make(name + ":adj")), expected));
  }
  // Hand-written oracles.
  CHECK(family_cartan_matrix(Family::A, 2) == IntMatrix{{2, -1}, {-1, 2}});
  CHECK(family_cartan_matrix(Family::B, 2) == IntMatrix{{2, -1}, {-2, 2}});
  CHECK(family_cartan_matrix(Family::C, 2) == IntMatrix{{2, -2}, {-1, 2}});
  CHECK(family_cartan_matrix(Family::G, 2) == IntMatrix{{2, -3}, {-1, 2}});
}

TEST_CASE("fundamental groups") {
  // Adjoint groups: the centre of the simply connected cover.
  struct Row {
    const char* desc;
    IntVector torsion;
  };
  const std::vector<Row> rows = {
      {"A1:adj", {2}}, {"A2:adj", {3}}, {"A3:adj", {4}},    {"B3:adj", {2}}, {"C3:adj", {2}},
      {"D4:adj", {2, 2}}, {"D5:adj", {4}}, {"E6:adj", {3}}, {"F4:adj", {}},  {"G2:adj", {}},
      {"A1:sc", {}},   {"D4:sc", {}},   {"E6:sc", {}},
  };
  for (const auto& r : rows) {
    CAPTURE(r.desc);
    const auto g = fundamental_group(make(r.desc));
    CHECK(g.torsion == r.torsion);
    CHECK(g.free_rank == 0);
  }
  // |pi_1| of the adjoint group equals |det A|.
  for (const auto& name : kBuiltIn) {
    const auto g = fundamental_group(make(name + ":adj"));
    Integer order = 1;
    for (const auto& t : g.torsion) order *= t;
    const auto desc = parse_descriptor(name);
    CHECK(order == abs(det_exact(family_cartan_matrix(desc.factors[0].family, desc.factors[0].rank))));
  }
  CHECK(fundamental_group(make("T2")).free_rank == 2);
  CHECK(fundamental_group(make("A1xT1")).free_rank == 1);
}

TEST_CASE("dualize is an involution and transposes the Cartan matrix") {
  for (const auto& name : kBuiltIn)
    for (const char* iso : {":sc", ":adj"}) {
      CAPTURE(name);
      const RootDatum d = make(name + iso);
      const RootDatum dd = dualize(d);
      CHECK(dualize(dd) == d);
      CHECK(validate(dd).ok());
      CHECK(cartan_matrix(dd) == cartan_matrix(d).transpose());
      CHECK(positive_system(dd).simple == positive_system(d).simple);
    }
  const RootDatum b3 = make("B3:sc");
  const RootDatum c3 = dualize(b3);
  CHECK(identify_type(c3) == "C3 (adj)");
  CHECK(fundamental_group(c3).torsion == IntVector{2});
  CHECK(equal_up_to_permutation(cartan_matrix(c3), family_cartan_matrix(Family::C, 3)));
  CHECK(identify_type(dualize(make("A1"))) == "A1 (adj)");
  CHECK(dualize(make("T1")).roots.empty());
}

TEST_CASE("type identification") {
  for (const auto& name : kBuiltIn) {
    if (name == "C2") continue;  // B2 = C2
    if (name == "D3") continue;  // D3 = A3
    CHECK(identify_type(make(name)) == name + " (sc)");
  }
  CHECK(identify_type(make("D3")) == "A3 (sc)");
  CHECK(identify_type(make("A1xT1")) == "A1 x T1 (sc)");
  CHECK(identify_type(make("A2xA1:adj")) == "A2 x A1 (adj)");
  CHECK(identify_type(make("T2")) == "T2");
  CHECK(identify_type(dualize(make("F4"))) == "F4 (sc)");
  CHECK(identify_type(dualize(make("G2"))) == "G2 (sc)");
}

TEST_CASE("ADE detection") {
  for (const char* t : {"A1", "A4", "D4", "D5", "E6", "A2xA1", "T3", "A1xT1"}) CHECK(is_ade(make(t)));
  for (const char* t : {"B2", "B3", "C3", "F4", "G2", "A1xB2"}) CHECK_FALSE(is_ade(make(t)));
  const RootDatum b3 = make("B3");
  auto w = ade_asymmetry_witness(b3);
  REQUIRE(w);
  const Integer x = b3.pairing(w->first, w->second), y = b3.pairing(w->second, w->first);
  CHECK(std::min(x, y) == -2);
  CHECK(std::max(x, y) == -1);
}

TEST_CASE("custom lattice: SL4 / mu_2") {
  DynkinDescriptor desc = parse_descriptor("A3");
  desc.isogeny = Isogeny::Custom;
  desc.custom_lattice = IntMatrix{{1, 0, -1}, {0, 1, 0}, {0, 0, 2}};
  const RootDatum d = build_from_dynkin(desc);
  CHECK(validate(d).ok());
  CHECK(fundamental_group(d).torsion == IntVector{2});
  CHECK(fundamental_group(dualize(d)).torsion == IntVector{2});
  CHECK(identify_type(d) == "A3 (intermediate)");

  desc.custom_lattice = IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 4}};  // misses the coroot lattice
  CHECK_THROWS_AS(build_from_dynkin(desc), InvalidDescriptor);
  desc.custom_lattice = IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}};
  CHECK_THROWS_AS(build_from_dynkin(desc), InvalidDescriptor);
}

TEST_CASE("validation catches broken data") {
  RootDatum d = make("A1");
  RootDatum bad = d;
  bad.coroots[0] = IntVector{2};
  bad.coroots[1] = IntVector{-2};
  CHECK_FALSE(validate(bad).pairing_two.pass);

  // A1 x A1 with the second root's coroot tilted: <x, x*> = 2 still holds
  // but the reflections no longer preserve the root set.
  RootDatum a1a1 = make("A1xA1:adj");
  RootDatum tilted = a1a1;
  for (std::size_t i = 0; i < tilted.num_roots(); ++i)
    if (tilted.roots[i][1] != 0) tilted.coroots[i][0] = tilted.roots[i][1];
  CHECK(tilted.pairing(0, 0) == 2);
  CHECK_FALSE(validate(tilted).reflections.pass);

  // Non-reduced: roots +-1, +-2 with coroots +-2, +-1 (BC1).
  RootDatum bc1{1, {{1}, {-1}, {2}, {-2}}, {{2}, {-2}, {1}, {-1}}, "BC1"};
  CHECK_FALSE(validate(bc1).reduced.pass);

  RootDatum shape = d;
  shape.coroots.pop_back();
  CHECK_FALSE(validate(shape).structure.pass);
  CHECK_THROWS_AS(require_valid(shape), InvalidRootDatum);
  RootDatum zero{1, {{0}, {0}}, {{1}, {-1}}, ""};
  CHECK_FALSE(validate(zero).structure.pass);
}

TEST_CASE("torus and product shapes") {
  const RootDatum t2 = make("T2");
  CHECK(t2.rank == 2);
  CHECK(t2.num_roots() == 0);
  CHECK(validate(t2).ok());
  const RootDatum gl = make("A1xT1");
  CHECK(gl.rank == 2);
  CHECK(gl.num_roots() == 2);
  CHECK(semisimple_rank(gl) == 1);
}
