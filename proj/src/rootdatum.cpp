#include "langdual/rootdatum.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace langdual {

namespace {

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

// If w = c * v for a rational c, returns c.
std::optional<Scalar> proportionality(const IntVector& v, const IntVector& w) {
  std::size_t k = 0;
  while (k < v.size() && v[k] == 0) ++k;
  if (k == v.size()) return std::nullopt;
  Scalar c(w[k], v[k]);
  c.canonicalize();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (Scalar(w[i]) != c * v[i]) return std::nullopt;
  return c;
}

void fail(AxiomCheck& check, std::vector<std::size_t> witness, std::string detail) {
  if (!check.pass) return;  // keep the first witness
  check.pass = false;
  check.witness = std::move(witness);
  check.detail = std::move(detail);
}

void check_reflections(const std::vector<IntVector>& moved, const std::vector<IntVector>& mirrors_pair,
                       const std::vector<IntVector>& mirrors, const char* what, AxiomCheck& out) {
  // x -> x - <x, pair_j> mirror_j must map `moved` into itself.
  std::set<IntVector> members(moved.begin(), moved.end());
  for (std::size_t j = 0; j < mirrors.size(); ++j) {
    for (std::size_t i = 0; i < moved.size(); ++i) {
      const Integer c = dot(moved[i], mirrors_pair[j]);
      IntVector img = moved[i];
      for (std::size_t k = 0; k < img.size(); ++k) img[k] -= c * mirrors[j][k];
      if (!members.count(img)) {
        std::ostringstream os;
        os << "reflection by index " << j << " sends " << what << " " << i << " outside the set";
        fail(out, {j, i}, os.str());
        return;
      }
    }
  }
}

void check_reduced(const std::vector<IntVector>& xs, const char* what, AxiomCheck& out) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t k = i + 1; k < xs.size(); ++k) {
      auto c = proportionality(xs[i], xs[k]);
      if (c && *c != 1 && *c != -1) {
        std::ostringstream os;
        os << what << " " << k << " is " << c->get_str() << " times " << what << " " << i;
        fail(out, {i, k}, os.str());
        return;
      }
    }
}

}  // namespace

std::string AxiomReport::summary() const {
  std::ostringstream os;
  auto line = [&](const char* name, const AxiomCheck& c) {
    os << name << ": " << (c.pass ? "pass" : "FAIL");
    if (!c.pass) {
      os << " [";
      for (std::size_t i = 0; i < c.witness.size(); ++i) os << (i ? "," : "") << c.witness[i];
      os << "] " << c.detail;
    }
    os << '\n';
  };
  line("structure", structure);
  line("pairing_two", pairing_two);
  line("reflections", reflections);
  line("reduced", reduced);
  return os.str();
}

AxiomReport validate(const RootDatum& d) {
  AxiomReport r;
  if (d.roots.size() != d.coroots.size()) {
    fail(r.structure, {}, "roots and coroots differ in count");
    r.pairing_two.pass = r.reflections.pass = r.reduced.pass = false;
    return r;
  }
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    if (d.roots[i].size() != d.rank || d.coroots[i].size() != d.rank) {
      fail(r.structure, {i}, "vector length differs from rank");
      r.pairing_two.pass = r.reflections.pass = r.reduced.pass = false;
      return r;
    }
    if (is_zero(d.roots[i]) || is_zero(d.coroots[i])) fail(r.structure, {i}, "zero root or coroot");
  }
  {
    std::set<IntVector> seen_r, seen_c;
    for (std::size_t i = 0; i < d.roots.size(); ++i) {
      if (!seen_r.insert(d.roots[i]).second) fail(r.structure, {i}, "duplicated root");
      if (!seen_c.insert(d.coroots[i]).second) fail(r.structure, {i}, "duplicated coroot");
    }
  }
  for (std::size_t i = 0; i < d.roots.size(); ++i)
    if (d.pairing(i, i) != 2) {
      fail(r.pairing_two, {i}, "<x, x*> = " + d.pairing(i, i).get_str());
      break;
    }
  check_reflections(d.coroots, d.roots, d.coroots, "coroot", r.reflections);
  check_reflections(d.roots, d.coroots, d.roots, "root", r.reflections);
  check_reduced(d.coroots, "coroot", r.reduced);
  check_reduced(d.roots, "root", r.reduced);
  return r;
}

void require_valid(const RootDatum& d) {
  auto rep = validate(d);
  if (!rep.ok()) throw InvalidRootDatum("root datum fails the axioms:\n" + rep.summary());
}

RootDatum dualize(const RootDatum& d) {
  RootDatum out;
  out.rank = d.rank;
  out.roots = d.coroots;
  out.coroots = d.roots;
  if (!d.label.empty()) {
    const std::string suffix = "^dual";
    if (d.label.size() > suffix.size() && d.label.compare(d.label.size() - suffix.size(), suffix.size(), suffix) == 0)
      out.label = d.label.substr(0, d.label.size() - suffix.size());
    else
      out.label = d.label + suffix;
  }
  return out;
}

Integer generic_functional(const std::vector<IntVector>& all, const IntVector& v) {
  Integer m = 0;
  for (const auto& x : all)
    for (const auto& c : x) m = std::max<Integer>(m, abs(c));
  m += 1;
  Integer f = 0, p = 1;
  for (const auto& c : v) {
    f += p * c;
    p *= m;
  }
  return f;
}

PositiveSystem positive_system(const RootDatum& d) {
  const std::size_t n = d.num_roots();
  auto side = [&](const std::vector<IntVector>& vs) {
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i)
      if (generic_functional(vs, vs[i]) > 0) pos.push_back(i);
    return pos;
  };
  auto from_roots = side(d.roots);
  auto from_coroots = side(d.coroots);
  const auto& chosen = std::min(from_roots, from_coroots);

  PositiveSystem ps;
  ps.positive.assign(n, false);
  for (auto i : chosen) ps.positive[i] = true;

  std::set<IntVector> decomposable;
  for (std::size_t a = 0; a < chosen.size(); ++a)
    for (std::size_t b = a + 1; b < chosen.size(); ++b) {
      IntVector s = d.roots[chosen[a]];
      for (std::size_t k = 0; k < s.size(); ++k) s[k] += d.roots[chosen[b]][k];
      decomposable.insert(std::move(s));
    }
  for (auto i : chosen)
    if (!decomposable.count(d.roots[i])) ps.simple.push_back(i);
  return ps;
}

IntMatrix cartan_matrix(const RootDatum& d, const PositiveSystem& ps) {
  const std::size_t r = ps.simple.size();
  IntMatrix a(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) a(i, j) = d.pairing(ps.simple[i], ps.simple[j]);
  return a;
}

IntMatrix cartan_matrix(const RootDatum& d) {
  return cartan_matrix(d, positive_system(d));
}

std::optional<std::pair<std::size_t, std::size_t>> ade_asymmetry_witness(const RootDatum& d) {
  for (std::size_t i = 0; i < d.num_roots(); ++i)
    for (std::size_t j = i + 1; j < d.num_roots(); ++j)
      if (d.pairing(i, j) != d.pairing(j, i)) return std::make_pair(i, j);
  return std::nullopt;
}

bool is_ade(const RootDatum& d) {
  return !ade_asymmetry_witness(d).has_value();
}

FundamentalGroup fundamental_group(const RootDatum& d) {
  FundamentalGroup g;
  IntMatrix c = IntMatrix::from_rows(d.coroots, d.rank);
  std::size_t r = 0;
  for (const auto& f : smith_normal_form(c)) {
    if (f != 0) ++r;
    if (f > 1) g.torsion.push_back(f);
  }
  g.free_rank = d.rank - r;
  return g;
}

std::size_t semisimple_rank(const RootDatum& d) {
  if (d.coroots.empty()) return 0;
  return rank(to_rational(IntMatrix::from_rows(d.coroots, d.rank)));
}

std::optional<std::size_t> find_root(const RootDatum& d, const IntVector& v) {
  for (std::size_t i = 0; i < d.roots.size(); ++i)
    if (d.roots[i] == v) return i;
  return std::nullopt;
}

}  // namespace langdual
