#include "langdual/chevalley.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace langdual {

std::string BasisLabel::str() const {
  switch (kind) {
    case Kind::Radical: return "z" + std::to_string(index);
    case Kind::Cartan: return "h" + std::to_string(index);
    case Kind::RootVec: return "X" + std::to_string(index);
  }
  return {};
}

ReductiveLieAlgebra::ReductiveLieAlgebra(RootDatum datum, unsigned jobs) : datum_(std::move(datum)) {
  require_valid(datum_);
  const std::size_t n = datum_.rank;
  const std::size_t nroots = datum_.num_roots();
  ps_ = langdual::positive_system(datum_);

  radical_ = integer_kernel(IntMatrix::from_rows(datum_.roots, n));
  coradical_ = integer_kernel(IntMatrix::from_rows(datum_.coroots, n));
  const std::size_t t = radical_.rows(), r = ps_.simple.size();
  if (t + r != n) throw std::logic_error("radical and coroot spans do not fill the torus");

  // Columns: radical basis, then simple coroots.
  RatMatrix torus_basis(n, n);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t k = 0; k < n; ++k) torus_basis(k, i) = radical_(i, k);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < n; ++k) torus_basis(k, t + j) = datum_.coroots[ps_.simple[j]][k];
  torus_basis_inverse_ = RatMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    RatVector unit(n);
    unit[k] = 1;
    auto x = solve_exact(torus_basis, unit);
    if (!x) throw std::logic_error("torus basis is singular");
    for (std::size_t i = 0; i < n; ++i) torus_basis_inverse_(i, k) = (*x)[i];
  }

  RatMatrix simple_roots(n, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < n; ++k) simple_roots(k, j) = datum_.roots[ps_.simple[j]][k];
  for (std::size_t a = 0; a < nroots; ++a) {
    auto c = solve_exact(simple_roots, to_rational(datum_.roots[a]));
    IntVector ci;
    for (const auto& q : *c) {
      if (q.get_den() != 1) throw std::logic_error("root is not an integral combination of simple roots");
      ci.push_back(q.get_num());
    }
    by_simple_coords_.emplace(ci, a);
    simple_coords_.push_back(std::move(ci));
  }

  std::vector<std::size_t> pos;
  for (std::size_t a = 0; a < nroots; ++a)
    if (ps_.positive[a]) pos.push_back(a);
  std::sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
    const Integer ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return simple_coords_[a] < simple_coords_[b];
  });
  order_.assign(nroots, 0);
  for (std::size_t k = 0; k < pos.size(); ++k) order_[pos[k]] = k;

  for (std::size_t b = 0; b < nroots; ++b) {
    Integer k = 0;
    for (std::size_t g = 0; g < nroots; ++g) {
      const Integer v = datum_.pairing(b, g);
      k += v * v;
    }
    length2_.emplace_back(Integer(4), k);
    length2_.back().canonicalize();
  }

  for (std::size_t i = 0; i < t; ++i) labels_.push_back({BasisLabel::Kind::Radical, i});
  for (std::size_t j = 0; j < r; ++j) labels_.push_back({BasisLabel::Kind::Cartan, ps_.simple[j]});
  for (std::size_t a = 0; a < nroots; ++a) labels_.push_back({BasisLabel::Kind::RootVec, a});
  const std::size_t d = labels_.size();
  dim_ = d;

  std::vector<SparseVec> table(d * d);
  auto at = [&](std::size_t i, std::size_t j) -> SparseVec& { return table[i * d + j]; };
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t b = 0; b < nroots; ++b) {
      const Integer v = datum_.pairing(ps_.simple[j], b);
      if (v == 0) continue;
      const auto xb = static_cast<std::uint32_t>(root_index(b));
      at(cartan_index(j), root_index(b)) = {{xb, Scalar(v)}};
      at(root_index(b), cartan_index(j)) = {{xb, Scalar(-v)}};
    }
  for (std::size_t a = 0; a < nroots; ++a)
    for (std::size_t b = 0; b < nroots; ++b) {
      if (negative(a) == b) {
        at(root_index(a), root_index(b)) = to_sparse(coroot_vector(a));
      } else if (auto s = root_sum(a, b)) {
        at(root_index(a), root_index(b)) = {{static_cast<std::uint32_t>(root_index(*s)), compute_n(a, b)}};
      }
    }

  std::vector<std::string> names;
  for (const auto& l : labels_) names.push_back(l.str());
  algebra_ = std::make_shared<const LieAlgebra>(std::move(names), std::move(table));

  if (auto v = algebra_->antisymmetry_violation())
    throw JacobiFailure("structure constants are not antisymmetric at (" + algebra_->label(v->first) + ", " +
                        algebra_->label(v->second) + ")");
  if (auto v = algebra_->jacobi_violation(jobs))
    throw JacobiFailure("Jacobi identity fails on (" + algebra_->label(std::get<0>(*v)) + ", " +
                        algebra_->label(std::get<1>(*v)) + ", " + algebra_->label(std::get<2>(*v)) + ")");
}

RatVector ReductiveLieAlgebra::torus_element(const RatVector& lambda) const {
  if (lambda.size() != datum_.rank) throw DimensionMismatch("torus_element: wrong lattice dimension");
  RatVector coords = torus_basis_inverse_ * lambda;
  RatVector v(dim());
  std::copy(coords.begin(), coords.end(), v.begin());
  return v;
}

RatVector ReductiveLieAlgebra::torus_element(const IntVector& lambda) const {
  return torus_element(to_rational(lambda));
}

RatVector ReductiveLieAlgebra::coroot_vector(std::size_t root) const {
  return torus_element(datum_.coroots.at(root));
}

RatVector ReductiveLieAlgebra::basis_vector(std::size_t i) const {
  RatVector v(dim());
  v.at(i) = 1;
  return v;
}

RatVector ReductiveLieAlgebra::functional_on_torus(const IntVector& weight) const {
  if (weight.size() != datum_.rank) throw DimensionMismatch("functional_on_torus: wrong lattice dimension");
  RatVector out;
  for (std::size_t i = 0; i < radical_rank(); ++i) out.emplace_back(dot(radical_.row(i), weight));
  for (auto s : ps_.simple) out.emplace_back(dot(datum_.coroots[s], weight));
  return out;
}

Integer ReductiveLieAlgebra::height(std::size_t root) const {
  return std::accumulate(simple_coords_[root].begin(), simple_coords_[root].end(), Integer(0));
}

std::optional<std::size_t> ReductiveLieAlgebra::negative(std::size_t root) const {
  IntVector c = simple_coords_[root];
  for (auto& x : c) x = -x;
  auto it = by_simple_coords_.find(c);
  if (it == by_simple_coords_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> ReductiveLieAlgebra::root_sum(std::size_t a, std::size_t b) const {
  IntVector c = simple_coords_[a];
  for (std::size_t k = 0; k < c.size(); ++k) c[k] += simple_coords_[b][k];
  auto it = by_simple_coords_.find(c);
  if (it == by_simple_coords_.end()) return std::nullopt;
  return it->second;
}

bool ReductiveLieAlgebra::precedes(std::size_t a, std::size_t b) const {
  return order_[a] < order_[b];
}

std::pair<std::size_t, std::size_t> ReductiveLieAlgebra::extraspecial_pair(std::size_t xi) const {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t a = 0; a < datum_.num_roots(); ++a) {
    if (!ps_.positive[a] || a == xi) continue;
    auto na = negative(a);
    auto b = root_sum(xi, *na);
    if (!b || !ps_.positive[*b]) continue;
    if (!best || precedes(a, best->first)) best = std::make_pair(a, *b);
  }
  if (!best) throw std::logic_error("extraspecial pair requested for a simple or negative root");
  return *best;
}

std::size_t ReductiveLieAlgebra::string_length_below(std::size_t a, std::size_t b) const {
  std::size_t p = 0;
  IntVector c = simple_coords_[b];
  while (true) {
    for (std::size_t k = 0; k < c.size(); ++k) c[k] -= simple_coords_[a][k];
    if (!by_simple_coords_.count(c)) return p;
    ++p;
  }
}

Scalar ReductiveLieAlgebra::root_length2(std::size_t root) const {
  return length2_.at(root);
}

Scalar ReductiveLieAlgebra::structure_constant(std::size_t a, std::size_t b) const {
  if (!root_sum(a, b)) return 0;
  return compute_n(a, b);
}

// Recursion on the height of a + b, using
//   N_{b,a} = -N_{a,b},  N_{-a,-b} = -N_{a,b},
//   N_{r,s}/(t,t) = N_{s,t}/(r,r) = N_{t,r}/(s,s)          (r+s+t = 0),
// and for a special pair (r,s) of xi with extraspecial pair (a,b):
//   N_{r,s} = (xi,xi)/N_{a,b} * ( N_{s,-a} N_{r,-b} / (s-a,s-a)
//                                + N_{-a,r} N_{s,-b} / (r-a,r-a) ).
Scalar ReductiveLieAlgebra::compute_n(std::size_t r, std::size_t s) const {
  auto sum = root_sum(r, s);
  if (!sum) return 0;
  if (auto it = n_cache_.find({r, s}); it != n_cache_.end()) return it->second;

  const bool pr = ps_.positive[r], qs = ps_.positive[s];
  Scalar value;
  if (pr && qs) {
    if (precedes(s, r)) {
      value = -compute_n(s, r);
    } else {
      const std::size_t xi = *sum;
      const auto [a, b] = extraspecial_pair(xi);
      const Scalar nab = Scalar(static_cast<long>(string_length_below(a, b) + 1));
      if (r == a && s == b) {
        value = nab;
      } else {
        const std::size_t na = *negative(a), nb = *negative(b);
        Scalar acc = 0;
        if (auto sa = root_sum(s, na)) acc += compute_n(s, na) * compute_n(r, nb) / length2_[*sa];
        if (auto ra = root_sum(r, na)) acc += compute_n(na, r) * compute_n(s, nb) / length2_[*ra];
        value = length2_[xi] / nab * acc;
      }
    }
  } else if (!pr && !qs) {
    value = -compute_n(*negative(r), *negative(s));
  } else {
    const std::size_t t = *negative(*sum);
    if (ps_.positive[s] == ps_.positive[t])
      value = length2_[t] / length2_[r] * compute_n(s, t);
    else
      value = length2_[t] / length2_[s] * compute_n(t, r);
  }
  n_cache_.emplace(std::make_pair(r, s), value);
  return value;
}

RatMatrix extend_from_generators(const ReductiveLieAlgebra& src, const LieAlgebra& target,
                                 const GeneratorImages& images) {
  const std::size_t r = src.semisimple_rank(), t = src.radical_rank();
  if (images.e.size() != r || images.f.size() != r || images.h.size() != r || images.radical.size() != t)
    throw DimensionMismatch("generator image counts do not match the algebra");
  std::vector<SparseVec> img(src.dim());
  for (std::size_t i = 0; i < t; ++i) img[src.radical_index(i)] = to_sparse(images.radical[i]);
  const auto& simple = src.positive_system().simple;
  for (std::size_t j = 0; j < r; ++j) {
    img[src.cartan_index(j)] = to_sparse(images.h[j]);
    img[src.root_index(simple[j])] = to_sparse(images.e[j]);
    img[src.root_index(*src.negative(simple[j]))] = to_sparse(images.f[j]);
  }
  std::vector<std::size_t> pos;
  for (std::size_t a = 0; a < src.datum().num_roots(); ++a)
    if (src.positive_system().positive[a] && std::find(simple.begin(), simple.end(), a) == simple.end())
      pos.push_back(a);
  std::sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) { return src.precedes(a, b); });
  for (std::size_t xi : pos) {
    const auto [a, b] = src.extraspecial_pair(xi);
    img[src.root_index(xi)] =
        scaled(target.bracket(img[src.root_index(a)], img[src.root_index(b)]), 1 / src.structure_constant(a, b));
    const std::size_t na = *src.negative(a), nb = *src.negative(b);
    img[src.root_index(*src.negative(xi))] =
        scaled(target.bracket(img[src.root_index(na)], img[src.root_index(nb)]), 1 / src.structure_constant(na, nb));
  }
  RatMatrix m(target.dim(), src.dim());
  for (std::size_t j = 0; j < src.dim(); ++j)
    for (const auto& [i, c] : img[j]) m(i, j) = c;
  return m;
}

std::string structure_constants_json(const ReductiveLieAlgebra& l) {
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  const auto& alg = *l.algebra();
  for (std::size_t i = 0; i < alg.dim(); ++i)
    for (std::size_t j = i + 1; j < alg.dim(); ++j) {
      const auto& v = alg.bracket_basis(i, j);
      if (v.empty()) continue;
      nlohmann::ordered_json out = nlohmann::ordered_json::array();
      for (const auto& [k, c] : v) out.push_back({alg.label(k), to_string(c)});
      pairs.push_back({{"x", alg.label(i)}, {"y", alg.label(j)}, {"out", out}});
    }
  nlohmann::ordered_json doc;
  doc["pairs"] = pairs;
  return doc.dump();
}

CorootIdentityReport verify_coroot_identity(const ReductiveLieAlgebra& l) {
  CorootIdentityReport rep;
  const auto& k = l.killing_matrix();
  for (std::size_t a = 0; a < l.datum().num_roots(); ++a) {
    const RatVector ha = l.coroot_vector(a);
    const Scalar kaa = l.killing_form(ha, ha);
    const RatVector alpha = l.functional_on_torus(l.datum().roots[a]);
    for (std::size_t c = 0; c < l.cartan_dim(); ++c) {
      Scalar k_c_ha = 0;
      for (std::size_t m = 0; m < l.cartan_dim(); ++m) k_c_ha += k(c, m) * ha[m];
      if (alpha[c] * kaa != 2 * k_c_ha) {
        rep.pass = false;
        rep.witness = std::make_pair(a, c);
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace langdual
