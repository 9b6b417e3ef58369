#include <algorithm>
#include <stdexcept>

#include "langdual/chevalley.hpp"

namespace langdual {

namespace {

RatMatrix commutator(const RatMatrix& x, const RatMatrix& y) {
  RatMatrix xy = x * y, yx = y * x;
  RatMatrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = xy(i, j) - yx(i, j);
  return out;
}

}  // namespace

SlnOracle::SlnOracle(std::size_t n) : n_(n) {
  if (n < 2) throw std::invalid_argument("sl_n oracle needs n >= 2");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      RatMatrix m(n, n);
      m(i, j) = 1;
      matrices_.push_back(std::move(m));
      labels.push_back("E" + std::to_string(i) + std::to_string(j));
    }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    RatMatrix m(n, n);
    m(k, k) = 1;
    m(k + 1, k + 1) = -1;
    matrices_.push_back(std::move(m));
    labels.push_back("H" + std::to_string(k));
  }

  // Decompose a traceless matrix: off-diagonal entries directly, and the
  // diagonal through H_k with coefficient d_0 + ... + d_k.
  const std::size_t d = matrices_.size();
  auto decompose = [&](const RatMatrix& m) {
    SparseVec v;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && m(i, j) != 0) v.emplace_back(static_cast<std::uint32_t>(e_index(i, j)), m(i, j));
    Scalar acc = 0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      acc += m(k, k);
      if (acc != 0) v.emplace_back(static_cast<std::uint32_t>(h_index(k)), acc);
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  };
  std::vector<SparseVec> table(d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) table[a * d + b] = decompose(commutator(matrices_[a], matrices_[b]));
  algebra_ = std::make_shared<const LieAlgebra>(std::move(labels), std::move(table));
}

std::size_t SlnOracle::e_index(std::size_t i, std::size_t j) const {
  if (i == j || i >= n_ || j >= n_) throw std::out_of_range("e_index needs distinct indices below n");
  return i * (n_ - 1) + (j < i ? j : j - 1);
}

std::size_t SlnOracle::h_index(std::size_t k) const {
  if (k + 1 >= n_) throw std::out_of_range("h_index out of range");
  return n_ * (n_ - 1) + k;
}

RatMatrix SlnOracle::realize(const RatVector& v) const {
  if (v.size() != matrices_.size()) throw DimensionMismatch("realize: wrong vector length");
  RatMatrix out(n_, n_);
  for (std::size_t b = 0; b < v.size(); ++b) {
    if (v[b] == 0) continue;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out(i, j) += v[b] * matrices_[b](i, j);
  }
  return out;
}

Scalar SlnOracle::trace_form(std::size_t a, std::size_t b) const {
  const RatMatrix p = matrices_.at(a) * matrices_.at(b);
  Scalar tr = 0;
  for (std::size_t i = 0; i < n_; ++i) tr += p(i, i);
  return Scalar(static_cast<long>(2 * n_)) * tr;
}

RatMatrix SlnOracle::trace_killing_matrix() const {
  const std::size_t d = matrices_.size();
  RatMatrix k(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) k(a, b) = trace_form(a, b);
  return k;
}

RatMatrix sl_n_matching_map(const ReductiveLieAlgebra& l, const SlnOracle& oracle) {
  const std::size_t r = l.semisimple_rank();
  if (l.radical_rank() != 0 || r + 1 != oracle.n())
    throw std::invalid_argument("sl_n matching needs a semisimple algebra of rank n-1");
  const IntMatrix a = cartan_matrix(l.datum());
  auto neighbours = [&](std::size_t i) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < r; ++j)
      if (j != i && a(i, j) != 0) out.push_back(j);
    return out;
  };
  std::size_t start = 0;
  while (start < r && neighbours(start).size() > 1) ++start;
  std::vector<std::size_t> path{start};
  std::vector<bool> seen(r, false);
  seen[start] = true;
  while (path.size() < r) {
    auto next = neighbours(path.back());
    auto it = std::find_if(next.begin(), next.end(), [&](std::size_t j) { return !seen[j]; });
    if (it == next.end()) throw std::invalid_argument("Dynkin diagram is not a path");
    seen[*it] = true;
    path.push_back(*it);
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (i != j && a(i, j) != 0 && a(i, j) != -1) throw std::invalid_argument("Dynkin diagram is not of type A");

  const std::size_t d = oracle.algebra()->dim();
  GeneratorImages g;
  g.e.resize(r, RatVector(d));
  g.f.resize(r, RatVector(d));
  g.h.resize(r, RatVector(d));
  for (std::size_t k = 0; k < r; ++k) {
    const std::size_t s = path[k];
    g.e[s][oracle.e_index(k, k + 1)] = 1;
    g.f[s][oracle.e_index(k + 1, k)] = 1;
    g.h[s][oracle.h_index(k)] = 1;
  }
  return extend_from_generators(l, *oracle.algebra(), g);
}

}  // namespace langdual
