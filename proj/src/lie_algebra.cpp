#include "langdual/lie_algebra.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <thread>

namespace langdual {

SparseVec to_sparse(const RatVector& v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return s;
}

RatVector to_dense(const SparseVec& v, std::size_t dim) {
  RatVector d(dim);
  for (const auto& [i, c] : v) {
    if (i >= dim) throw DimensionMismatch("sparse index out of range");
    d[i] = c;
  }
  return d;
}

void axpy(SparseVec& acc, const Scalar& f, const SparseVec& v) {
  if (f == 0 || v.empty()) return;
  SparseVec out;
  out.reserve(acc.size() + v.size());
  auto a = acc.begin();
  auto b = v.begin();
  while (a != acc.end() || b != v.end()) {
    if (b == v.end() || (a != acc.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == acc.end() || b->first < a->first) {
      out.emplace_back(b->first, f * b->second);
      ++b;
    } else {
      Scalar s = a->second + f * b->second;
      if (s != 0) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  acc = std::move(out);
}

SparseVec scaled(const SparseVec& v, const Scalar& f) {
  SparseVec out;
  if (f == 0) return out;
  out.reserve(v.size());
  for (const auto& [i, c] : v) out.emplace_back(i, f * c);
  return out;
}

void parallel_chunks(std::size_t n, unsigned jobs, const std::function<void(std::size_t, std::size_t)>& fn) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || n < 2) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + jobs - 1) / jobs;
  for (std::size_t begin = 0; begin < n; begin += chunk) {
    const std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

LieAlgebra::LieAlgebra(std::vector<std::string> labels, std::vector<SparseVec> table)
    : labels_(std::move(labels)), table_(std::move(table)) {
  if (table_.size() != labels_.size() * labels_.size())
    throw DimensionMismatch("structure-constant table must have dim^2 entries");
  for (const auto& v : table_)
    for (const auto& [i, c] : v)
      if (i >= labels_.size()) throw DimensionMismatch("structure constant refers to a basis index out of range");
  killing_ = compute_killing();
}

LieAlgebra LieAlgebra::abelian(std::size_t dim, const std::string& prefix) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < dim; ++i) labels.push_back(prefix + std::to_string(i));
  return LieAlgebra(std::move(labels), std::vector<SparseVec>(dim * dim));
}

LieAlgebra LieAlgebra::direct_sum(const LieAlgebra& a, const LieAlgebra& b, const std::string& suffix) {
  const std::size_t n = a.dim(), m = b.dim(), d = n + m;
  std::vector<std::string> labels = a.labels();
  for (const auto& l : b.labels()) labels.push_back(l + suffix);
  std::vector<SparseVec> table(d * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * d + j] = a.bracket_basis(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      SparseVec v = b.bracket_basis(i, j);
      for (auto& [k, c] : v) k += static_cast<std::uint32_t>(n);
      table[(n + i) * d + (n + j)] = std::move(v);
    }
  return LieAlgebra(std::move(labels), std::move(table));
}

SparseVec LieAlgebra::bracket(const SparseVec& x, const SparseVec& y) const {
  SparseVec out;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) {
      if (i >= dim() || j >= dim()) throw DimensionMismatch("bracket: vector index out of range");
      axpy(out, a * b, bracket_basis(i, j));
    }
  return out;
}

RatVector LieAlgebra::bracket(const RatVector& x, const RatVector& y) const {
  if (x.size() != dim() || y.size() != dim()) throw DimensionMismatch("bracket: vectors must have length dim");
  return to_dense(bracket(to_sparse(x), to_sparse(y)), dim());
}

bool LieAlgebra::is_abelian() const {
  return std::all_of(table_.begin(), table_.end(), [](const SparseVec& v) { return v.empty(); });
}

RatMatrix LieAlgebra::ad(std::size_t i) const {
  RatMatrix m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j)
    for (const auto& [k, c] : bracket_basis(i, j)) m(k, j) = c;
  return m;
}

RatMatrix LieAlgebra::compute_killing() const {
  const std::size_t n = dim();
  // ad_i as (row, col, value) triples; K_ij = sum ad_i[l][m] ad_j[m][l].
  std::vector<std::vector<std::tuple<std::uint32_t, std::uint32_t, Scalar>>> entries(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < n; ++m)
      for (const auto& [l, c] : bracket_basis(i, m)) entries[i].emplace_back(l, m, c);
  RatMatrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Scalar s = 0;
      for (const auto& [l, m, c] : entries[i]) {
        // ad_j[m][l] is the coefficient of e_m in [e_j, e_l]
        for (const auto& [idx, v] : bracket_basis(j, l))
          if (idx == m) {
            s += c * v;
            break;
          }
      }
      k(i, j) = s;
      k(j, i) = s;
    }
  return k;
}

Scalar LieAlgebra::killing_form(const RatVector& x, const RatVector& y) const {
  if (x.size() != dim() || y.size() != dim()) throw DimensionMismatch("killing_form: vectors must have length dim");
  const RatMatrix& k = killing_matrix();
  Scalar s = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j)
      if (y[j] != 0) s += x[i] * k(i, j) * y[j];
  }
  return s;
}

std::optional<std::pair<std::size_t, std::size_t>> LieAlgebra::antisymmetry_violation() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i; j < dim(); ++j) {
      SparseVec s = bracket_basis(i, j);
      axpy(s, 1, bracket_basis(j, i));
      if (!s.empty()) return std::make_pair(i, j);
    }
  return std::nullopt;
}

std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> LieAlgebra::jacobi_violation(unsigned jobs) const {
  const std::size_t n = dim();
  std::mutex mu;
  std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> first;
  auto basis_bracket = [&](std::size_t i, const SparseVec& v) {
    SparseVec out;
    for (const auto& [k, c] : v) axpy(out, c, bracket_basis(i, k));
    return out;
  };
  parallel_chunks(n, jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          SparseVec s = basis_bracket(i, bracket_basis(j, k));
          axpy(s, 1, basis_bracket(j, bracket_basis(k, i)));
          axpy(s, 1, basis_bracket(k, bracket_basis(i, j)));
          if (!s.empty()) {
            std::lock_guard lock(mu);
            auto t = std::make_tuple(i, j, k);
            if (!first || t < *first) first = t;
            return;
          }
        }
  });
  return first;
}

std::optional<std::pair<std::size_t, std::size_t>> homomorphism_violation(const LieAlgebra& src,
                                                                          const LieAlgebra& target,
                                                                          const RatMatrix& map) {
  if (map.rows() != target.dim() || map.cols() != src.dim())
    throw DimensionMismatch("homomorphism map has wrong shape");
  std::vector<SparseVec> images;
  for (std::size_t j = 0; j < src.dim(); ++j) images.push_back(to_sparse(map.col(j)));
  for (std::size_t i = 0; i < src.dim(); ++i)
    for (std::size_t j = i + 1; j < src.dim(); ++j) {
      SparseVec lhs;
      for (const auto& [k, c] : src.bracket_basis(i, j)) axpy(lhs, c, images[k]);
      SparseVec rhs = target.bracket(images[i], images[j]);
      axpy(lhs, -1, rhs);
      if (!lhs.empty()) return std::make_pair(i, j);
    }
  return std::nullopt;
}

}  // namespace langdual
