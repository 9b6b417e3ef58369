#include "langdual/exactlin.hpp"

#include <algorithm>
#include <utility>

namespace langdual {

std::string to_string(const Scalar& s) {
  Scalar c = s;
  c.canonicalize();
  return c.get_str();
}

std::string to_string(const Integer& z) {
  return z.get_str();
}

Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  // Accept a leading unicode minus as well as '-'.
  const std::string uminus = "\xE2\x88\x92";
  if (s.rfind(uminus, 0) == 0) s = "-" + s.substr(uminus.size());
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Scalar q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Scalar(m(i, j));
  return r;
}

RatVector to_rational(const IntVector& v) {
  RatVector r;
  r.reserve(v.size());
  for (const auto& z : v) r.emplace_back(z);
  return r;
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Scalar dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

// In-place reduced row echelon form; returns pivot column per pivot row.
std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Scalar inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<RatVector> solve_exact(const RatMatrix& a, const RatVector& b) {
  if (a.rows() != b.size()) throw DimensionMismatch("solve_exact: rows of A differ from length of b");
  const std::size_t n = a.cols();
  RatMatrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  RatVector x(n);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, n);
  return x;
}

std::size_t rank(const RatMatrix& a) {
  RatMatrix m = a;
  return rref(m).size();
}

Integer det_exact(const IntMatrix& a) {
  if (!a.square()) throw DimensionMismatch("det_exact: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = std::move(t);
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Scalar det_exact(const RatMatrix& a) {
  if (!a.square()) throw DimensionMismatch("det_exact: matrix is not square");
  // Clear denominators row by row, then run the integer Bareiss.
  IntMatrix m(a.rows(), a.cols());
  Integer scale = 1;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Scalar v = a(i, j) * l;
      m(i, j) = v.get_num();
    }
    scale *= l;
  }
  Scalar d(det_exact(m), scale);
  d.canonicalize();
  return d;
}

IntVector smith_normal_form(const IntMatrix& a) {
  IntMatrix m = a;
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t n = std::min(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    // Pick the smallest nonzero entry of the trailing block as pivot.
    bool restart = true;
    while (restart) {
      restart = false;
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m(i, j) != 0 && (pi == rows || abs(m(i, j)) < abs(m(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) return [&] {
          IntVector d;
          for (std::size_t k = 0; k < n; ++k) d.push_back(abs(m(k, k)));
          return d;
        }();
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(t, j), m(pi, j));
      for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, t), m(i, pj));

      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, t).get_mpz_t(), m(t, t).get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) m(i, j) -= q * m(t, j);
        if (m(i, t) != 0) restart = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(t, j).get_mpz_t(), m(t, t).get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) m(i, j) -= q * m(i, t);
        if (m(t, j) != 0) restart = true;
      }
      if (restart) continue;
      // Divisibility: pivot must divide every remaining entry.
      for (std::size_t i = t + 1; i < rows && !restart; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(m(i, j).get_mpz_t(), m(t, t).get_mpz_t())) {
            for (std::size_t k = t; k < cols; ++k) m(t, k) += m(i, k);
            restart = true;
            break;
          }
    }
  }
  IntVector d;
  for (std::size_t k = 0; k < n; ++k) d.push_back(abs(m(k, k)));
  return d;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const std::size_t n = a.cols();
  IntMatrix m = a;
  IntMatrix v = IntMatrix::identity(n);
  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
    for (std::size_t i = 0; i < n; ++i) v(i, dst) += f * v(i, src);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, x), m(i, y));
    for (std::size_t i = 0; i < n; ++i) std::swap(v(i, x), v(i, y));
  };
  std::size_t p = 0;
  for (std::size_t r = 0; r < m.rows() && p < n; ++r) {
    // Euclid across columns p..n-1 of row r until only column p is nonzero.
    while (true) {
      std::size_t best = n;
      for (std::size_t j = p; j < n; ++j)
        if (m(r, j) != 0 && (best == n || abs(m(r, j)) < abs(m(r, best)))) best = j;
      if (best == n) break;
      if (best != p) col_swap(best, p);
      bool done = true;
      for (std::size_t j = p + 1; j < n; ++j) {
        if (m(r, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(r, j).get_mpz_t(), m(r, p).get_mpz_t());
        col_op(j, p, -q);
        if (m(r, j) != 0) done = false;
      }
      if (done) {
        ++p;
        break;
      }
    }
  }
  IntMatrix k(n - p, n);
  for (std::size_t c = p; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i) k(c - p, i) = v(i, c);
  return k;
}

}  // namespace langdual
