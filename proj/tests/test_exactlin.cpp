#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "langdual/exactlin.hpp"

using namespace langdual;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

// Leibniz expansion over all permutations.
Integer det_by_permutations(const IntMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Integer total = 0;
  do {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) sign = -sign;
    Integer term = sign;
    for (std::size_t i = 0; i < n; ++i) term *= a(i, p[i]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

// Invariant factors from determinantal divisors: d_k = gcd of k x k minors.
IntVector invariant_factors_by_minors(const IntMatrix& a) {
  const std::size_t m = std::min(a.rows(), a.cols());
  IntVector out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= m; ++k) {
    Integer g = 0;
    for (const auto& rs : subsets(a.rows(), k))
      for (const auto& cs : subsets(a.cols(), k)) {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(rs[i], cs[j]);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Integer(det_by_permutations(sub)).get_mpz_t());
      }
    if (g == 0) {
      out.push_back(0);
      prev = 0;
      continue;
    }
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

}  // namespace

TEST_CASE("scalar text round trip") {
  CHECK(to_string(Scalar(8)) == "8");
  CHECK(to_string(Scalar(-1, 4)) == "-1/4");
  CHECK(to_string(Scalar(6, 4)) == "3/2");
  CHECK(parse_scalar("-1/4") == Scalar(-1, 4));
  CHECK(parse_scalar("\xE2\x88\x92" "1/4") == Scalar(-1, 4));
  CHECK(parse_scalar("10/4") == Scalar(5, 2));
  CHECK_THROWS(parse_scalar("1/0"));
  CHECK_THROWS(parse_scalar("abc"));
}

TEST_CASE("determinant agrees with the permutation expansion") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const IntMatrix a = random_matrix(rng, n, n, -4, 4);
    CHECK(det_exact(a) == det_by_permutations(a));
    CHECK(det_exact(to_rational(a)) == Scalar(det_by_permutations(a)));
  }
  CHECK(det_exact(IntMatrix{{2, -1}, {-1, 2}}) == 3);
  CHECK(det_exact(IntMatrix{{1, 2}, {2, 4}}) == 0);
  CHECK(det_exact(RatMatrix{{Scalar(1, 2), 1}, {1, Scalar(1, 3)}}) == Scalar(-5, 6));
}

TEST_CASE("solve_exact returns a true solution or reports inconsistency") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    const RatMatrix a = to_rational(random_matrix(rng, r, c, -3, 3));
    const RatVector b = to_rational(random_matrix(rng, r, 1, -5, 5).col(0));
    auto x = solve_exact(a, b);
    if (x) {
      CHECK(a * *x == b);
    } else {
      // Inconsistent: appending b raises the rank.
      RatMatrix aug(r, c + 1);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) aug(i, j) = a(i, j);
        aug(i, c) = b[i];
      }
      CHECK(rank(aug) == rank(a) + 1);
    }
  }
  CHECK_FALSE(solve_exact(RatMatrix{{1, 1}, {1, 1}}, RatVector{1, 2}).has_value());
  CHECK_THROWS_AS(solve_exact(RatMatrix{{1, 1}}, RatVector{1, 2}), DimensionMismatch);
}

TEST_CASE("Smith normal form matches determinantal divisors") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 1 + trial % 3, c = 1 + (trial / 3) % 3;
    const IntMatrix a = random_matrix(rng, r, c, -6, 6);
    CHECK(smith_normal_form(a) == invariant_factors_by_minors(a));
  }
  CHECK(smith_normal_form(IntMatrix{{2, -1}, {-1, 2}}) == IntVector{1, 3});
  CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 2}}) == IntVector{2, 2});
  CHECK(smith_normal_form(IntMatrix{{2}, {-2}}) == IntVector{2});
}

TEST_CASE("integer kernel is a saturated basis of the kernel") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 1 + trial % 3, c = 2 + trial % 3;
    IntMatrix a = random_matrix(rng, r, c, -3, 3);
    const IntMatrix k = integer_kernel(a);
    CHECK(k.rows() == c - rank(to_rational(a)));
    for (std::size_t i = 0; i < k.rows(); ++i) {
      CHECK(a * k.row(i) == IntVector(r, 0));
    }
    if (k.rows() > 0) {
      for (const auto& f : smith_normal_form(k)) CHECK(f == 1);
    }
  }
  const IntMatrix k = integer_kernel(IntMatrix{{2, 0}, {-2, 0}});
  REQUIRE(k.rows() == 1);
  CHECK((k.row(0) == IntVector{0, 1} || k.row(0) == IntVector{0, -1}));
}

TEST_CASE("matrix shape errors") {
  CHECK_THROWS_AS((IntMatrix{{1, 2}} * IntMatrix{{1, 2}}), DimensionMismatch);
  CHECK_THROWS_AS(IntMatrix::from_rows({{1, 2}, {3}}, 2), DimensionMismatch);
  CHECK_THROWS_AS((IntMatrix{{1, 2}, {3}}), DimensionMismatch);
}
