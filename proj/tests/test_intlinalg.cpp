#include "ckrec/intlinalg.hpp"

#include "doctest.h"
#include "test_util.hpp"

#include <random>

using namespace ckrec;
using ckrec_test::random_matrix;

namespace {

Int det_cofactor(const IntMatrix& m) {
  std::size_t n = m.rows();
  if (n == 1) return m.at(0, 0);
  Int acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m.at(0, j) == 0) continue;
    IntMatrix sub(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j) continue;
        sub.at(i - 1, cc++) = m.at(i, k);
      }
    }
    Int term = m.at(0, j) * det_cofactor(sub);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

std::size_t snf_rank(const IntMatrix& m) {
  std::size_t r = 0;
  for (const Int& f : snf(m).factors)
    if (f != 0) ++r;
  return r;
}

}  // namespace

TEST_SUITE("intlinalg") {

TEST_CASE("matrix arithmetic basics") {
  IntMatrix a = IntMatrix::from_rows({{1, 2}, {3, 4}});
  IntMatrix b = IntMatrix::from_rows({{0, 1}, {1, 0}});
  CHECK(a * b == IntMatrix::from_rows({{2, 1}, {4, 3}}));
  CHECK(a + b == IntMatrix::from_rows({{1, 3}, {4, 4}}));
  CHECK(a - b == IntMatrix::from_rows({{1, 1}, {2, 4}}));
  CHECK(a.transpose() == IntMatrix::from_rows({{1, 3}, {2, 4}}));
  CHECK(IntMatrix::identity(2) == IntMatrix::from_rows({{1, 0}, {0, 1}}));
  CHECK_THROWS_AS(IntMatrix(0, 3), Error);
  CHECK_THROWS_AS(a * IntMatrix(3, 2), Error);
}

TEST_CASE("determinant fixed values") {
  CHECK(determinant(IntMatrix::from_rows({{-7}})) == -7);
  CHECK(determinant(IntMatrix::from_rows({{1, 2}, {3, 4}})) == -2);
  CHECK(determinant(IntMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 0);
  CHECK(determinant(IntMatrix::identity(5)) == 1);
  CHECK_THROWS_AS(determinant(IntMatrix(2, 3)), Error);
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 1 + t % 5;
    IntMatrix m = random_matrix(rng, n, n, -9, 9);
    CHECK(determinant(m) == det_cofactor(m));
  }
}

TEST_CASE("snf fixed examples") {
  CHECK(snf(IntMatrix::from_rows({{4, 0}, {0, 6}})).factors ==
        std::vector<Int>{2, 12});
  CHECK(snf(IntMatrix::from_rows({{2, 4}, {6, 8}})).factors ==
        std::vector<Int>{2, 4});
  CHECK(snf(IntMatrix(2, 2)).factors == std::vector<Int>{0, 0});
  CHECK(snf(IntMatrix::from_rows({{0, -1}, {0, 1}})).factors ==
        std::vector<Int>{1, 0});
}

TEST_CASE("snf structure on random matrices") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 150; ++t) {
    std::size_t r = 1 + (t % 5), c = 1 + ((t / 5) % 5);
    IntMatrix m = random_matrix(rng, r, c, -9, 9);
    SnfResult s = snf(m);
    CHECK(s.u * m * s.v == s.d);
    Int du = determinant(s.u);
    Int dv = determinant(s.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    REQUIRE(s.factors.size() == std::min(r, c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.d.at(i, j) == 0);
    for (std::size_t i = 0; i < s.factors.size(); ++i) {
      CHECK(s.factors[i] >= 0);
      if (i + 1 < s.factors.size()) {
        const Int& cur = s.factors[i];
        const Int& nxt = s.factors[i + 1];
        if (cur == 0)
          CHECK(nxt == 0);
        else
          CHECK(nxt % cur == 0);
      }
    }
  }
}

TEST_CASE("snf factors match the minor-gcd oracle") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    std::size_t r = 1 + (t % 4), c = 1 + ((t / 4) % 4);
    IntMatrix m = random_matrix(rng, r, c, -9, 9);
    CHECK(snf(m).factors == invariant_factors_via_minors(m));
  }
}

TEST_CASE("minor-gcd oracle dimension guard") {
  CHECK_THROWS_AS(invariant_factors_via_minors(IntMatrix(7, 7)), Error);
  CHECK_NOTHROW(invariant_factors_via_minors(IntMatrix(6, 6)));
}

TEST_CASE("kernel basis annihilates and has corank size") {
  auto check_kernel = [](const IntMatrix& m) {
    auto basis = kernel_basis(m);
    CHECK(basis.size() == m.cols() - snf_rank(m));
    for (const auto& v : basis) {
      REQUIRE(v.size() == m.cols());
      for (std::size_t i = 0; i < m.rows(); ++i) {
        Int acc = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m.at(i, j) * v[j];
        CHECK(acc == 0);
      }
      bool nonzero = false;
      for (const auto& x : v) nonzero = nonzero || x != 0;
      CHECK(nonzero);
    }
  };
  check_kernel(IntMatrix::from_rows({{1, 1}, {1, 1}}));
  CHECK(kernel_basis(IntMatrix::identity(3)).empty());
  std::mt19937_64 rng(14);
  for (int t = 0; t < 60; ++t) {
    std::size_t r = 1 + (t % 4), c = 1 + ((t / 4) % 4);
    check_kernel(random_matrix(rng, r, c, -4, 4));
  }
}

TEST_CASE("cokernel presentation keeps the relation columns") {
  IntMatrix m = IntMatrix::from_rows({{2, 0, 1}, {0, 3, 1}});
  PresentedGroup p = cokernel_presentation(m);
  CHECK(p.ambient_rank == 2);
  CHECK(p.relations == m);
}

}  // TEST_SUITE
