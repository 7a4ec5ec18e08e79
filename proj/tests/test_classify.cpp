#include "ckrec/classify.hpp"

#include "doctest.h"
#include "test_util.hpp"

#include <random>
#include <vector>

using namespace ckrec;
using ckrec_test::random_admissible;

namespace {

const FgAbGroup kZ{1, {}};

KDatum z_datum(long unit_coord) {
  return KDatum{kZ, make_element(kZ, {Int(unit_coord)}, {}), FgAbGroup{}};
}

KDatum trivial_datum() {
  FgAbGroup t;
  return KDatum{t, zero_element(t), t};
}

KDatum sheet_datum(const AdjacencyMatrix& a) {
  InvariantSheet s = invariant_sheet(a);
  return KDatum{s.k0, s.unit_class, s.k1};
}

}  // namespace

TEST_SUITE("classify") {

TEST_CASE("ck form recognition") {
  CHECK(is_ck_form(trivial_datum()));
  CHECK(!is_ck_form(z_datum(1)));
  FgAbGroup zz3{1, {Int(3)}};
  KDatum mixed{zz3, make_element(zz3, {Int(1)}, {Int(1)}), kZ};
  CHECK(is_ck_form(mixed));
  KDatum torsion_k1{kZ, make_element(kZ, {Int(0)}, {}),
                    FgAbGroup{1, {Int(2)}}};
  CHECK(!is_ck_form(torsion_k1));
}

TEST_CASE("reciprocal form recognition") {
  CHECK(is_reciprocal_ck_form(z_datum(1)));
  CHECK(!is_reciprocal_ck_form(trivial_datum()));

  // torsion in k0 is irrelevant: Free(Z (+) Z/2) = Z = 0 (+) Z
  FgAbGroup zz2{1, {Int(2)}};
  KDatum mixed{zz2, make_element(zz2, {Int(1)}, {Int(1)}), FgAbGroup{0, {}}};
  CHECK(is_reciprocal_ck_form(mixed));
  CHECK(!is_ck_form(mixed));
  std::mt19937_64 rng(41);
  for (int t = 0; t < 40; ++t) {
    AdjacencyMatrix a = random_admissible(rng, 2 + t % 6);
    CHECK(is_reciprocal_ck_form(reciprocal_kdata(a)));
    CHECK(is_ck_form(sheet_datum(a)));
  }
}

TEST_CASE("the two forms are mutually exclusive") {
  std::vector<KDatum> pool{trivial_datum(), z_datum(1), z_datum(0), z_datum(2)};
  std::mt19937_64 rng(42);
  for (int t = 0; t < 20; ++t) {
    AdjacencyMatrix a = random_admissible(rng, 2 + t % 5);
    pool.push_back(sheet_datum(a));
    pool.push_back(reciprocal_kdata(a));
  }
  for (const KDatum& d : pool)
    CHECK(!(is_ck_form(d) && is_reciprocal_ck_form(d)));
}

TEST_CASE("w case reconstruction") {
  WCaseReport r1 = w_case_report(z_datum(1));
  CHECK(r1.w == 1);
  CHECK(r1.rec_k0.trivial());
  CHECK(r1.rec_k1.trivial());

  WCaseReport r0 = w_case_report(z_datum(0));
  CHECK(r0.w == 0);
  CHECK(r0.rec_k0 == kZ);
  CHECK(r0.rec_k1 == kZ);

  WCaseReport r2 = w_case_report(z_datum(2));
  CHECK(r2.w == 1);
  CHECK(r2.rec_k0 == FgAbGroup{0, {Int(2)}});
  CHECK(r2.rec_k1.trivial());

  CHECK_THROWS_AS(w_case_report(trivial_datum()), Error);
}

TEST_CASE("w case round-trips the sheet of the primal matrix") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 40; ++t) {
    AdjacencyMatrix a = random_admissible(rng, 2 + t % 6);
    InvariantSheet s = invariant_sheet(a);
    WCaseReport r = w_case_report(reciprocal_kdata(a));
    CHECK(is_isomorphic(r.rec_k0, s.k0));
    CHECK(is_isomorphic(r.rec_k1, s.k1));
  }
}

TEST_CASE("pointed datum equivalence") {
  CHECK(kp_iso(z_datum(1), z_datum(1)));
  CHECK(kp_iso(z_datum(1), z_datum(-1)));
  CHECK(!kp_iso(z_datum(1), z_datum(2)));
  CHECK(!kp_iso(z_datum(1), trivial_datum()));

  // equivalence-relation spot checks over a mixed pool
  std::vector<KDatum> pool{z_datum(1), z_datum(-1), z_datum(2),
                           z_datum(-2), z_datum(0), trivial_datum()};
  std::mt19937_64 rng(44);
  for (int t = 0; t < 6; ++t)
    pool.push_back(reciprocal_kdata(random_admissible(rng, 2 + t % 4)));
  const std::size_t n = pool.size();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(kp_iso(pool[i], pool[i]));
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(kp_iso(pool[i], pool[j]) == kp_iso(pool[j], pool[i]));
      for (std::size_t k = 0; k < n; ++k)
        if (kp_iso(pool[i], pool[j]) && kp_iso(pool[j], pool[k]))
          CHECK(kp_iso(pool[i], pool[k]));
    }
  }
}

TEST_CASE("duality recognition against a datum") {
  AdjacencyMatrix a2 = check_admissible(IntMatrix::from_rows({{1, 1}, {1, 1}}));
  CHECK(prop22_check(a2, z_datum(1)).ok());
  CHECK(!prop22_check(a2, trivial_datum()).ok());

  std::mt19937_64 rng(45);
  for (int t = 0; t < 30; ++t) {
    AdjacencyMatrix a = random_admissible(rng, 2 + t % 6);
    CHECK(prop22_check(a, reciprocal_kdata(a)).ok());
    CHECK(!prop22_check(a, sheet_datum(a)).ok());
  }
}

TEST_CASE("two finite-matrix systems never form a reciprocal pair") {
  // rank parity: the dual side always gains one free rank, the primal
  // side never does, so the matrix-matrix comparison must report the
  // obstruction
  std::mt19937_64 rng(46);
  for (int t = 0; t < 15; ++t) {
    AdjacencyMatrix a = random_admissible(rng, 2 + t % 4);
    AdjacencyMatrix b = random_admissible(rng, 2 + (t / 4) % 4);
    CHECK(!prop22_check(a, b).ok());
  }
}

}  // TEST_SUITE
