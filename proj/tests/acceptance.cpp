// Acceptance gate: end-to-end checks with wall-time budgets, one line per
// criterion. Exits nonzero if any check fails or the suite exceeds its
// overall budget.
#include "ckrec/classify.hpp"
#include "ckrec/fock.hpp"
#include "ckrec/io.hpp"
#include "ckrec/ktheory.hpp"

#include "test_util.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace ckrec;

namespace {

std::string data_dir() {
  const char* d = std::getenv("CKREC_DATA");
  return d ? d : "tests/data";
}

bool has_row(const FockReport& r, const std::string& name) {
  for (const auto& e : r.results)
    if (e.relation == name) return true;
  return false;
}

bool rows_pass(const FockReport& r, const std::string& name, std::size_t& count) {
  count = 0;
  for (const auto& e : r.results)
    if (e.relation == name) {
      ++count;
      if (!e.pass) return false;
    }
  return count > 0;
}

struct Checker {
  std::string first_failure;
  std::size_t failures = 0;
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      ++failures;
      if (first_failure.empty()) first_failure = what;
    }
  }
  bool ok() const { return failures == 0; }
};

const FgAbGroup kZ{1, {}};
const FgAbGroup kTrivial{0, {}};

KDatum pointed_z(long unit) {
  return KDatum{kZ, make_element(kZ, {Int(unit)}, {}), kTrivial};
}

// all torsion chains d1 | d2 | ... with every di >= 2 and product <= 64
std::vector<std::vector<long>> small_group_chains() {
  std::vector<std::vector<long>> chains;
  std::vector<long> cur;
  std::function<void(long)> extend = [&](long prod) {
    long last = cur.back();
    for (long next = last; next * prod <= 64; next += last) {
      cur.push_back(next);
      chains.push_back(cur);
      extend(prod * next);
      cur.pop_back();
    }
  };
  for (long d1 = 2; d1 <= 64; ++d1) {
    cur = {d1};
    chains.push_back(cur);
    extend(d1);
  }
  return chains;
}

struct CmdResult {
  int code = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  const char* bin = std::getenv("CKREC_BIN");
  CmdResult r;
  if (!bin) return r;
  FILE* p = popen((std::string(bin) + " " + args + " 2>/dev/null").c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string read_file(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) return {};
  std::string s;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) s.append(buf, n);
  std::fclose(f);
  return s;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto suite_start = clock::now();
  int criterion = 0;
  bool all_ok = true;

  auto run = [&](const std::string& name, double limit_s,
                 const std::function<void(Checker&, std::string&)>& fn) {
    ++criterion;
    Checker c;
    std::string detail;
    auto t0 = clock::now();
    try {
      fn(c, detail);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(clock::now() - t0).count();
    bool timed_ok = secs <= limit_s;
    bool ok = c.ok() && timed_ok;
    all_ok = all_ok && ok;
    std::string note = detail;
    if (!c.ok()) note = c.first_failure +
        (c.failures > 1 ? " (+" + std::to_string(c.failures - 1) + " more)" : "");
    if (!timed_ok) note += std::string(note.empty() ? "" : "; ") + "over time budget";
    std::printf("[%s] %2d %-46s %7.2fs / %3.0fs  %s\n", ok ? "PASS" : "FAIL",
                criterion, name.c_str(), secs, limit_s, note.c_str());
    std::fflush(stdout);
  };

  const IntMatrix ones2 = IntMatrix::from_rows({{1, 1}, {1, 1}});
  const IntMatrix fib = IntMatrix::from_rows({{1, 1}, {1, 0}});
  const IntMatrix ones3 = IntMatrix::from_rows({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
  std::vector<FockReport> lemma56_reports;
  std::vector<std::size_t> lemma56_sizes;

  run("all-ones 2x2 dual datum and form class", 1.0,
      [&](Checker& c, std::string& detail) {
        KDatum d = reciprocal_kdata(check_admissible(ones2));
        c.expect(kp_iso(d, pointed_z(1)), "dual datum is not (Z, 1, 0)");
        c.expect(is_reciprocal_ck_form(d), "dual datum not in reciprocal form");
        WCaseReport w = w_case_report(d);
        c.expect(w.w == 1, "unit class should have infinite order");
        KDatum rec{w.rec_k0, zero_element(w.rec_k0), w.rec_k1};
        KDatum o2{kTrivial, zero_element(kTrivial), kTrivial};
        c.expect(kp_iso(rec, o2), "reconstruction does not match (0, 0, 0)");
        detail = "datum " + d.k0.to_string() + ", reconstruction round-trips";
      });

  run("all-ones (N+1)x(N+1) dual data, N=2..5", 1.0,
      [&](Checker& c, std::string& detail) {
        for (long n = 2; n <= 5; ++n) {
          IntMatrix u(std::size_t(n) + 1, std::size_t(n) + 1);
          for (std::size_t i = 0; i <= std::size_t(n); ++i)
            for (std::size_t j = 0; j <= std::size_t(n); ++j) u.at(i, j) = 1;
          KDatum d = reciprocal_kdata(check_admissible(u));
          std::string tag = " (N=" + std::to_string(n) + ")";
          c.expect(d.k0 == kZ, "dual K0 is not Z" + tag);
          c.expect(d.k1.trivial(), "dual K1 is not trivial" + tag);
          FgAbGroup q = quotient_by(d.unit);
          c.expect(is_isomorphic(q, FgAbGroup{0, {Int(n)}}),
                   "unit quotient is not Z/" + std::to_string(n) + tag);
        }
        detail = "unit quotients Z/2..Z/5";
      });

  run("bundled 5x5 matrix invariant sheet", 1.0,
      [&](Checker& c, std::string& detail) {
        IntMatrix a5 = io::read_matrix_file(data_dir() + "/example3.json");
        IntMatrix hat5 = io::read_matrix_file(data_dir() + "/example3_hatA.json");
        AdjacencyMatrix a = check_admissible(a5);
        InvariantSheet s = invariant_sheet(a);
        c.expect(s.extw1 == kZ, "coker(I-A) is not Z");
        c.expect(s.k1 == kZ, "ker(I-A^t) is not Z");
        c.expect(build_hatA(a) == hat5, "dual matrix differs entrywise");
        c.expect(s.exts1 == kZ, "coker(I-hatA) is not Z");
        c.expect(s.iota_class.is_zero(), "iota class does not vanish");
        c.expect(s.exts0.trivial(), "ker(A_T) is not trivial");
        detail = "six exact values reproduced";
      });

  run("duality property sweep on random matrices", 30.0,
      [&](Checker& c, std::string& detail) {
        std::mt19937_64 rng(20260819ULL);
        std::uniform_int_distribution<std::size_t> pick_n(2, 7);
        const int trials = 200;
        for (int t = 0; t < trials; ++t) {
          AdjacencyMatrix a = ckrec_test::random_admissible(rng, pick_n(rng));
          InvariantSheet s = invariant_sheet(a);
          std::string tag = " (trial " + std::to_string(t) + ")";
          c.expect(s.chi_oa == 0, "chi of the algebra side is nonzero" + tag);
          c.expect(s.chi_hat == 1, "chi of the dual side is not 1" + tag);
          c.expect(s.w_oa + s.w_hat == 1, "w indicators do not sum to 1" + tag);
          c.expect(is_isomorphic(s.extw1, quotient_by(s.iota_class)),
                   "weak Ext differs from strong Ext mod iota" + tag);
          c.expect(free_part(s.k0) == s.k1, "Free(K0) differs from K1" + tag);
          c.expect(free_part(s.exts1) == direct_sum(s.exts0, kZ),
                   "Free(Ext_s1) differs from Ext_s0 + Z" + tag);
          c.expect(verify_duality_sheet(a).ok(), "sheet checks failed" + tag);
        }
        detail = std::to_string(trials) + " matrices, sizes 2..7";
      });

  run("smith-form vs minor-gcd oracle", 30.0,
      [&](Checker& c, std::string& detail) {
        std::mt19937_64 rng(0xACCE5511ULL);
        std::uniform_int_distribution<std::size_t> pick_dim(1, 6);
        const int trials = 500;
        for (int t = 0; t < trials; ++t) {
          IntMatrix m =
              ckrec_test::random_matrix(rng, pick_dim(rng), pick_dim(rng), -9, 9);
          SnfResult r = snf(m);
          std::string tag = " (trial " + std::to_string(t) + ")";
          c.expect(r.factors == invariant_factors_via_minors(m),
                   "invariant factors differ from minor gcds" + tag);
          c.expect(r.u * m * r.v == r.d, "UMV does not equal D" + tag);
          Int du = determinant(r.u), dv = determinant(r.v);
          c.expect(du * du == 1 && dv * dv == 1, "transforms not unimodular" + tag);
        }
        detail = std::to_string(trials) + " matrices, dims <= 6, entries <= 9";
      });

  run("pointed-iso vs automorphism-orbit oracle", 60.0,
      [&](Checker& c, std::string& detail) {
        std::mt19937_64 rng(0x0b17a71eULL);
        auto chains = small_group_chains();
        std::uniform_int_distribution<std::size_t> pick_chain(0, chains.size() - 1);
        std::size_t compared = 0, skipped = 0, draws = 0;
        while (compared < 500 && draws < 5000) {
          ++draws;
          const auto& ch = chains[pick_chain(rng)];
          FgAbGroup g{0, {}};
          for (long d : ch) g.torsion.push_back(Int(d));
          std::vector<Int> xc, yc;
          for (long d : ch) {
            std::uniform_int_distribution<long> coord(0, d - 1);
            xc.push_back(Int(coord(rng)));
            yc.push_back(Int(coord(rng)));
          }
          GroupElement x = make_element(g, {}, xc);
          GroupElement y = make_element(g, {}, yc);
          bool oracle;
          try {
            oracle = aut_orbit_oracle(g, x, y);
          } catch (const Error& e) {
            if (e.code == "SizeExceeded") {
              ++skipped;
              continue;
            }
            throw;
          }
          if (pointed_iso(g, x, g, y) != oracle) {
            c.expect(false, "disagreement on " + g.to_string());
            break;
          }
          ++compared;
        }
        c.expect(compared >= 500, "fewer than 500 comparable pairs drawn");
        detail = std::to_string(compared) + " pairs agreed, " +
                 std::to_string(skipped) + " over-budget draws skipped";
      });

  run("fock relation suites with boundary controls", 60.0,
      [&](Checker& c, std::string& detail) {
        for (const IntMatrix* m : {&ones2, &fib, &ones3}) {
          AdjacencyMatrix a = check_admissible(*m);
          std::string tag = " (size " + std::to_string(a.n()) + ")";
          FockReport t = verify_toeplitz(a, 8);
          c.expect(t.ok(), "toeplitz relations failed" + tag);
          c.expect(has_row(t, "matrix-row-relation-boundary-control"),
                   "toeplitz control rows missing" + tag);
          FockReport o = verify_oainf(a, 3, 8);
          c.expect(o.ok(), "stabilized-algebra relations failed" + tag);
          c.expect(has_row(o, "matrix-row-relation-boundary-control") &&
                       has_row(o, "isometry-relation-boundary-control"),
                   "stabilized control rows missing" + tag);
          FockReport d = verify_thm57(a, 3, 8);
          c.expect(d.ok(), "dual-generator relations failed" + tag);
          FockReport l = verify_lemma56(a, 3, 8);
          c.expect(l.ok(), "ordering-matrix suite failed" + tag);
          c.expect(has_row(l, "t-corner-unit-boundary-control"),
                   "ordering-suite control row missing" + tag);
          lemma56_reports.push_back(l);
          lemma56_sizes.push_back(a.n() + 3);
        }
        detail = "4 suites x 3 matrices at k=3, depth 8";
      });

  run("ordering matrix equals stabilized-corner entries", 30.0,
      [&](Checker& c, std::string& detail) {
        c.expect(lemma56_reports.size() == 3, "ordering reports not collected");
        std::size_t total = 0;
        for (std::size_t i = 0; i < lemma56_reports.size(); ++i) {
          std::size_t count = 0;
          bool ok = rows_pass(lemma56_reports[i], "ordering-matrix-entry", count);
          std::size_t m = lemma56_sizes[i];
          c.expect(ok && count == m * m,
                   "entrywise comparison incomplete for letter count " +
                       std::to_string(m));
          total += count;
        }
        detail = std::to_string(total) + " projection-order entries matched";
      });

  run("vacuum spectral gap sampling", 60.0,
      [&](Checker& c, std::string& detail) {
        FockReport r = spectral_gap_check(check_admissible(ones2), 2, 8, 1000, 0.0);
        c.expect(r.ok(), "a gap row failed");
        c.expect(has_row(r, "gap-sample-sweep"), "sample sweep row missing");
        c.expect(has_row(r, "gap-equality-witness"), "equality witness missing");
        c.expect(has_row(r, "gap-strict-sample"), "strictness sample missing");
        detail = "1000 exact-rational samples, zero violations, witness exact";
      });

  run("bundled example corpus matches golden output", 120.0,
      [&](Checker& c, std::string& detail) {
        CmdResult r = run_cli("examples");
        c.expect(r.code == 0, "examples command exited " + std::to_string(r.code));
        std::string golden = read_file(data_dir() + "/examples_golden.txt");
        c.expect(!golden.empty(), "golden file missing or empty");
        c.expect(r.out == golden, "output differs from the golden file");
        detail = std::to_string(r.out.size()) + " bytes compared";
      });

  double total = std::chrono::duration<double>(clock::now() - suite_start).count();
  bool under_budget = total <= 120.0;
  all_ok = all_ok && under_budget;
  std::printf("%s: %d criteria, %.2fs total / 120s budget\n",
              all_ok ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", criterion, total);
  return all_ok ? 0 : 1;
}
