#include "ckrec/classify.hpp"
#include "ckrec/fock.hpp"
#include "ckrec/io.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace ckrec;

namespace {

std::string data_dir() {
  const char* env = std::getenv("CKREC_DATA");
  return env && *env ? env : "tests/data";
}

int run_invariants(const std::string& path, const std::string& format) {
  AdjacencyMatrix a = check_admissible(io::read_matrix_file(path));
  InvariantSheet s = invariant_sheet(a);
  CheckReport checks = verify_duality_sheet(a);
  if (format == "json")
    std::cout << io::sheet_to_json(s, checks) << '\n';
  else
    std::cout << io::sheet_to_table(s, checks);
  return checks.ok() ? 0 : 1;
}

int run_reciprocal(const std::string& path, const std::string& format) {
  AdjacencyMatrix a = check_admissible(io::read_matrix_file(path));
  KDatum d = reciprocal_kdata(a);
  if (format == "json") {
    std::cout << io::kdatum_to_json(d) << '\n';
  } else {
    std::cout << "K0    " << d.k0.to_string() << '\n'
              << "unit  " << io::element_to_string(d.unit) << '\n'
              << "K1    " << d.k1.to_string() << '\n';
  }
  return 0;
}

int run_classify(const std::string& path, const std::string& format) {
  KDatum d = io::read_kdatum_file(path);
  std::string verdict = is_ck_form(d) ? "CK-form"
                        : is_reciprocal_ck_form(d) ? "reciprocal-CK-form"
                                                   : "neither";
  if (format == "json")
    std::cout << "{\"verdict\":\"" << verdict << "\"}\n";
  else
    std::cout << verdict << '\n';
  return 0;
}

int run_compare(const std::string& path_a, const std::string& path_b,
                const std::string& format) {
  AdjacencyMatrix a = check_admissible(io::read_matrix_file(path_a));
  std::string text = io::read_text_file(path_b);
  CheckReport rep = io::looks_like_kdatum(text)
                        ? prop22_check(a, io::parse_kdatum(text))
                        : prop22_check(a, check_admissible(io::parse_matrix(text)));
  if (format == "json") {
    std::ostringstream out;
    out << "{\"match\":" << (rep.ok() ? "true" : "false") << ",\"failures\":[";
    for (std::size_t i = 0; i < rep.failures.size(); ++i)
      out << (i ? "," : "") << '"' << rep.failures[i] << '"';
    out << "]}";
    std::cout << out.str() << '\n';
  } else if (rep.ok()) {
    std::cout << "match\n";
  } else {
    std::cout << "MISMATCH\n";
    for (const auto& f : rep.failures) std::cout << "  - " << f << '\n';
  }
  return rep.ok() ? 0 : 1;
}

int run_emit(const std::string& path, const std::string& target,
             std::size_t extra, std::size_t size, const std::string& format) {
  AdjacencyMatrix a = check_admissible(io::read_matrix_file(path));
  IntMatrix out;
  if (target == "hatA") {
    out = build_hatA(a);
  } else if (target == "AT") {
    out = build_AT(a);
  } else if (target == "Ak") {
    out = build_Ak(a, extra);
  } else if (target == "tildeAinf" || target == "hatAinf") {
    if (size == 0)
      throw Error("BadSize", "--size is required for " + target);
    out = target == "tildeAinf" ? build_tildeAinfty(a, size)
                                : build_hatAinfty(a, size);
  } else {
    throw Error("BadTarget", "unknown emit target " + target);
  }
  if (format == "table")
    std::cout << io::matrix_to_table(out);
  else
    std::cout << io::matrix_to_json(out) << '\n';
  return 0;
}

int run_fock(const std::string& path, const std::string& suite,
             std::size_t k, std::size_t L, std::size_t samples, double tol,
             const std::string& format) {
  AdjacencyMatrix a = check_admissible(io::read_matrix_file(path));
  FockReport rep;
  auto add = [&rep](const FockReport& r) {
    rep.results.insert(rep.results.end(), r.results.begin(), r.results.end());
  };
  if (suite == "toeplitz" || suite == "all") add(verify_toeplitz(a, L));
  if (suite == "oainf" || suite == "all") add(verify_oainf(a, k, L));
  if (suite == "reciprocal" || suite == "all") add(verify_thm57(a, k, L));
  if (suite == "lemma56" || suite == "all") add(verify_lemma56(a, k, L));
  if (suite == "gap" || suite == "all")
    add(spectral_gap_check(a, k, L, samples, tol));
  if (format == "table")
    std::cout << io::fock_report_to_table(rep);
  else
    std::cout << io::fock_report_to_json(rep) << '\n';
  return rep.ok() ? 0 : 1;
}

struct ExampleRow {
  std::string example, check, detail;
  bool pass = false;
};

IntMatrix all_ones(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = 1;
  return m;
}

int run_examples(const std::string& format) {
  const std::string dir = data_dir();
  const FgAbGroup z{1, {}};
  std::vector<ExampleRow> rows;
  auto add = [&rows](const std::string& ex, const std::string& check, bool ok,
                     const std::string& detail) {
    rows.push_back(ExampleRow{ex, check, detail, ok});
  };

  {  // binary full shift: dual datum (Z, generator, 0)
    AdjacencyMatrix a = check_admissible(io::read_matrix_file(dir + "/example1.json"));
    InvariantSheet s = invariant_sheet(a);
    KDatum d = reciprocal_kdata(a);
    GroupElement gen = make_element(z, {Int(1)}, {});
    bool datum_ok = d.k1.trivial() && pointed_iso(d.k0, d.unit, z, gen);
    add("example1", "dual-datum", datum_ok,
        "(" + d.k0.to_string() + ", " + io::element_to_string(d.unit) + ", " +
            d.k1.to_string() + ")");
    add("example1", "dual-reciprocal-form", is_reciprocal_ck_form(d), "");
    WCaseReport w = w_case_report(d);
    KDatum rec{w.rec_k0, zero_element(w.rec_k0), w.rec_k1};
    KDatum alg{s.k0, s.unit_class, s.k1};
    add("example1", "w-case-roundtrip", w.w == 1 && kp_iso(rec, alg),
        "w=" + std::to_string(w.w));
    add("example1", "duality-checks", verify_duality_sheet(a).ok(), "");
    add("example1", "fock-toeplitz", verify_toeplitz(a, 5).ok(), "L=5");
    add("example1", "fock-stabilized", verify_oainf(a, 2, 5).ok(), "k=2 L=5");
    add("example1", "fock-dual-generators", verify_thm57(a, 3, 6).ok(), "k=3 L=6");
    add("example1", "fock-ordering-matrix", verify_lemma56(a, 3, 6).ok(), "k=3 L=6");
  }

  for (std::size_t n = 2; n <= 5; ++n) {  // (n+1)-ary full shifts
    AdjacencyMatrix a = check_admissible(all_ones(n + 1));
    InvariantSheet s = invariant_sheet(a);
    KDatum d = reciprocal_kdata(a);
    FgAbGroup zn{0, {Int(n)}};
    bool datum_ok = d.k1.trivial() && d.k0 == z && quotient_by(d.unit) == zn &&
                    pointed_iso(d.k0, d.unit, z, make_element(z, {Int(n)}, {}));
    add("example2", "dual-datum-N=" + std::to_string(n), datum_ok,
        "quotient " + quotient_by(d.unit).to_string());
    WCaseReport w = w_case_report(d);
    bool round = w.w == 1 && is_isomorphic(w.rec_k0, s.k0) &&
                 is_isomorphic(w.rec_k1, s.k1);
    add("example2", "w-case-roundtrip-N=" + std::to_string(n), round,
        "K0 " + w.rec_k0.to_string());
    if (n == 2)
      add("example2", "fock-dual-generators-N=2", verify_thm57(a, 3, 6).ok(),
          "k=3 L=6");
  }

  {  // the 5x5 matrix with dual datum (Z, 0, 0)
    IntMatrix m = io::read_matrix_file(dir + "/example3.json");
    AdjacencyMatrix a = check_admissible(m);
    InvariantSheet s = invariant_sheet(a);
    add("example3", "k-groups", s.k0 == z && s.k1 == z,
        "K0 " + s.k0.to_string() + ", K1 " + s.k1.to_string());
    IntMatrix ima = IntMatrix::identity(m.rows()) - m;
    FgAbGroup cok = canonicalize(cokernel_presentation(ima)).group;
    std::size_t ker = kernel_basis(ima).size();
    add("example3", "cokernel-I-minus-A", cok == z, cok.to_string());
    add("example3", "kernel-I-minus-A", ker == 1,
        "rank " + std::to_string(ker));
    IntMatrix expected = io::read_matrix_file(dir + "/example3_hatA.json");
    add("example3", "dual-matrix-construction", build_hatA(a) == expected,
        "entrywise");
    add("example3", "dual-k0", s.exts1 == z, s.exts1.to_string());
    add("example3", "dual-unit-class-vanishes", s.iota_class.is_zero(),
        io::element_to_string(s.iota_class));
    add("example3", "dual-k1-trivial", s.exts0.trivial(), s.exts0.to_string());
    KDatum d = reciprocal_kdata(a);
    KDatum expect{z, zero_element(z), FgAbGroup{}};
    add("example3", "dual-datum", kp_iso(d, expect), "(Z, 0, 0)");
    add("example3", "dual-reciprocal-form", is_reciprocal_ck_form(d), "");
    WCaseReport w = w_case_report(d);
    bool round = w.w == 0 && is_isomorphic(w.rec_k0, s.k0) &&
                 is_isomorphic(w.rec_k1, s.k1);
    add("example3", "w-case-roundtrip", round, "w=" + std::to_string(w.w));
    add("example3", "duality-checks", verify_duality_sheet(a).ok(), "");
    add("example3", "fock-toeplitz", verify_toeplitz(a, 5).ok(), "L=5");
    add("example3", "fock-stabilized", verify_oainf(a, 2, 5).ok(), "k=2 L=5");
  }

  bool all_ok = true;
  for (const auto& r : rows) all_ok = all_ok && r.pass;

  if (format == "json") {
    std::ostringstream out;
    out << "{\"ok\":" << (all_ok ? "true" : "false") << ",\"rows\":[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      out << (i ? "," : "") << "{\"example\":\"" << r.example
          << "\",\"check\":\"" << r.check << "\",\"status\":\""
          << (r.pass ? "pass" : "fail") << "\",\"detail\":\"" << r.detail
          << "\"}";
    }
    out << "]}";
    std::cout << out.str() << '\n';
  } else {
    std::size_t w_ex = 8, w_check = 5;
    for (const auto& r : rows) {
      w_ex = std::max(w_ex, r.example.size());
      w_check = std::max(w_check, r.check.size());
    }
    auto pad = [](const std::string& s, std::size_t w) {
      return s + std::string(w - s.size() + 2, ' ');
    };
    std::cout << pad("example", w_ex) << pad("check", w_check)
              << "status  detail\n";
    for (const auto& r : rows)
      std::cout << pad(r.example, w_ex) << pad(r.check, w_check)
                << pad(r.pass ? "pass" : "fail", 6) << r.detail << '\n';
    std::cout << (all_ok ? "overall pass" : "overall FAIL") << '\n';
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact K-theory and Ext invariants of Cuntz-Krieger algebras, "
               "with Fock-space relation verification"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"json", "table"};

  std::string inv_path, inv_format = "table";
  auto* inv = app.add_subcommand(
      "invariants", "complete invariant sheet of a 0/1 matrix plus consistency checks");
  inv->add_option("path", inv_path, "matrix file")->required();
  inv->add_option("--format", inv_format, "output format")
      ->check(CLI::IsMember(formats));

  std::string rec_path, rec_format = "table";
  auto* rec = app.add_subcommand(
      "reciprocal", "pointed K-datum of the reciprocal dual");
  rec->add_option("path", rec_path, "matrix file")->required();
  rec->add_option("--format", rec_format, "output format")
      ->check(CLI::IsMember(formats));

  std::string cls_path, cls_format = "table";
  auto* cls = app.add_subcommand(
      "classify", "classify a K-datum file: CK-form, reciprocal-CK-form, or neither");
  cls->add_option("path", cls_path, "K-datum file")->required();
  cls->add_option("--format", cls_format, "output format")
      ->check(CLI::IsMember(formats));

  std::string cmp_path_a, cmp_path_b, cmp_format = "table";
  auto* cmp = app.add_subcommand(
      "compare", "test whether a matrix and a K-datum (or second matrix) form a reciprocal pair");
  cmp->add_option("matrix", cmp_path_a, "matrix file")->required();
  cmp->add_option("other", cmp_path_b, "K-datum file or second matrix file")
      ->required();
  cmp->add_option("--format", cmp_format, "output format")
      ->check(CLI::IsMember(formats));

  std::string emit_path, emit_target, emit_format = "json";
  std::size_t emit_extra = 3, emit_size = 0;
  auto* emt = app.add_subcommand("emit", "emit a derived matrix");
  emt->add_option("path", emit_path, "matrix file")->required();
  emt->add_option("--emit", emit_target, "target matrix")
      ->required()
      ->check(CLI::IsMember({"hatA", "AT", "Ak", "tildeAinf", "hatAinf"}));
  emt->add_option("--extra", emit_extra, "adjoined letters k for Ak");
  emt->add_option("--size", emit_size, "truncation size m for tildeAinf/hatAinf");
  emt->add_option("--format", emit_format, "output format")
      ->check(CLI::IsMember(formats));

  std::string fock_path, fock_suite = "all", fock_format = "json";
  std::size_t fock_extra = 3, fock_depth = 8, fock_samples = 200;
  double fock_tol = 0.0;
  auto* fck = app.add_subcommand("fock", "run Fock-space relation suites");
  fck->add_option("path", fock_path, "matrix file")->required();
  fck->add_option("suite", fock_suite, "relation suite")
      ->check(CLI::IsMember(
          {"toeplitz", "oainf", "reciprocal", "lemma56", "gap", "all"}));
  fck->add_option("--extra", fock_extra, "adjoined letters k");
  fck->add_option("--depth", fock_depth, "truncation depth L");
  fck->add_option("--samples", fock_samples, "gap sample count");
  fck->add_option("--tol", fock_tol, "gap tolerance (exact path uses 0)");
  fck->add_option("--format", fock_format, "output format")
      ->check(CLI::IsMember(formats));

  std::string ex_format = "table";
  auto* exs = app.add_subcommand("examples", "run the bundled example corpus");
  exs->add_option("--format", ex_format, "output format")
      ->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*inv) return run_invariants(inv_path, inv_format);
    if (*rec) return run_reciprocal(rec_path, rec_format);
    if (*cls) return run_classify(cls_path, cls_format);
    if (*cmp) return run_compare(cmp_path_a, cmp_path_b, cmp_format);
    if (*emt)
      return run_emit(emit_path, emit_target, emit_extra, emit_size, emit_format);
    if (*fck)
      return run_fock(fock_path, fock_suite, fock_extra, fock_depth,
                      fock_samples, fock_tol, fock_format);
    if (*exs) return run_examples(ex_format);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
