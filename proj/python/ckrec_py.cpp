// Python bindings for the core operations. Matrices cross the boundary as
// lists of int rows; structured results cross as JSON-shaped dicts/lists so
// they match the CLI output formats exactly.
#include "ckrec/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

namespace py = pybind11;
using namespace ckrec;

namespace {

IntMatrix matrix_of(const std::vector<std::vector<long>>& rows) {
  return IntMatrix::from_rows(rows);
}

std::vector<std::vector<long>> pylist_of(const IntMatrix& m) {
  std::vector<std::vector<long>> out(m.rows(), std::vector<long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Int& e = m.at(i, j);
      if (!e.fits_slong_p())
        throw Error("Overflow", "entry does not fit a machine integer");
      out[i][j] = e.get_si();
    }
  return out;
}

py::object loads(const std::string& s) {
  return py::module_::import("json").attr("loads")(s);
}

std::string dumps(const py::object& o) {
  return py::module_::import("json").attr("dumps")(o).cast<std::string>();
}

KDatum datum_of(const py::object& d) { return io::parse_kdatum(dumps(d)); }

std::string verdict_of(const KDatum& d) {
  if (is_ck_form(d)) return "CK-form";
  if (is_reciprocal_ck_form(d)) return "reciprocal-CK-form";
  return "neither";
}

FockReport run_suite(const IntMatrix& rows, const std::string& suite,
                     std::size_t k, std::size_t depth, std::size_t samples,
                     double tol) {
  AdjacencyMatrix a = check_admissible(rows);
  FockReport rep;
  auto add = [&rep](const FockReport& r) {
    rep.results.insert(rep.results.end(), r.results.begin(), r.results.end());
  };
  bool known = false;
  if (suite == "toeplitz" || suite == "all") add(verify_toeplitz(a, depth)), known = true;
  if (suite == "oainf" || suite == "all") add(verify_oainf(a, k, depth)), known = true;
  if (suite == "reciprocal" || suite == "all") add(verify_thm57(a, k, depth)), known = true;
  if (suite == "lemma56" || suite == "all") add(verify_lemma56(a, k, depth)), known = true;
  if (suite == "gap" || suite == "all")
    add(spectral_gap_check(a, k, depth, samples, tol)), known = true;
  if (!known) throw Error("BadSuite", "unknown relation suite: " + suite);
  return rep;
}

}  // namespace

PYBIND11_MODULE(ckrec, m) {
  m.doc() = "K-theoretic invariants, dual data and Fock-space relation checks "
            "for 0/1 adjacency matrices";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  m.def("is_admissible",
        [](const std::vector<std::vector<long>>& rows) {
          try {
            check_admissible(matrix_of(rows));
            return true;
          } catch (const Error&) {
            return false;
          }
        },
        py::arg("rows"),
        "True when the matrix is square 0/1, irreducible and not a permutation.");

  m.def("hat_matrix",
        [](const std::vector<std::vector<long>>& rows) {
          return pylist_of(build_hatA(check_admissible(matrix_of(rows))));
        },
        py::arg("rows"), "Dual matrix; entries may leave {0, 1}.");

  m.def("index_matrix",
        [](const std::vector<std::vector<long>>& rows) {
          return pylist_of(build_AT(check_admissible(matrix_of(rows))));
        },
        py::arg("rows"), "(N+1) x N matrix whose kernel carries Ext_s^0.");

  m.def("adjoined_matrix",
        [](const std::vector<std::vector<long>>& rows, std::size_t k) {
          return pylist_of(build_Ak(check_admissible(matrix_of(rows)), k));
        },
        py::arg("rows"), py::arg("k"),
        "Matrix with k adjoined full letters; preserves the invariants.");

  m.def("shift_truncation",
        [](const std::vector<std::vector<long>>& rows, std::size_t m_) {
          return pylist_of(build_tildeAinfty(check_admissible(matrix_of(rows)), m_));
        },
        py::arg("rows"), py::arg("m"), "m x m corner of the shifted infinite matrix.");

  m.def("corner_truncation",
        [](const std::vector<std::vector<long>>& rows, std::size_t m_) {
          return pylist_of(build_hatAinfty(check_admissible(matrix_of(rows)), m_));
        },
        py::arg("rows"), py::arg("m"), "m x m corner of the dual infinite matrix.");

  m.def("sheet",
        [](const std::vector<std::vector<long>>& rows) {
          AdjacencyMatrix a = check_admissible(matrix_of(rows));
          return loads(io::sheet_to_json(invariant_sheet(a), verify_duality_sheet(a)));
        },
        py::arg("rows"),
        "Full invariant sheet (K-groups, Ext groups, classes, ranks) with "
        "consistency checks.");

  m.def("dual_datum",
        [](const std::vector<std::vector<long>>& rows) {
          return loads(io::kdatum_to_json(reciprocal_kdata(check_admissible(matrix_of(rows)))));
        },
        py::arg("rows"), "Pointed K-datum (k0, unit, k1) of the reciprocal dual.");

  m.def("classify_datum",
        [](const py::object& datum) { return verdict_of(datum_of(datum)); },
        py::arg("datum"),
        "One of 'CK-form', 'reciprocal-CK-form', 'neither'.");

  m.def("kp_iso",
        [](const py::object& d1, const py::object& d2) {
          return kp_iso(datum_of(d1), datum_of(d2));
        },
        py::arg("d1"), py::arg("d2"),
        "Pointed isomorphism of K-data: (k0, unit) pointed, k1 plain.");

  m.def("w_case",
        [](const py::object& datum) {
          WCaseReport r = w_case_report(datum_of(datum));
          py::dict out;
          out["w"] = r.w;
          out["k0"] = r.rec_k0.to_string();
          out["k1"] = r.rec_k1.to_string();
          return out;
        },
        py::arg("datum"),
        "Reconstructs the algebra-side K-groups from a reciprocal-form datum.");

  m.def("compare",
        [](const std::vector<std::vector<long>>& rows, const py::object& datum) {
          CheckReport r =
              prop22_check(check_admissible(matrix_of(rows)), datum_of(datum));
          py::dict out;
          out["match"] = r.ok();
          out["failures"] = r.failures;
          return out;
        },
        py::arg("rows"), py::arg("datum"),
        "Checks whether the datum matches the matrix's dual K-data.");

  m.def("fock_verify",
        [](const std::vector<std::vector<long>>& rows, const std::string& suite,
           std::size_t k, std::size_t depth, std::size_t samples, double tol) {
          return loads(io::fock_report_to_json(
              run_suite(matrix_of(rows), suite, k, depth, samples, tol)));
        },
        py::arg("rows"), py::arg("suite") = "all", py::arg("k") = 3,
        py::arg("depth") = 8, py::arg("samples") = 200, py::arg("tol") = 0.0,
        "Runs a relation suite (toeplitz, oainf, reciprocal, lemma56, gap, "
        "all) on truncated Fock space; returns one row per relation.");
}
