#pragma once

#include "ckrec/classify.hpp"
#include "ckrec/fock.hpp"

#include <string>

namespace ckrec {
namespace io {

// Matrix files: JSON {"n": N, "rows": [[...], ...]} or plain text, one row
// per line of contiguous digit characters. parse errors carry code
// "ParseError".
IntMatrix parse_matrix(const std::string& text);
IntMatrix read_matrix_file(const std::string& path);
std::string matrix_to_json(const IntMatrix& m);
std::string matrix_to_table(const IntMatrix& m);

// K-datum files: {"k0": {"rank": r, "torsion": [...]},
//                 "unit": {"free": [...], "torsion": [...]},
//                 "k1": {"rank": r, "torsion": [...]}}
KDatum parse_kdatum(const std::string& text);
KDatum read_kdatum_file(const std::string& path);
std::string kdatum_to_json(const KDatum& d);
bool looks_like_kdatum(const std::string& text);

std::string group_to_json(const FgAbGroup& g);
std::string element_to_string(const GroupElement& e);

std::string sheet_to_json(const InvariantSheet& s, const CheckReport& checks);
std::string sheet_to_table(const InvariantSheet& s, const CheckReport& checks);

std::string fock_report_to_json(const FockReport& r);
std::string fock_report_to_table(const FockReport& r);

std::string read_text_file(const std::string& path);

}  // namespace io
}  // namespace ckrec
