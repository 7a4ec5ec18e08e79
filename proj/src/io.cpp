#include "ckrec/io.hpp"

#include "json.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ckrec {
namespace io {

using nlohmann::json;

namespace {

long long to_ll(const Int& v) {
  if (!v.fits_slong_p()) throw Error("Overflow", "value exceeds the serializable range");
  return static_cast<long long>(v.get_si());
}

long require_int(const json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw Error("ParseError", where + " must be an integer");
  return j.get<long>();
}

std::vector<Int> int_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw Error("ParseError", where + " must be a list");
  std::vector<Int> out;
  out.reserve(j.size());
  for (const auto& v : j) out.emplace_back(require_int(v, where + " entry"));
  return out;
}

json group_json(const FgAbGroup& g) {
  json t = json::array();
  for (const auto& d : g.torsion) t.push_back(to_ll(d));
  return json{{"rank", g.free_rank}, {"torsion", std::move(t)}};
}

json element_json(const GroupElement& e) {
  json f = json::array(), t = json::array();
  for (const auto& c : e.free_coords) f.push_back(to_ll(c));
  for (const auto& c : e.torsion_coords) t.push_back(to_ll(c));
  return json{{"free", std::move(f)}, {"torsion", std::move(t)}};
}

FgAbGroup group_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("rank") || !j.contains("torsion"))
    throw Error("ParseError", where + " must be {\"rank\": r, \"torsion\": [...]}");
  long long r = require_int(j["rank"], where + ".rank");
  if (r < 0) throw Error("ParseError", where + ".rank must be >= 0");
  FgAbGroup g;
  g.free_rank = static_cast<std::size_t>(r);
  g.torsion = int_list(j["torsion"], where + ".torsion");
  for (std::size_t i = 0; i < g.torsion.size(); ++i) {
    if (g.torsion[i] < 2)
      throw Error("ParseError", where + ".torsion entries must be >= 2");
    if (i + 1 < g.torsion.size() && g.torsion[i + 1] % g.torsion[i] != 0)
      throw Error("ParseError",
                  where + ".torsion must be an ascending divisibility chain");
  }
  return g;
}

IntMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows"))
    throw Error("ParseError", "matrix JSON must contain \"rows\"");
  const json& rows = j["rows"];
  if (!rows.is_array() || rows.empty())
    throw Error("ParseError", "\"rows\" must be a nonempty list of rows");
  std::size_t r = rows.size();
  if (!rows[0].is_array() || rows[0].empty())
    throw Error("ParseError", "each row must be a nonempty list");
  std::size_t c = rows[0].size();
  if (j.contains("n") &&
      require_int(j["n"], "\"n\"") != static_cast<long long>(r))
    throw Error("ParseError", "\"n\" disagrees with the number of rows");
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!rows[i].is_array() || rows[i].size() != c)
      throw Error("ParseError", "rows must all have the same length");
    for (std::size_t k = 0; k < c; ++k)
      m.at(i, k) = Int(require_int(rows[i][k], "matrix entry"));
  }
  return m;
}

IntMatrix matrix_from_plain(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::string row;
    for (char ch : raw) {
      if (std::isspace(static_cast<unsigned char>(ch))) continue;
      if (ch != '0' && ch != '1')
        throw Error("ParseError",
                    std::string("plain matrix rows may contain only 0 and 1, got '") +
                        ch + "'");
      row.push_back(ch);
    }
    if (!row.empty()) lines.push_back(std::move(row));
  }
  if (lines.empty()) throw Error("ParseError", "empty matrix file");
  std::size_t c = lines[0].size();
  IntMatrix m(lines.size(), c);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].size() != c)
      throw Error("ParseError", "rows must all have the same length");
    for (std::size_t k = 0; k < c; ++k)
      m.at(i, k) = Int(lines[i][k] - '0');
  }
  return m;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("FileError", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

IntMatrix parse_matrix(const std::string& text) {
  auto pos = text.find_first_not_of(" \t\r\n");
  if (pos == std::string::npos) throw Error("ParseError", "empty matrix file");
  if (text[pos] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw Error("ParseError", e.what());
    }
    return matrix_from_json(j);
  }
  return matrix_from_plain(text);
}

IntMatrix read_matrix_file(const std::string& path) {
  return parse_matrix(read_text_file(path));
}

std::string matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_ll(m.at(i, k)));
    rows.push_back(std::move(row));
  }
  json j{{"n", m.rows()}, {"rows", std::move(rows)}};
  if (m.rows() != m.cols()) j["cols"] = m.cols();
  return j.dump();
}

std::string matrix_to_table(const IntMatrix& m) {
  std::size_t width = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k)
      width = std::max(width, m.at(i, k).get_str().size());
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < m.cols(); ++k) {
      std::string s = m.at(i, k).get_str();
      if (k) out << ' ';
      out << std::string(width - s.size(), ' ') << s;
    }
    out << '\n';
  }
  return out.str();
}

bool looks_like_kdatum(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  return j.is_object() && j.contains("k0");
}

KDatum parse_kdatum(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error("ParseError", e.what());
  }
  if (!j.is_object() || !j.contains("k0") || !j.contains("unit") || !j.contains("k1"))
    throw Error("ParseError", "K-datum JSON needs \"k0\", \"unit\", \"k1\"");
  KDatum d;
  d.k0 = group_from_json(j["k0"], "k0");
  d.k1 = group_from_json(j["k1"], "k1");
  const json& u = j["unit"];
  if (!u.is_object() || !u.contains("free") || !u.contains("torsion"))
    throw Error("ParseError", "unit must be {\"free\": [...], \"torsion\": [...]}");
  std::vector<Int> f = int_list(u["free"], "unit.free");
  std::vector<Int> t = int_list(u["torsion"], "unit.torsion");
  if (f.size() != d.k0.free_rank || t.size() != d.k0.torsion.size())
    throw Error("ParseError", "unit coordinate counts disagree with k0");
  d.unit = make_element(d.k0, std::move(f), std::move(t));
  return d;
}

KDatum read_kdatum_file(const std::string& path) {
  return parse_kdatum(read_text_file(path));
}

std::string kdatum_to_json(const KDatum& d) {
  json j{{"k0", group_json(d.k0)},
         {"unit", element_json(d.unit)},
         {"k1", group_json(d.k1)}};
  return j.dump();
}

std::string group_to_json(const FgAbGroup& g) { return group_json(g).dump(); }

std::string element_to_string(const GroupElement& e) {
  if (e.is_zero()) return "0";
  std::ostringstream out;
  out << '(';
  bool first = true;
  for (const auto& c : e.free_coords) {
    if (!first) out << ", ";
    out << c.get_str();
    first = false;
  }
  for (std::size_t i = 0; i < e.torsion_coords.size(); ++i) {
    if (!first) out << ", ";
    out << e.torsion_coords[i].get_str() << " mod "
        << e.owner.torsion[i].get_str();
    first = false;
  }
  out << ')';
  return out.str();
}

std::string sheet_to_json(const InvariantSheet& s, const CheckReport& checks) {
  json f = json::array();
  for (const auto& msg : checks.failures) f.push_back(msg);
  json j{{"k0", group_json(s.k0)},
         {"unit_class", element_json(s.unit_class)},
         {"k1", group_json(s.k1)},
         {"exts1", group_json(s.exts1)},
         {"iota_class", element_json(s.iota_class)},
         {"exts0", group_json(s.exts0)},
         {"extw1", group_json(s.extw1)},
         {"extw0", group_json(s.extw0)},
         {"chi_oa", s.chi_oa},
         {"chi_hat", s.chi_hat},
         {"w_oa", s.w_oa},
         {"w_hat", s.w_hat},
         {"checks", json{{"ok", checks.ok()}, {"failures", std::move(f)}}}};
  return j.dump();
}

std::string sheet_to_table(const InvariantSheet& s, const CheckReport& checks) {
  std::ostringstream out;
  auto line = [&out](const std::string& name, const std::string& value,
                     const std::string& extra = "") {
    out << name << std::string(name.size() < 14 ? 14 - name.size() : 1, ' ')
        << value;
    if (!extra.empty()) out << "   " << extra;
    out << '\n';
  };
  line("K0", s.k0.to_string(), "unit class " + element_to_string(s.unit_class));
  line("K1", s.k1.to_string());
  line("Ext_s^1", s.exts1.to_string(),
       "iota class " + element_to_string(s.iota_class));
  line("Ext_s^0", s.exts0.to_string());
  line("Ext_w^1", s.extw1.to_string());
  line("Ext_w^0", s.extw0.to_string());
  out << "chi " << s.chi_oa << "   chi^ " << s.chi_hat << "   w " << s.w_oa
      << "   w^ " << s.w_hat << '\n';
  if (checks.ok()) {
    out << "checks: ok\n";
  } else {
    out << "checks: FAIL\n";
    for (const auto& msg : checks.failures) out << "  - " << msg << '\n';
  }
  return out.str();
}

std::string fock_report_to_json(const FockReport& r) {
  json list = json::array();
  for (const auto& res : r.results) {
    list.push_back(json{{"relation", res.relation},
                        {"indices", res.indices},
                        {"headroom", res.headroom},
                        {"depth", res.depth},
                        {"status", res.pass ? "pass" : "fail"}});
  }
  return list.dump();
}

std::string fock_report_to_table(const FockReport& r) {
  std::size_t w_rel = 8, w_idx = 7;
  for (const auto& res : r.results) {
    w_rel = std::max(w_rel, res.relation.size());
    w_idx = std::max(w_idx, res.indices.size());
  }
  std::ostringstream out;
  auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w - s.size() + 2, ' ');
  };
  out << pad("relation", w_rel) << pad("indices", w_idx)
      << "headroom  depth  status\n";
  for (const auto& res : r.results) {
    std::string h = std::to_string(res.headroom);
    std::string d = std::to_string(res.depth);
    out << pad(res.relation, w_rel) << pad(res.indices, w_idx)
        << pad(h, 8) << pad(d, 5) << (res.pass ? "pass" : "fail") << '\n';
  }
  out << (r.ok() ? "all relations hold\n" : "FAILURES present\n");
  return out.str();
}

}  // namespace io
}  // namespace ckrec
