#ifndef NEB_JSON_IO_HPP
#define NEB_JSON_IO_HPP

// JSON encodings: error bases (export and import) and the verification,
// classification and scan reports. Output is byte-deterministic.
//
// Basis layout:
//   { "degree": n,
//     "group": {"order": N, "table": [[...], ...], "labels": [...]}
//              or a family descriptor string,
//     "matrices": [ {"perm": [...], "phases": ["a/b", ...]}
//                 | {"dense": [[[re, im], ...], ...]} , ... ] }

#include <json.hpp>

#include <complex>
#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "neb/catalogue.hpp"
#include "neb/central_type.hpp"
#include "neb/constructions.hpp"
#include "neb/error_basis.hpp"
#include "neb/errors.hpp"
#include "neb/group.hpp"
#include "neb/monomial.hpp"

namespace neb {

using ojson = nlohmann::ordered_json;

inline ojson group_to_json(const FiniteGroup& g) {
  ojson table = ojson::array();
  for (std::size_t r = 0; r < g.order(); ++r) {
    ojson row = ojson::array();
    for (std::size_t c = 0; c < g.order(); ++c)
      row.push_back(g.mul(static_cast<Elem>(r), static_cast<Elem>(c)));
    table.push_back(std::move(row));
  }
  return {{"order", g.order()}, {"table", std::move(table)}, {"labels", g.labels()}};
}

inline ojson monomial_to_json(const MonomialMatrix& m) {
  ojson phases = ojson::array();
  for (const auto& p : m.phases()) phases.push_back(p.to_string());
  return {{"perm", m.perm()}, {"phases", std::move(phases)}};
}

inline ojson dense_to_json(const DenseMatrix& m) {
  ojson rows = ojson::array();
  for (std::size_t r = 0; r < m.dim; ++r) {
    ojson row = ojson::array();
    for (std::size_t c = 0; c < m.dim; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return {{"dense", std::move(rows)}};
}

/// Pretty-printed basis: one table row and one matrix per line.
inline std::string basis_to_json(const ErrorBasis& e) {
  const auto& g = e.index_group();
  std::ostringstream out;
  out << "{\n  \"degree\": " << e.degree() << ",\n  \"group\": {\n    \"order\": " << g.order()
      << ",\n    \"table\": [\n";
  for (std::size_t r = 0; r < g.order(); ++r) {
    ojson row = ojson::array();
    for (std::size_t c = 0; c < g.order(); ++c)
      row.push_back(g.mul(static_cast<Elem>(r), static_cast<Elem>(c)));
    out << "      " << row.dump() << (r + 1 < g.order() ? ",\n" : "\n");
  }
  out << "    ],\n    \"labels\": " << ojson(g.labels()).dump() << "\n  },\n  \"matrices\": [\n";
  for (std::size_t x = 0; x < g.order(); ++x) {
    const ojson m = e.is_exact() ? monomial_to_json(e.monomial()[x]) : dense_to_json(e.dense()[x]);
    out << "    " << m.dump() << (x + 1 < g.order() ? ",\n" : "\n");
  }
  out << "  ]\n}\n";
  return out.str();
}

namespace detail {

inline FiniteGroup group_from_json(const ojson& j) {
  if (j.is_string()) return build(j.get<std::string>());
  if (!j.is_object() || !j.contains("order") || !j.contains("table"))
    throw ParseError("\"group\" must be a descriptor string or {order, table}");
  const auto order = j.at("order").get<std::size_t>();
  if (order == 0 || order > kDefaultMaxOrder) throw ParseError("group order out of range");
  const auto& rows = j.at("table");
  if (!rows.is_array() || rows.size() != order)
    throw ParseError("group table must have " + std::to_string(order) + " rows");
  std::vector<Elem> table;
  table.reserve(order * order);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != order)
      throw ParseError("group table rows must have " + std::to_string(order) + " entries");
    for (const auto& v : row) {
      if (!v.is_number_unsigned() || v.get<std::size_t>() >= order)
        throw ParseError("group table entry out of range");
      table.push_back(v.get<Elem>());
    }
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return FiniteGroup::from_table(order, std::move(table), std::move(labels));
}

inline MonomialMatrix monomial_from_json(const ojson& j) {
  const auto perm = j.at("perm").get<std::vector<std::uint32_t>>();
  std::vector<PhaseRational> phases;
  for (const auto& p : j.at("phases")) phases.push_back(PhaseRational::parse(p.get<std::string>()));
  return {perm, std::move(phases)};
}

inline DenseMatrix dense_from_json(const ojson& j) {
  const auto& rows = j.at("dense");
  const std::size_t n = rows.size();
  std::vector<std::complex<double>> entries;
  entries.reserve(n * n);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n) throw ParseError("dense matrix is not square");
    for (const auto& z : row) {
      if (!z.is_array() || z.size() != 2) throw ParseError("dense entry must be [re, im]");
      entries.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
  }
  return {n, std::move(entries)};
}

/// Exact monomial form of a dense matrix whose nonzero entries are roots of
/// unity with denominator <= 2^12, one per row and column.
inline std::optional<MonomialMatrix> detect_monomial(const DenseMatrix& m, double tol) {
  std::vector<std::uint32_t> perm(m.dim);
  std::vector<PhaseRational> phases(m.dim);
  std::vector<char> row_used(m.dim, 0);
  for (std::size_t c = 0; c < m.dim; ++c) {
    std::optional<std::size_t> row;
    for (std::size_t r = 0; r < m.dim; ++r) {
      if (std::abs(m(r, c)) < tol) continue;
      if (row) return std::nullopt;
      row = r;
    }
    if (!row || row_used[*row]) return std::nullopt;
    const auto root = nearest_root_of_unity(m(*row, c), tol, 4096);
    if (!root) return std::nullopt;
    row_used[*row] = 1;
    perm[c] = static_cast<std::uint32_t>(*row);
    phases[c] = *root;
  }
  return MonomialMatrix(std::move(perm), std::move(phases));
}

}  // namespace detail

/// Parses a basis document. Dense matrices are upgraded to exact monomial
/// form when every one of them is monomial with root-of-unity entries.
inline ErrorBasis basis_from_json(const std::string& text, double tolerance = kDefaultTolerance) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("basis JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("group") || !j.contains("matrices"))
      throw ParseError("basis JSON needs \"group\" and \"matrices\"");
    FiniteGroup g = detail::group_from_json(j.at("group"));
    const auto& mats = j.at("matrices");
    if (!mats.is_array()) throw ParseError("\"matrices\" must be an array");
    if (mats.size() != g.order())
      throw ValidationError("basis has " + std::to_string(mats.size()) +
                            " matrices for a group of order " + std::to_string(g.order()));
    bool all_monomial = true;
    for (const auto& m : mats) {
      if (m.contains("perm")) continue;
      if (!m.contains("dense")) throw ParseError("matrix needs \"perm\"/\"phases\" or \"dense\"");
      all_monomial = false;
    }
    if (j.contains("degree")) {
      const auto n = j.at("degree").get<std::size_t>();
      for (const auto& m : mats) {
        const std::size_t dim = m.contains("perm") ? m.at("perm").size() : m.at("dense").size();
        if (dim != n)
          throw ValidationError("matrix dimension " + std::to_string(dim) +
                                " differs from degree " + std::to_string(n));
      }
    }
    if (all_monomial) {
      std::vector<MonomialMatrix> ms;
      for (const auto& m : mats) ms.push_back(detail::monomial_from_json(m));
      return {std::move(g), std::move(ms)};
    }
    std::vector<DenseMatrix> dense;
    for (const auto& m : mats)
      dense.push_back(m.contains("perm") ? DenseMatrix(detail::monomial_from_json(m))
                                         : detail::dense_from_json(m));
    std::vector<MonomialMatrix> upgraded;
    for (const auto& d : dense) {
      auto mono = detail::detect_monomial(d, tolerance);
      if (!mono) break;
      upgraded.push_back(std::move(*mono));
    }
    if (upgraded.size() == dense.size()) return {std::move(g), std::move(upgraded)};
    return {std::move(g), std::move(dense), tolerance};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("basis JSON: ") + e.what());
  }
}

inline ErrorBasis basis_from_stream(std::istream& in, double tolerance = kDefaultTolerance) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return basis_from_json(text, tolerance);
}

inline ErrorBasis basis_from_file(const std::string& path, double tolerance = kDefaultTolerance) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return basis_from_stream(in, tolerance);
}

/// Dense encoding of a basis, for exercising the import path.
inline ErrorBasis to_dense_basis(const ErrorBasis& e, double tolerance = kDefaultTolerance) {
  std::vector<DenseMatrix> ms;
  for (std::size_t x = 0; x < e.index_group().order(); ++x)
    ms.push_back(e.dense_at(static_cast<Elem>(x)));
  return {e.index_group(), std::move(ms), tolerance};
}

/// "pauli:m", "abelian:m1xm2x...", "hn:n", "trivial", or a basis JSON path.
inline ErrorBasis basis_from_source(const std::string& source,
                                   double tolerance = kDefaultTolerance) {
  if (std::filesystem::is_regular_file(source)) return basis_from_file(source, tolerance);
  if (source == "trivial") return trivial_basis();
  const auto colon = source.find(':');
  if (colon == std::string::npos)
    throw ParseError("unknown basis source \"" + source + "\" (not a file or descriptor)");
  const std::string family = source.substr(0, colon);
  const std::string_view param = std::string_view(source).substr(colon + 1);
  if (family == "pauli") return construct_pauli(static_cast<int>(detail::parse_int(param, family)));
  if (family == "hn") return construct_hn(static_cast<int>(detail::parse_int(param, family)));
  if (family == "abelian") {
    std::vector<std::int64_t> orders;
    std::size_t start = 0;
    for (;;) {
      const auto x = param.find('x', start);
      orders.push_back(detail::parse_int(param.substr(start, x - start), family));
      if (x == std::string_view::npos) break;
      start = x + 1;
    }
    return construct_symmetric_abelian(std::span<const std::int64_t>(orders));
  }
  throw ParseError("unknown basis family \"" + family + "\"");
}

inline ojson report_to_json(const NiceReport& r) {
  ojson conds = ojson::array();
  for (const auto& c : r.conditions)
    conds.push_back({{"name", c.name},
                     {"pass", c.pass},
                     {"failures", c.failures},
                     {"witnesses", c.witnesses}});
  ojson j = {{"pass", r.pass()}, {"exact", r.exact}};
  if (!r.exact) j["tolerance"] = r.tolerance;
  j["degree"] = r.degree;
  j["group_order"] = r.group_order;
  j["conditions"] = std::move(conds);
  return j;
}

inline ojson fingerprint_to_json(const Fingerprint& f) {
  ojson orders = ojson::object();
  for (const auto& [k, v] : f.element_orders) orders[std::to_string(k)] = v;
  return {{"order", f.order},
          {"abelian", f.abelian},
          {"center_order", f.center_order},
          {"class_sizes", f.class_sizes},
          {"element_orders", std::move(orders)}};
}

template <class T>
ojson optional_json(const std::optional<T>& v) {
  return v ? ojson(*v) : ojson(nullptr);
}

inline ojson report_to_json(const ClassificationReport& r) {
  return {{"order", r.fingerprint.order},
          {"fingerprint", fingerprint_to_json(r.fingerprint)},
          {"center_order", r.center_order},
          {"center_cyclic", r.center_cyclic},
          {"central_type", optional_json(r.central_type)},
          {"central_type_method", r.central_type_method},
          {"central_type_witness", optional_json(r.central_type_witness)},
          {"methods_agree", optional_json(r.methods_agree)},
          {"max_character_degree", optional_json(r.max_character_degree)},
          {"abstract_error_group", r.abstract_error_group},
          {"solvable", r.solvable},
          {"derived_length", r.derived_length},
          {"nilpotent", r.nilpotency_class.has_value()},
          {"nilpotency_class", optional_json(r.nilpotency_class)},
          {"index_group_fingerprint", fingerprint_to_json(r.index_group_fingerprint)},
          {"index_group_abelian", r.index_group_abelian},
          {"notes", r.notes}};
}

inline ojson scan_to_json(const ScanSummary& s) {
  ojson groups = ojson::array();
  for (const auto& e : s.entries) {
    ojson item = {{"name", e.name}};
    if (e.report) item["report"] = report_to_json(*e.report);
    if (e.error) item["error"] = *e.error;
    groups.push_back(std::move(item));
  }
  return {{"groups", std::move(groups)},
          {"summary",
           {{"total", s.entries.size()},
            {"abstract_error_groups", s.abstract_error_groups},
            {"nonabelian_index_groups", s.nonabelian_index_groups},
            {"errors", s.errors}}}};
}

}  // namespace neb

#endif  // NEB_JSON_IO_HPP
