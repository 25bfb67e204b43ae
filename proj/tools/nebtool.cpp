// nebtool: construct, verify and classify nice error bases and their groups.
//
// Exit status: 0 success, 1 verification failure, 2 usage error,
// 3 parse or validation error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "neb/catalogue.hpp"
#include "neb/cayley_io.hpp"
#include "neb/central_type.hpp"
#include "neb/constructions.hpp"
#include "neb/error_basis.hpp"
#include "neb/errors.hpp"
#include "neb/json_io.hpp"

namespace {

enum class Format { json, csv, text };

struct RunConfig {
  Format format = Format::json;
  std::string out;
  double tolerance = neb::kDefaultTolerance;
  unsigned jobs = 1;
  std::size_t max_order = neb::kDefaultMaxOrder;
  std::vector<std::string> sources;
  std::string input = "-";
  std::string table_path;
  bool builtin = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw neb::Error("cannot write " + cfg.out);
  f << text;
}

std::string dump(const neb::ojson& j) { return j.dump(2) + "\n"; }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

template <class T>
std::string opt_text(const std::optional<T>& v) {
  if (!v) return "-";
  if constexpr (std::is_same_v<T, bool>)
    return yes_no(*v);
  else if constexpr (std::is_same_v<T, std::string>)
    return *v;
  else
    return std::to_string(*v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

// ---- verify ----

std::string nice_text(const neb::NiceReport& r) {
  std::ostringstream out;
  out << (r.pass() ? "PASS" : "FAIL") << "  degree " << r.degree << ", index group order "
      << r.group_order << ", " << (r.exact ? "exact" : "dense") << "\n";
  for (const auto& c : r.conditions) {
    out << "  " << (c.pass ? "ok  " : "FAIL") << " " << c.name;
    if (!c.pass) out << " (" << c.failures << " failures)";
    out << "\n";
    for (const auto& w : c.witnesses) out << "       " << w << "\n";
  }
  return out.str();
}

std::string nice_csv(const neb::NiceReport& r) {
  std::ostringstream out;
  out << "condition,pass,failures,first_witness\n";
  for (const auto& c : r.conditions)
    out << c.name << "," << (c.pass ? "true" : "false") << "," << c.failures << ","
        << csv_field(c.witnesses.empty() ? "" : c.witnesses.front()) << "\n";
  return out.str();
}

neb::ErrorBasis read_basis(const RunConfig& cfg) {
  if (cfg.input == "-") return neb::basis_from_stream(std::cin, cfg.tolerance);
  return neb::basis_from_file(cfg.input, cfg.tolerance);
}

int run_verify(const RunConfig& cfg) {
  const auto basis = read_basis(cfg);
  const auto report = neb::verify_nice(basis, cfg.jobs);
  switch (cfg.format) {
    case Format::json: emit(cfg, dump(neb::report_to_json(report))); break;
    case Format::csv: emit(cfg, nice_csv(report)); break;
    case Format::text: emit(cfg, nice_text(report)); break;
  }
  return report.pass() ? 0 : 1;
}

// ---- construct ----

int run_construct(const RunConfig& cfg) {
  if (cfg.sources.empty()) throw UsageError("construct needs at least one source");
  auto basis = neb::basis_from_source(cfg.sources.front(), cfg.tolerance);
  for (std::size_t i = 1; i < cfg.sources.size(); ++i)
    basis = neb::tensor_basis(basis, neb::basis_from_source(cfg.sources[i], cfg.tolerance));
  switch (cfg.format) {
    case Format::json: emit(cfg, neb::basis_to_json(basis)); break;
    case Format::csv: throw UsageError("construct does not support --format csv");
    case Format::text: {
      std::ostringstream out;
      out << "degree " << basis.degree() << ", index group order "
          << basis.index_group().order() << "\n";
      const auto& g = basis.index_group();
      for (std::size_t x = 0; x < g.order(); ++x) {
        out << "  " << g.label(static_cast<neb::Elem>(x)) << "  ";
        if (basis.is_exact())
          out << neb::mono_label(basis.monomial()[x]);
        else
          out << "(dense)";
        out << "\n";
      }
      emit(cfg, out.str());
      break;
    }
  }
  return 0;
}

// ---- analyze / scan ----

void classification_text(std::ostream& out, const neb::ClassificationReport& r) {
  out << "  order                 " << r.fingerprint.order << "\n"
      << "  abelian               " << yes_no(r.fingerprint.abelian) << "\n"
      << "  center order          " << r.center_order << (r.center_cyclic ? " (cyclic)" : "")
      << "\n"
      << "  central type          " << opt_text(r.central_type) << " [" << r.central_type_method
      << "]\n";
  if (r.central_type_witness) out << "  witness               " << *r.central_type_witness << "\n";
  if (r.max_character_degree)
    out << "  max character degree  " << *r.max_character_degree << "\n";
  out << "  abstract error group  " << yes_no(r.abstract_error_group) << "\n"
      << "  solvable              " << yes_no(r.solvable) << " (derived length "
      << r.derived_length << ")\n"
      << "  nilpotency class      " << opt_text(r.nilpotency_class) << "\n"
      << "  index group           order " << r.index_group_fingerprint.order
      << (r.index_group_abelian ? ", abelian" : ", nonabelian") << "\n";
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
}

const char* kCsvHeader =
    "name,order,center_order,center_cyclic,central_type,abstract_error_group,solvable,"
    "nilpotency_class,index_group_order,index_group_abelian,error\n";

std::string classification_csv_row(const std::string& name,
                                   const std::optional<neb::ClassificationReport>& r,
                                   const std::optional<std::string>& error) {
  std::ostringstream out;
  out << csv_field(name) << ",";
  if (r) {
    auto tf = [](bool b) { return b ? "true" : "false"; };
    out << r->fingerprint.order << "," << r->center_order << "," << tf(r->center_cyclic) << ","
        << (r->central_type ? tf(*r->central_type) : "") << "," << tf(r->abstract_error_group)
        << "," << tf(r->solvable) << ","
        << (r->nilpotency_class ? std::to_string(*r->nilpotency_class) : "") << ","
        << r->index_group_fingerprint.order << "," << tf(r->index_group_abelian) << ",";
  } else {
    out << ",,,,,,,,,";
  }
  out << csv_field(error.value_or("")) << "\n";
  return out.str();
}

int run_analyze(const RunConfig& cfg) {
  if (cfg.sources.size() != 1) throw UsageError("analyze takes exactly one group source");
  const auto& source = cfg.sources.front();
  const auto report = neb::classify(neb::load_group(source, cfg.max_order));
  switch (cfg.format) {
    case Format::json: {
      neb::ojson j = {{"name", source}};
      j.update(neb::report_to_json(report));
      emit(cfg, dump(j));
      break;
    }
    case Format::csv: emit(cfg, kCsvHeader + classification_csv_row(source, report, {})); break;
    case Format::text: {
      std::ostringstream out;
      out << source << "\n";
      classification_text(out, report);
      emit(cfg, out.str());
      break;
    }
  }
  return 0;
}

int run_scan(const RunConfig& cfg) {
  auto sources = cfg.sources;
  if (cfg.builtin) {
    const auto cat = neb::builtin_catalogue();
    sources.insert(sources.end(), cat.begin(), cat.end());
  }
  if (sources.empty()) throw UsageError("scan needs sources or --builtin");
  const auto summary = neb::scan(sources, cfg.jobs, cfg.max_order);
  switch (cfg.format) {
    case Format::json: emit(cfg, dump(neb::scan_to_json(summary))); break;
    case Format::csv: {
      std::string out = kCsvHeader;
      for (const auto& e : summary.entries) out += classification_csv_row(e.name, e.report, e.error);
      emit(cfg, out);
      break;
    }
    case Format::text: {
      std::ostringstream out;
      for (const auto& e : summary.entries) {
        out << e.name << "\n";
        if (e.report)
          classification_text(out, *e.report);
        else
          out << "  error: " << e.error.value_or("") << "\n";
      }
      out << summary.entries.size() << " groups, " << summary.abstract_error_groups
          << " abstract error groups, " << summary.nonabelian_index_groups
          << " with nonabelian index group, " << summary.errors << " errors\n";
      emit(cfg, out.str());
      break;
    }
  }
  return summary.errors == 0 ? 0 : 3;
}

// ---- cover ----

int run_cover(const RunConfig& cfg) {
  const auto basis = read_basis(cfg);
  const auto omega = neb::extract_factor_system(basis);
  const auto cover = neb::covering_group(omega, cfg.max_order);
  const auto report = neb::classify(cover.group);
  if (!cfg.table_path.empty()) {
    std::ofstream f(cfg.table_path, std::ios::binary);
    if (!f) throw neb::Error("cannot write " + cfg.table_path);
    neb::write_cayley(f, cover.group);
  }
  switch (cfg.format) {
    case Format::json: {
      neb::ojson j = {{"order", cover.group.order()},
                      {"t_order", cover.t_order},
                      {"index_group_order", omega.group().order()},
                      {"report", neb::report_to_json(report)}};
      if (cfg.table_path.empty()) j["group"] = neb::group_to_json(cover.group);
      emit(cfg, dump(j));
      break;
    }
    case Format::csv:
      emit(cfg, kCsvHeader + classification_csv_row("cover", report, {}));
      break;
    case Format::text: {
      std::ostringstream out;
      out << "covering group: order " << cover.group.order() << " = " << cover.t_order << " x "
          << omega.group().order() << "\n";
      classification_text(out, report);
      if (cfg.table_path.empty()) out << "\n" << neb::to_cayley_text(cover.group);
      emit(cfg, out.str());
      break;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nice error bases: construction, exact verification, group classification"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;

  const std::map<std::string, Format> formats{
      {"json", Format::json}, {"csv", Format::csv}, {"text", Format::text}};
  app.add_option("--format", cfg.format, "Output format: json, csv or text")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "Write output to this file instead of stdout");
  app.add_option("--tolerance", cfg.tolerance, "Tolerance for dense matrix imports")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Worker threads for pair checks and scans")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  app.add_option("--max-order", cfg.max_order, "Largest group order to build")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* construct = app.add_subcommand("construct", "Emit a basis (tensor product of sources)");
  construct
      ->add_option("sources", cfg.sources,
                   "pauli:m, abelian:m1xm2..., hn:n, trivial, or a basis JSON file")
      ->required();

  auto* verify = app.add_subcommand("verify", "Check the nice error basis axioms");
  verify->add_option("input", cfg.input, "Basis JSON file, or - for stdin");

  auto* analyze = app.add_subcommand("analyze", "Classify a group");
  analyze->add_option("source", cfg.sources, "Family descriptor or Cayley table file")
      ->required();

  auto* cover = app.add_subcommand("cover", "Build the covering group of a basis");
  cover->add_option("input", cfg.input, "Basis JSON file, or - for stdin");
  cover->add_option("--table", cfg.table_path, "Write the Cayley table to this file");

  auto* scan = app.add_subcommand("scan", "Classify many groups");
  scan->add_option("sources", cfg.sources, "Family descriptors or Cayley table files");
  scan->add_flag("--builtin", cfg.builtin, "Include the built-in catalogue");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : 2;
  }

  try {
    if (construct->parsed()) return run_construct(cfg);
    if (verify->parsed()) return run_verify(cfg);
    if (analyze->parsed()) return run_analyze(cfg);
    if (cover->parsed()) return run_cover(cfg);
    if (scan->parsed()) return run_scan(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const neb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
