#ifndef NEB_CAYLEY_IO_HPP
#define NEB_CAYLEY_IO_HPP

// Plain-text Cayley tables:
//
//   order N
//   <N lines of N whitespace-separated 0-based indices>
//   labels            (optional)
//   <N lines, one label each>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "neb/errors.hpp"
#include "neb/group.hpp"

namespace neb {

inline FiniteGroup read_cayley(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError("line " + std::to_string(line_no) + ": " + what);
  };
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line()) throw ParseError("line 1: empty input, expected \"order N\"");
  std::size_t order = 0;
  {
    std::istringstream header(line);
    std::string keyword;
    long long n = 0;
    std::string extra;
    if (!(header >> keyword >> n) || keyword != "order" || (header >> extra))
      throw fail("expected \"order N\"");
    if (n < 1) throw fail("order must be positive");
    if (static_cast<unsigned long long>(n) > kDefaultMaxOrder)
      throw fail("order exceeds " + std::to_string(kDefaultMaxOrder));
    order = static_cast<std::size_t>(n);
  }

  std::vector<Elem> table;
  table.reserve(order * order);
  for (std::size_t r = 0; r < order; ++r) {
    if (!next_line())
      throw fail("unexpected end of input, expected row " + std::to_string(r));
    std::istringstream row(line);
    std::string tok;
    std::size_t count = 0;
    while (row >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::logic_error&) {
        throw fail("not an integer: \"" + tok + "\"");
      }
      if (used != tok.size()) throw fail("not an integer: \"" + tok + "\"");
      if (v < 0 || static_cast<unsigned long long>(v) >= order)
        throw fail("index " + tok + " out of range");
      table.push_back(static_cast<Elem>(v));
      ++count;
    }
    if (count != order)
      throw fail("row has " + std::to_string(count) + " entries, expected " +
                 std::to_string(order));
  }

  std::vector<std::string> labels;
  while (next_line()) {
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line != "labels") throw fail("expected \"labels\" or end of input");
    while (labels.size() < order) {
      if (!next_line())
        throw fail("expected " + std::to_string(order) + " labels");
      labels.push_back(line);
    }
    while (next_line())
      if (line.find_first_not_of(" \t") != std::string::npos)
        throw fail("trailing content after labels");
    break;
  }
  return FiniteGroup::from_table(order, std::move(table), std::move(labels));
}

inline FiniteGroup read_cayley_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_cayley(in);
}

inline void write_cayley(std::ostream& out, const FiniteGroup& g) {
  const std::size_t n = g.order();
  out << "order " << n << '\n';
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (c) out << ' ';
      out << g.mul(static_cast<Elem>(r), static_cast<Elem>(c));
    }
    out << '\n';
  }
  out << "labels\n";
  for (const auto& l : g.labels()) out << l << '\n';
}

inline std::string to_cayley_text(const FiniteGroup& g) {
  std::ostringstream out;
  write_cayley(out, g);
  return out.str();
}

}  // namespace neb

#endif  // NEB_CAYLEY_IO_HPP
