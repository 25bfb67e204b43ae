#ifndef NEB_CATALOGUE_HPP
#define NEB_CATALOGUE_HPP

// Parametric group families and batch classification.
//
// Descriptor syntax: "family:params", e.g. "hn:5", "dihedral:16",
// "abelian:2x2x3", "heisenberg:4", "quaternion:16", "cyclic:6",
// "extraspecial:2+", "extraspecial:2-", "extraspecial:3". Direct products
// join descriptors with '*': "dihedral:8*cyclic:3".

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "neb/affine.hpp"
#include "neb/cayley_io.hpp"
#include "neb/central_type.hpp"
#include "neb/errors.hpp"
#include "neb/group.hpp"
#include "neb/monomial.hpp"
#include "neb/parallel.hpp"

namespace neb {

struct FamilyDescriptor {
  enum class Family {
    cyclic,
    abelian_product,
    dihedral,
    quaternion_generalized,
    heisenberg_mod_m,
    extraspecial_p3,
    hn,
    direct_product
  };

  Family family = Family::cyclic;
  std::vector<std::int64_t> params;
  char sign = '+';                           // extraspecial type
  std::vector<FamilyDescriptor> factors;     // direct_product only

  std::string to_string() const {
    auto join = [&](std::string_view sep) {
      std::string s;
      for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(params[i]);
      }
      return s;
    };
    switch (family) {
      case Family::cyclic: return "cyclic:" + join("");
      case Family::abelian_product: return "abelian:" + join("x");
      case Family::dihedral: return "dihedral:" + join("");
      case Family::quaternion_generalized: return "quaternion:" + join("");
      case Family::heisenberg_mod_m: return "heisenberg:" + join("");
      case Family::extraspecial_p3: return "extraspecial:" + join("") + sign;
      case Family::hn: return "hn:" + join("");
      case Family::direct_product: {
        std::string s;
        for (std::size_t i = 0; i < factors.size(); ++i) {
          if (i) s += '*';
          s += factors[i].to_string();
        }
        return s;
      }
    }
    return {};
  }
};

namespace detail {

inline std::int64_t parse_int(std::string_view text, std::string_view what) {
  if (text.empty() || text.size() > 9 ||
      !std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("bad " + std::string(what) + " parameter \"" + std::string(text) + "\"");
  return std::stoll(std::string(text));
}

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace detail

inline FamilyDescriptor parse_descriptor(std::string_view text) {
  using F = FamilyDescriptor::Family;
  FamilyDescriptor d;
  if (text.find('*') != std::string_view::npos) {
    d.family = F::direct_product;
    std::size_t start = 0;
    for (;;) {
      const auto star = text.find('*', start);
      d.factors.push_back(parse_descriptor(text.substr(start, star - start)));
      if (star == std::string_view::npos) break;
      start = star + 1;
    }
    return d;
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("descriptor \"" + std::string(text) + "\" lacks ':'");
  const auto name = text.substr(0, colon);
  auto arg = text.substr(colon + 1);
  if (name == "cyclic") {
    d.family = F::cyclic;
  } else if (name == "abelian") {
    d.family = F::abelian_product;
    std::size_t start = 0;
    for (;;) {
      const auto x = arg.find('x', start);
      d.params.push_back(detail::parse_int(arg.substr(start, x - start), "abelian"));
      if (x == std::string_view::npos) break;
      start = x + 1;
    }
    for (auto m : d.params)
      if (m < 1) throw ValidationError("abelian factors must be >= 1");
    return d;
  } else if (name == "dihedral") {
    d.family = F::dihedral;
  } else if (name == "quaternion") {
    d.family = F::quaternion_generalized;
  } else if (name == "heisenberg") {
    d.family = F::heisenberg_mod_m;
  } else if (name == "hn") {
    d.family = F::hn;
  } else if (name == "extraspecial") {
    d.family = F::extraspecial_p3;
    if (!arg.empty() && (arg.back() == '+' || arg.back() == '-')) {
      d.sign = arg.back();
      arg.remove_suffix(1);
    }
  } else {
    throw ParseError("unknown group family \"" + std::string(name) + "\"");
  }
  d.params.push_back(detail::parse_int(arg, name));

  const auto p = d.params[0];
  switch (d.family) {
    case F::cyclic:
      if (p < 1) throw ValidationError("cyclic:n requires n >= 1");
      break;
    case F::dihedral:
      if (p < 2 || p % 2 != 0) throw ValidationError("dihedral:N requires even N >= 2");
      break;
    case F::quaternion_generalized:
      if (p < 8 || p % 4 != 0)
        throw ValidationError("quaternion:N requires N >= 8 divisible by 4");
      break;
    case F::heisenberg_mod_m:
      if (p < 2) throw ValidationError("heisenberg:m requires m >= 2");
      break;
    case F::hn:
      if (p < 3 || p > 8) throw ValidationError("hn:n requires 3 <= n <= 8");
      break;
    case F::extraspecial_p3:
      if (!detail::is_prime(p)) throw ValidationError("extraspecial:p requires p prime");
      break;
    default:
      break;
  }
  return d;
}

namespace detail {

struct Triple {
  std::int64_t x = 0, y = 0, z = 0;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct Pair {
  std::int64_t a = 0, b = 0;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// Z_m x| Z_k with (a1, b1)(a2, b2) = (a1 + u^b1 a2, b1 + b2), u a unit mod m.
inline FiniteGroup metacyclic(std::int64_t m, std::int64_t k, std::int64_t u,
                              std::size_t max_order) {
  auto power = [&](std::int64_t b) {
    std::int64_t r = 1 % m;
    for (std::int64_t i = 0; i < b; ++i) r = r * u % m;
    return r;
  };
  return generate_group(
             Pair{}, {Pair{1 % m, 0}, Pair{0, 1 % k}},
             [&](const Pair& p, const Pair& q) {
               return Pair{(p.a + power(p.b) * q.a) % m, (p.b + q.b) % k};
             },
             [](const Pair& p) {
               return "r^" + std::to_string(p.a) + " s^" + std::to_string(p.b);
             },
             max_order)
      .group;
}

inline FiniteGroup heisenberg(std::int64_t m, std::size_t max_order) {
  return generate_group(
             Triple{}, {Triple{1 % m, 0, 0}, Triple{0, 1 % m, 0}},
             [m](const Triple& p, const Triple& q) {
               return Triple{(p.x + q.x) % m, (p.y + q.y) % m, (p.z + q.z + p.x * q.y) % m};
             },
             [](const Triple& p) {
               return "[" + std::to_string(p.x) + "," + std::to_string(p.y) + "," +
                      std::to_string(p.z) + "]";
             },
             max_order)
      .group;
}

/// Generated by diag(z, z^{-1}) with z a primitive (N/2)-th root of unity
/// and [[0,-1],[1,0]], as 2x2 monomial matrices.
inline FiniteGroup quaternion(std::int64_t order, std::size_t max_order) {
  const std::int64_t half = order / 2;
  const MonomialMatrix a =
      MonomialMatrix::diagonal({PhaseRational(1, half), PhaseRational(half - 1, half)});
  const MonomialMatrix b({1, 0}, {PhaseRational{}, PhaseRational(1, 2)});
  return generate_group(
             MonomialMatrix::identity(2), {a, b},
             [](const MonomialMatrix& x, const MonomialMatrix& y) { return x * y; },
             [](const MonomialMatrix& x) {
               return "[" + std::to_string(x.perm()[0]) + ":" + x.phases()[0].to_string() +
                      " " + std::to_string(x.perm()[1]) + ":" + x.phases()[1].to_string() +
                      "]";
             },
             max_order)
      .group;
}

inline void check_cube(std::int64_t p, std::size_t max_order) {
  if (static_cast<long double>(p) * p * p > static_cast<long double>(max_order))
    throw ValidationError("group order " + std::to_string(p) + "^3 exceeds bound " +
                          std::to_string(max_order));
}

inline void check_order(std::int64_t order, std::size_t max_order) {
  if (order < 1 || static_cast<std::uint64_t>(order) > max_order)
    throw ValidationError("group order " + std::to_string(order) + " exceeds bound " +
                          std::to_string(max_order));
}

}  // namespace detail

/// Cayley table of the described group; deterministic for equal descriptors.
inline FiniteGroup build(const FamilyDescriptor& d,
                         std::size_t max_order = kDefaultMaxOrder) {
  using F = FamilyDescriptor::Family;
  const std::int64_t p = d.params.empty() ? 0 : d.params[0];
  switch (d.family) {
    case F::cyclic:
      detail::check_order(p, max_order);
      return cyclic_group(static_cast<std::size_t>(p));
    case F::abelian_product: {
      std::int64_t total = 1;
      for (auto m : d.params) {
        total *= m;
        detail::check_order(total, max_order);
      }
      FiniteGroup g = cyclic_group(static_cast<std::size_t>(d.params[0]));
      for (std::size_t i = 1; i < d.params.size(); ++i)
        g = direct_product(g, cyclic_group(static_cast<std::size_t>(d.params[i])), max_order);
      return g;
    }
    case F::dihedral:
      detail::check_order(p, max_order);
      return detail::metacyclic(p / 2, 2, p / 2 - 1, max_order);
    case F::quaternion_generalized:
      detail::check_order(p, max_order);
      return detail::quaternion(p, max_order);
    case F::heisenberg_mod_m:
      detail::check_cube(p, max_order);
      return detail::heisenberg(p, max_order);
    case F::extraspecial_p3:
      if (p == 2) return d.sign == '+' ? detail::metacyclic(4, 2, 3, max_order)
                                       : detail::quaternion(8, max_order);
      detail::check_cube(p, max_order);
      return d.sign == '+' ? detail::heisenberg(p, max_order)
                           : detail::metacyclic(p * p, p, 1 + p, max_order);
    case F::hn:
      return hn_group(static_cast<int>(p), max_order).group;
    case F::direct_product: {
      FiniteGroup g = build(d.factors.at(0), max_order);
      for (std::size_t i = 1; i < d.factors.size(); ++i)
        g = direct_product(g, build(d.factors[i], max_order), max_order);
      return g;
    }
  }
  throw Error("unhandled family");
}

inline FiniteGroup build(std::string_view descriptor,
                         std::size_t max_order = kDefaultMaxOrder) {
  return build(parse_descriptor(descriptor), max_order);
}

/// Groups used by the consistency suites and `scan --builtin`.
inline std::vector<std::string> builtin_catalogue() {
  return {
      "cyclic:1",          "cyclic:2",          "cyclic:3",
      "cyclic:4",          "cyclic:5",          "cyclic:6",
      "cyclic:8",          "cyclic:9",          "cyclic:12",
      "cyclic:16",         "abelian:2x3",       "abelian:3x4",
      "abelian:2x2",       "abelian:2x4",       "abelian:3x3",
      "abelian:2x2x2",     "abelian:4x4",       "abelian:2x2x3",
      "dihedral:6",        "dihedral:8",        "dihedral:10",
      "dihedral:12",       "dihedral:16",       "dihedral:18",
      "dihedral:20",       "dihedral:24",       "dihedral:32",
      "dihedral:64",       "quaternion:8",      "quaternion:12",
      "quaternion:16",     "quaternion:24",     "quaternion:32",
      "heisenberg:2",      "heisenberg:3",      "heisenberg:4",
      "heisenberg:5",      "extraspecial:2+",   "extraspecial:2-",
      "extraspecial:3+",   "extraspecial:3-",   "extraspecial:5-",
      "hn:3",              "hn:4",              "hn:5",
      "dihedral:8*cyclic:3",       "quaternion:8*cyclic:3",
      "dihedral:6*cyclic:2",       "dihedral:8*cyclic:5",
      "heisenberg:3*cyclic:2",     "heisenberg:3*cyclic:4",
      "extraspecial:3-*cyclic:2",  "dihedral:8*dihedral:8",
      "quaternion:8*cyclic:2",     "dihedral:6*dihedral:6",
  };
}

struct ScanEntry {
  std::string name;
  std::optional<ClassificationReport> report;
  std::optional<std::string> error;
};

struct ScanSummary {
  std::vector<ScanEntry> entries;
  std::size_t abstract_error_groups = 0;
  std::size_t nonabelian_index_groups = 0;  // among the abstract error groups
  std::size_t errors = 0;
};

/// A family descriptor, or a path to a Cayley-table file.
inline FiniteGroup load_group(const std::string& source,
                              std::size_t max_order = kDefaultMaxOrder) {
  if (std::filesystem::exists(source)) {
    auto g = read_cayley_file(source);
    if (g.order() > max_order)
      throw ValidationError("group order exceeds bound " + std::to_string(max_order));
    return g;
  }
  return build(source, max_order);
}

/// Classifies every source; a failing source is recorded and skipped.
inline ScanSummary scan(const std::vector<std::string>& sources, unsigned jobs = 1,
                        std::size_t max_order = kDefaultMaxOrder) {
  ScanSummary s;
  s.entries.resize(sources.size());
  parallel_for(sources.size(), jobs, [&](std::size_t i) {
    auto& e = s.entries[i];
    e.name = sources[i];
    try {
      e.report = classify(load_group(sources[i], max_order));
    } catch (const std::exception& ex) {
      e.error = ex.what();
    }
  });
  for (const auto& e : s.entries) {
    if (e.error) {
      ++s.errors;
      continue;
    }
    if (e.report->abstract_error_group) {
      ++s.abstract_error_groups;
      if (!e.report->index_group_abelian) ++s.nonabelian_index_groups;
    }
  }
  return s;
}

}  // namespace neb

#endif  // NEB_CATALOGUE_HPP
