#ifndef NEB_TESTS_ORACLES_HPP
#define NEB_TESTS_ORACLES_HPP

// Brute-force reference computations. None of these reuse the library's
// algorithms: they work from the multiplication table or from plain complex
// arithmetic only.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "neb/group.hpp"
#include "neb/monomial.hpp"

namespace oracle {

using neb::Elem;
using neb::FiniteGroup;
using cd = std::complex<double>;

inline cd root(std::int64_t num, std::int64_t den) {
  const double a = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(a), std::sin(a)};
}

/// Schoolbook long division by a monic integer polynomial; returns the
/// remainder (coefficients low to high).
inline std::vector<std::int64_t> remainder(std::vector<std::int64_t> p,
                                           const std::vector<std::int64_t>& d) {
  const std::size_t dd = d.size() - 1;
  for (std::size_t i = p.size(); i-- > dd;) {
    const auto c = p[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) p[i - dd + j] -= c * d[j];
  }
  p.resize(std::min(p.size(), dd));
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

inline std::vector<std::int64_t> multiply(const std::vector<std::int64_t>& a,
                                          const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline int euler_phi(int n) {
  int count = 0;
  for (int k = 1; k <= n; ++k) count += std::gcd(k, n) == 1;
  return count;
}

/// Elements commuting with everything, by scanning all pairs.
inline std::set<Elem> center(const FiniteGroup& g) {
  std::set<Elem> z;
  for (Elem a = 0; a < g.order(); ++a) {
    bool central = true;
    for (Elem b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.insert(a);
  }
  return z;
}

inline Elem inverse(const FiniteGroup& g, Elem a) {
  for (Elem b = 0; b < g.order(); ++b)
    if (g.mul(a, b) == 0) return b;
  return 0;
}

/// Conjugacy class sizes, sorted, by conjugating with every element.
inline std::vector<std::size_t> class_sizes(const FiniteGroup& g) {
  std::vector<char> seen(g.order(), 0);
  std::vector<std::size_t> sizes;
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::set<Elem> cls;
    for (Elem y = 0; y < g.order(); ++y) cls.insert(g.mul(g.mul(inverse(g, y), x), y));
    for (auto c : cls) seen[c] = 1;
    sizes.push_back(cls.size());
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

inline std::size_t class_size(const FiniteGroup& g, Elem x) {
  std::set<Elem> cls;
  for (Elem y = 0; y < g.order(); ++y) cls.insert(g.mul(g.mul(inverse(g, y), x), y));
  return cls.size();
}

/// Closure of a set under multiplication.
inline std::set<Elem> closure(const FiniteGroup& g, std::set<Elem> s) {
  s.insert(0);
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<Elem> cur(s.begin(), s.end());
    for (auto a : cur)
      for (auto b : cur)
        if (s.insert(g.mul(a, b)).second) grew = true;
  }
  return s;
}

/// Subgroup generated by every commutator a^{-1} b^{-1} a b.
inline std::set<Elem> derived_subgroup(const FiniteGroup& g) {
  std::set<Elem> comms;
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b)
      comms.insert(g.mul(g.mul(inverse(g, a), inverse(g, b)), g.mul(a, b)));
  return closure(g, comms);
}

inline std::size_t element_order(const FiniteGroup& g, Elem a) {
  std::size_t k = 1;
  for (Elem p = a; p != 0; p = g.mul(p, a)) ++k;
  return k;
}

inline bool associative(const FiniteGroup& g) {
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b)
      for (Elem c = 0; c < g.order(); ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) return false;
  return true;
}

/// Dense complex matrix of a monomial matrix, built entry by entry.
using Dense = std::vector<std::vector<cd>>;

inline Dense dense(const neb::MonomialMatrix& m) {
  Dense d(m.dim(), std::vector<cd>(m.dim(), 0.0));
  for (std::size_t j = 0; j < m.dim(); ++j)
    d[m.perm()[j]][j] = root(m.phases()[j].num(), m.phases()[j].den());
  return d;
}

inline Dense matmul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense c(n, std::vector<cd>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0.0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline bool close(const Dense& a, const Dense& b, double tol = 1e-12) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (std::abs(a[i][j] - b[i][j]) > tol) return false;
  return true;
}

/// tr(A^dagger B)
inline cd inner(const Dense& a, const Dense& b) {
  cd s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) s += std::conj(a[i][j]) * b[i][j];
  return s;
}

/// If a = c * b for a scalar c, returns c.
inline std::optional<cd> scalar_ratio(const Dense& a, const Dense& b, double tol = 1e-9) {
  std::optional<cd> c;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (std::abs(b[i][j]) < tol) {
        if (std::abs(a[i][j]) > tol) return std::nullopt;
        continue;
      }
      const cd r = a[i][j] / b[i][j];
      if (!c) c = r;
      else if (std::abs(*c - r) > tol) return std::nullopt;
    }
  return c;
}

}  // namespace oracle

#endif  // NEB_TESTS_ORACLES_HPP
