#ifndef NEB_PHASE_HPP
#define NEB_PHASE_HPP

// Exact arithmetic on roots of unity.
//
// A PhaseRational q in [0,1) stands for the scalar e^{2 pi i q}; products of
// scalars become sums of fractions modulo 1. A CyclotomicSum is a finite
// integer combination of such scalars, and sum_is_zero decides exactly
// whether it vanishes by testing divisibility by the cyclotomic polynomial.

#include <algorithm>
#include <cmath>
#include <cctype>
#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "neb/errors.hpp"

namespace neb {

/// Largest accepted denominator; bounds the degree of the polynomials used
/// by the exact zero test.
inline constexpr std::int64_t kMaxPhaseDenominator = std::int64_t{1} << 20;

class PhaseRational {
 public:
  constexpr PhaseRational() = default;

  PhaseRational(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw ValidationError("phase denominator must be positive");
    if (den > kMaxPhaseDenominator)
      throw ValidationError("phase denominator " + std::to_string(den) +
                            " exceeds 2^20");
    num %= den;
    if (num < 0) num += den;
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr bool is_one() const { return num_ == 0; }

  /// Complex conjugate, i.e. the multiplicative inverse.
  PhaseRational inverse() const { return PhaseRational(den_ - num_, den_); }

  /// Multiplicative order of the root of unity.
  constexpr std::int64_t order() const { return den_; }

  PhaseRational pow(std::int64_t e) const {
    const std::int64_t r = ((e % den_) + den_) % den_;
    return PhaseRational((num_ * r) % den_, den_);
  }

  std::complex<double> value() const {
    const long double angle = 2.0L * 3.14159265358979323846264338327950288L *
                              static_cast<long double>(num_) /
                              static_cast<long double>(den_);
    return {static_cast<double>(std::cos(angle)),
            static_cast<double>(std::sin(angle))};
  }

  std::string to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "num/den" (a bare integer means den = 1). Accepts unreduced
  /// input and reduces it.
  static PhaseRational parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
      text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
      text.remove_suffix(1);
    const auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos) {
        return PhaseRational(std::stoll(std::string(text)), 1);
      }
      std::size_t used = 0;
      const std::string n(text.substr(0, slash));
      const std::string d(text.substr(slash + 1));
      const auto nv = std::stoll(n, &used);
      if (used != n.size()) throw ParseError("bad phase numerator");
      const auto dv = std::stoll(d, &used);
      if (used != d.size() || dv <= 0) throw ParseError("bad phase denominator in \"" + std::string(text) + "\"");
      return PhaseRational(nv, dv);
    } catch (const std::logic_error&) {
      throw ParseError("malformed phase \"" + std::string(text) + "\"");
    }
  }

  friend constexpr auto operator<=>(const PhaseRational&,
                                    const PhaseRational&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Product of roots of unity: fraction addition modulo 1.
inline PhaseRational phase_mul(PhaseRational a, PhaseRational b) {
  const std::int64_t g = std::gcd(a.den(), b.den());
  const std::int64_t den = a.den() / g * b.den();
  if (den > kMaxPhaseDenominator)
    throw ValidationError("phase product denominator exceeds 2^20");
  return PhaseRational(a.num() * (den / a.den()) + b.num() * (den / b.den()),
                       den);
}

inline PhaseRational operator*(PhaseRational a, PhaseRational b) {
  return phase_mul(a, b);
}

/// Integer polynomial, coefficients from x^0 upward.
using IntPoly = std::vector<std::int64_t>;

namespace detail {

inline void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

/// In-place remainder modulo a monic polynomial.
inline void poly_rem_monic(IntPoly& p, const IntPoly& m) {
  const std::size_t dm = m.size() - 1;
  for (std::size_t i = p.size(); i-- > dm;) {
    const std::int64_t c = p[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dm; ++j) p[i - dm + j] -= c * m[j];
  }
  if (p.size() > dm) p.resize(dm);
  trim(p);
}

/// Exact quotient by a monic divisor; throws if the division is not exact.
inline IntPoly poly_div_monic(IntPoly p, const IntPoly& m) {
  const std::size_t dm = m.size() - 1;
  if (p.size() <= dm) throw Error("polynomial division: degree too small");
  IntPoly q(p.size() - dm, 0);
  for (std::size_t i = p.size(); i-- > dm;) {
    const std::int64_t c = p[i];
    q[i - dm] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dm; ++j) p[i - dm + j] -= c * m[j];
  }
  p.resize(dm);
  trim(p);
  if (!p.empty()) throw Error("polynomial division left a remainder");
  return q;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

class CyclotomicCache {
 public:
  static CyclotomicCache& instance() {
    static CyclotomicCache cache;
    return cache;
  }

  std::shared_ptr<const IntPoly> get(std::int64_t d) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = polys_.find(d); it != polys_.end()) return it->second;
    }
    IntPoly p(static_cast<std::size_t>(d) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(d)] = 1;
    for (std::int64_t e : divisors(d)) {
      if (e == d) break;
      p = poly_div_monic(std::move(p), *get(e));
    }
    auto result = std::make_shared<const IntPoly>(std::move(p));
    std::lock_guard lock(mutex_);
    return polys_.emplace(d, std::move(result)).first->second;
  }

  /// Row a holds x^a mod Phi_d for 0 <= a < d, each padded to deg Phi_d.
  std::shared_ptr<const std::vector<IntPoly>> power_table(std::int64_t d) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = tables_.find(d); it != tables_.end()) return it->second;
    }
    const auto phi = get(d);
    const std::size_t deg = phi->size() - 1;
    std::vector<IntPoly> rows(static_cast<std::size_t>(d), IntPoly(deg, 0));
    IntPoly cur(deg, 0);
    cur[0] = 1;
    for (std::size_t a = 0; a < rows.size(); ++a) {
      rows[a] = cur;
      // cur <- x * cur mod phi
      const std::int64_t top = cur[deg - 1];
      for (std::size_t j = deg - 1; j > 0; --j) cur[j] = cur[j - 1];
      cur[0] = 0;
      if (top != 0)
        for (std::size_t j = 0; j < deg; ++j) cur[j] -= top * (*phi)[j];
    }
    auto result =
        std::make_shared<const std::vector<IntPoly>>(std::move(rows));
    std::lock_guard lock(mutex_);
    return tables_.emplace(d, std::move(result)).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::int64_t, std::shared_ptr<const IntPoly>> polys_;
  std::map<std::int64_t, std::shared_ptr<const std::vector<IntPoly>>> tables_;
};

inline constexpr std::int64_t kPowerTableLimit = 1024;

}  // namespace detail

/// The D-th cyclotomic polynomial, computed as (x^D - 1) divided by the
/// product of Phi_d over the proper divisors d of D.
inline IntPoly cyclotomic_polynomial(std::int64_t d) {
  if (d < 1) throw PreconditionError("cyclotomic_polynomial: D must be >= 1");
  if (d > kMaxPhaseDenominator)
    throw ValidationError("cyclotomic_polynomial: D exceeds 2^20");
  return *detail::CyclotomicCache::instance().get(d);
}

/// Finite integer combination of roots of unity, kept in canonical form:
/// terms sorted by phase, equal phases merged, zero coefficients dropped.
class CyclotomicSum {
 public:
  struct Term {
    std::int64_t coeff;
    PhaseRational phase;
    friend bool operator==(const Term&, const Term&) = default;
  };

  CyclotomicSum() = default;

  /// The integer c times the scalar 1.
  static CyclotomicSum integer(std::int64_t c) {
    CyclotomicSum s;
    s.add(c, PhaseRational{});
    return s;
  }

  static CyclotomicSum from_terms(std::vector<Term> terms) {
    CyclotomicSum s;
    s.terms_ = std::move(terms);
    s.canonicalize();
    return s;
  }

  void add(std::int64_t coeff, PhaseRational phase) {
    if (coeff == 0) return;
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), phase,
        [](const Term& t, const PhaseRational& p) { return t.phase < p; });
    if (it != terms_.end() && it->phase == phase) {
      it->coeff += coeff;
      if (it->coeff == 0) terms_.erase(it);
    } else {
      terms_.insert(it, Term{coeff, phase});
    }
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  CyclotomicSum conj() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.coeff, t.phase.inverse()});
    return from_terms(std::move(out));
  }

  friend CyclotomicSum operator+(const CyclotomicSum& a,
                                 const CyclotomicSum& b) {
    std::vector<Term> out = a.terms_;
    out.insert(out.end(), b.terms_.begin(), b.terms_.end());
    return from_terms(std::move(out));
  }

  friend CyclotomicSum operator-(const CyclotomicSum& a,
                                 const CyclotomicSum& b) {
    std::vector<Term> out = a.terms_;
    for (const auto& t : b.terms_) out.push_back({-t.coeff, t.phase});
    return from_terms(std::move(out));
  }

  friend CyclotomicSum operator*(const CyclotomicSum& a,
                                 const CyclotomicSum& b) {
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_)
        out.push_back({x.coeff * y.coeff, x.phase * y.phase});
    return from_terms(std::move(out));
  }

  friend bool operator==(const CyclotomicSum&, const CyclotomicSum&) = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
      if (!s.empty()) s += " + ";
      s += std::to_string(t.coeff) + "*e(" + t.phase.to_string() + ")";
    }
    return s;
  }

 private:
  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.phase < b.phase; });
    std::vector<Term> merged;
    for (const auto& t : terms_) {
      if (!merged.empty() && merged.back().phase == t.phase)
        merged.back().coeff += t.coeff;
      else
        merged.push_back(t);
    }
    std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
    terms_ = std::move(merged);
  }

  std::vector<Term> terms_;
};

/// Floating-point evaluation; a cross-check only, never a verdict.
inline std::complex<double> sum_eval(const CyclotomicSum& s) {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& t : s.terms()) acc += static_cast<double>(t.coeff) * t.phase.value();
  return acc;
}

/// Exact test for sum c_j e^{2 pi i q_j} == 0.
///
/// With D the lcm of the denominators, the sum equals P(zeta_D) for
/// P(x) = sum c_j x^{q_j D}. Since Phi_D is the minimal polynomial of
/// zeta_D, the sum vanishes iff Phi_D divides P.
inline bool sum_is_zero(const CyclotomicSum& s) {
  const auto& terms = s.terms();
  if (terms.empty()) return true;
  std::int64_t d = 1;
  for (const auto& t : terms) {
    d = std::lcm(d, t.phase.den());
    if (d > kMaxPhaseDenominator)
      throw ValidationError("sum_is_zero: common denominator exceeds 2^20");
  }
  if (d == 1) return false;  // a single merged nonzero term at phase 0

  auto& cache = detail::CyclotomicCache::instance();
  if (d <= detail::kPowerTableLimit) {
    const auto table = cache.power_table(d);
    IntPoly rem((*table)[0].size(), 0);
    for (const auto& t : terms) {
      const auto a = t.phase.num() * (d / t.phase.den());
      const auto& row = (*table)[static_cast<std::size_t>(a)];
      for (std::size_t j = 0; j < rem.size(); ++j) rem[j] += t.coeff * row[j];
    }
    return std::all_of(rem.begin(), rem.end(),
                       [](std::int64_t c) { return c == 0; });
  }
  IntPoly p(static_cast<std::size_t>(d), 0);
  for (const auto& t : terms)
    p[static_cast<std::size_t>(t.phase.num() * (d / t.phase.den()))] += t.coeff;
  detail::trim(p);
  detail::poly_rem_monic(p, *cache.get(d));
  return p.empty();
}

}  // namespace neb

#endif  // NEB_PHASE_HPP
