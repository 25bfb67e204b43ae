#ifndef NEB_ERROR_BASIS_HPP
#define NEB_ERROR_BASIS_HPP

// Error bases indexed by a finite group, exact verification of the nice
// error basis axioms, and factor system extraction.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "neb/errors.hpp"
#include "neb/group.hpp"
#include "neb/monomial.hpp"
#include "neb/parallel.hpp"
#include "neb/phase.hpp"

namespace neb {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr std::size_t kMaxBasisDegree = 256;

/// A group G together with one matrix rho(g) per element, in element order.
class ErrorBasis {
 public:
  ErrorBasis(FiniteGroup group, std::vector<MonomialMatrix> matrices)
      : group_(std::move(group)), matrices_(std::move(matrices)) {
    check_count(std::get<0>(matrices_).size());
  }

  ErrorBasis(FiniteGroup group, std::vector<DenseMatrix> matrices,
             double tolerance = kDefaultTolerance)
      : group_(std::move(group)), matrices_(std::move(matrices)), tolerance_(tolerance) {
    check_count(std::get<1>(matrices_).size());
  }

  const FiniteGroup& index_group() const { return group_; }
  bool is_exact() const { return matrices_.index() == 0; }
  double tolerance() const { return tolerance_; }

  std::size_t degree() const {
    return is_exact() ? monomial().front().dim() : dense().front().dim;
  }

  const std::vector<MonomialMatrix>& monomial() const {
    if (!is_exact()) throw PreconditionError("basis holds dense matrices");
    return std::get<0>(matrices_);
  }
  const std::vector<DenseMatrix>& dense() const {
    if (is_exact()) throw PreconditionError("basis holds monomial matrices");
    return std::get<1>(matrices_);
  }

  DenseMatrix dense_at(Elem g) const {
    return is_exact() ? DenseMatrix(monomial()[g]) : dense()[g];
  }

 private:
  void check_count(std::size_t n) const {
    if (n == 0) throw ValidationError("error basis needs at least one matrix");
    if (n != group_.order())
      throw ValidationError("error basis has " + std::to_string(n) +
                            " matrices for a group of order " +
                            std::to_string(group_.order()));
  }

  FiniteGroup group_;
  std::variant<std::vector<MonomialMatrix>, std::vector<DenseMatrix>> matrices_;
  double tolerance_ = kDefaultTolerance;
};

struct ConditionResult {
  ConditionResult() = default;
  ConditionResult(std::string n, bool p = true, std::size_t f = 0,
                  std::vector<std::string> w = {})
      : name(std::move(n)), pass(p), failures(f), witnesses(std::move(w)) {}

  std::string name;
  bool pass = true;
  std::size_t failures = 0;
  std::vector<std::string> witnesses;  // first few, in deterministic order
};

struct NiceReport {
  bool exact = true;
  double tolerance = 0.0;
  std::size_t degree = 0;
  std::size_t group_order = 0;
  std::vector<ConditionResult> conditions;

  bool pass() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const ConditionResult& c) { return c.pass; });
  }
  const ConditionResult& condition(std::string_view name) const {
    for (const auto& c : conditions)
      if (c.name == name) return c;
    throw Error("no condition named " + std::string(name));
  }
};

inline constexpr std::size_t kMaxWitnesses = 8;

namespace detail {

/// Per-row failure collection merged in row order.
struct RowFailures {
  std::size_t count = 0;
  std::vector<std::string> witnesses;
  void add(std::string w) {
    ++count;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
  }
};

inline void merge_rows(ConditionResult& c, const std::vector<RowFailures>& rows) {
  for (const auto& r : rows) {
    c.failures += r.count;
    for (const auto& w : r.witnesses)
      if (c.witnesses.size() < kMaxWitnesses) c.witnesses.push_back(w);
  }
  c.pass = c.failures == 0;
}

inline std::string pair_label(const FiniteGroup& g, Elem a, Elem b) {
  return "(" + g.label(a) + ", " + g.label(b) + ")";
}

/// Monomial matrices with all phases over one common denominator.
struct IntegerMonomials {
  std::int64_t den = 1;
  std::size_t dim = 0;
  std::vector<std::vector<std::uint32_t>> perm;
  std::vector<std::vector<std::int64_t>> phase;  // numerators mod den

  explicit IntegerMonomials(const std::vector<MonomialMatrix>& ms) {
    for (const auto& m : ms)
      for (const auto& p : m.phases()) {
        den = std::lcm(den, p.den());
        if (den > kMaxPhaseDenominator)
          throw ValidationError("basis phases need a denominator above 2^20");
      }
    dim = ms.front().dim();
    for (const auto& m : ms) {
      perm.push_back(m.perm());
      std::vector<std::int64_t> ph;
      for (const auto& p : m.phases()) ph.push_back(p.num() * (den / p.den()));
      phase.push_back(std::move(ph));
    }
  }

  PhaseRational rational(std::int64_t num) const {
    return PhaseRational(((num % den) + den) % den, den);
  }

  /// Scalar c with rho(a) rho(b) = e^{2 pi i c/den} rho(ab), if any.
  std::optional<std::int64_t> product_scalar(Elem a, Elem b, Elem ab) const {
    const auto& pa = perm[a];
    const auto& pb = perm[b];
    const auto& pab = perm[ab];
    std::optional<std::int64_t> c;
    for (std::size_t j = 0; j < dim; ++j) {
      if (pa[pb[j]] != pab[j]) return std::nullopt;
      std::int64_t d = (phase[b][j] + phase[a][pb[j]] - phase[ab][j]) % den;
      if (d < 0) d += den;
      if (!c) c = d;
      else if (*c != d) return std::nullopt;
    }
    return c.value_or(0);
  }

  /// tr(rho(a)^dagger rho(b)) as an exact sum.
  CyclotomicSum inner_trace(Elem a, Elem b) const {
    std::vector<CyclotomicSum::Term> terms;
    for (std::size_t j = 0; j < dim; ++j)
      if (perm[a][j] == perm[b][j]) terms.push_back({1, rational(phase[b][j] - phase[a][j])});
    return CyclotomicSum::from_terms(std::move(terms));
  }

  CyclotomicSum trace(Elem a) const {
    std::vector<CyclotomicSum::Term> terms;
    for (std::size_t j = 0; j < dim; ++j)
      if (perm[a][j] == j) terms.push_back({1, rational(phase[a][j])});
    return CyclotomicSum::from_terms(std::move(terms));
  }

  bool is_scalar(Elem a) const {
    for (std::size_t j = 0; j < dim; ++j)
      if (perm[a][j] != j || phase[a][j] != phase[a][0]) return false;
    return true;
  }
};

inline NiceReport verify_exact(const ErrorBasis& e, unsigned jobs) {
  const auto& g = e.index_group();
  const auto& ms = e.monomial();
  const std::size_t n = e.degree();
  const std::size_t order = g.order();
  NiceReport rep;
  rep.exact = true;
  rep.degree = n;
  rep.group_order = order;

  ConditionResult degree{"degree"};
  if (n * n != order) {
    degree.pass = false;
    degree.failures = 1;
    degree.witnesses.push_back("degree " + std::to_string(n) + " squared != |G| = " +
                               std::to_string(order));
  }
  for (std::size_t x = 0; x < order; ++x)
    if (ms[x].dim() != n) {
      degree.pass = false;
      ++degree.failures;
      if (degree.witnesses.size() < kMaxWitnesses)
        degree.witnesses.push_back(g.label(static_cast<Elem>(x)) + " has dimension " +
                                   std::to_string(ms[x].dim()));
    }
  if (!degree.pass) {
    // Remaining checks need a common dimension.
    rep.conditions.push_back(std::move(degree));
    for (const char* name :
         {"identity", "unitary", "trace", "closure", "orthogonality", "faithful"})
      rep.conditions.push_back({name, false, 0, {"not evaluated: degree mismatch"}});
    return rep;
  }
  rep.conditions.push_back(std::move(degree));

  const IntegerMonomials im(ms);

  ConditionResult identity{"identity"};
  if (ms[0] != MonomialMatrix::identity(n)) {
    identity.pass = false;
    identity.failures = 1;
    identity.witnesses.push_back("rho(" + g.label(0) + ") is not the identity");
  }
  rep.conditions.push_back(std::move(identity));

  // Permutation plus unimodular phases is unitary by construction; the
  // constructor already rejected non-permutations.
  rep.conditions.push_back({"unitary", true, 0, {}});

  ConditionResult trace{"trace"};
  for (std::size_t x = 0; x < order; ++x) {
    auto t = im.trace(static_cast<Elem>(x));
    if (x == 0) t = t - CyclotomicSum::integer(static_cast<std::int64_t>(n));
    if (!sum_is_zero(t)) {
      ++trace.failures;
      if (trace.witnesses.size() < kMaxWitnesses)
        trace.witnesses.push_back("tr rho(" + g.label(static_cast<Elem>(x)) + ") = " +
                                  (x == 0 ? (t + CyclotomicSum::integer(
                                                     static_cast<std::int64_t>(n)))
                                                .to_string()
                                          : t.to_string()));
    }
  }
  trace.pass = trace.failures == 0;
  rep.conditions.push_back(std::move(trace));

  std::vector<detail::RowFailures> closure_rows(order), orth_rows(order);
  parallel_for(order, jobs, [&](std::size_t x) {
    const auto a = static_cast<Elem>(x);
    for (std::size_t y = 0; y < order; ++y) {
      const auto b = static_cast<Elem>(y);
      if (!im.product_scalar(a, b, g.mul(a, b)))
        closure_rows[x].add(pair_label(g, a, b));
      if (y < x) continue;
      auto t = im.inner_trace(a, b);
      if (x == y) t = t - CyclotomicSum::integer(static_cast<std::int64_t>(n));
      if (!sum_is_zero(t)) orth_rows[x].add(pair_label(g, a, b));
    }
  });
  ConditionResult closure{"closure"};
  merge_rows(closure, closure_rows);
  rep.conditions.push_back(std::move(closure));
  ConditionResult orth{"orthogonality"};
  merge_rows(orth, orth_rows);
  rep.conditions.push_back(std::move(orth));

  ConditionResult faithful{"faithful"};
  for (std::size_t x = 1; x < order; ++x)
    if (im.is_scalar(static_cast<Elem>(x))) {
      ++faithful.failures;
      if (faithful.witnesses.size() < kMaxWitnesses)
        faithful.witnesses.push_back("rho(" + g.label(static_cast<Elem>(x)) +
                                     ") is scalar");
    }
  faithful.pass = faithful.failures == 0;
  rep.conditions.push_back(std::move(faithful));
  return rep;
}

inline DenseMatrix dense_identity(std::size_t n) {
  return DenseMatrix(MonomialMatrix::identity(n));
}

inline NiceReport verify_dense(const ErrorBasis& e, unsigned jobs) {
  const auto& g = e.index_group();
  const auto& ms = e.dense();
  const double tol = e.tolerance();
  const std::size_t n = e.degree();
  const std::size_t order = g.order();
  const auto nd = static_cast<double>(n);
  NiceReport rep;
  rep.exact = false;
  rep.tolerance = tol;
  rep.degree = n;
  rep.group_order = order;

  ConditionResult degree{"degree"};
  if (n * n != order) {
    ++degree.failures;
    degree.witnesses.push_back("degree " + std::to_string(n) + " squared != |G| = " +
                               std::to_string(order));
  }
  for (std::size_t x = 0; x < order; ++x)
    if (ms[x].dim != n) {
      ++degree.failures;
      if (degree.witnesses.size() < kMaxWitnesses)
        degree.witnesses.push_back(g.label(static_cast<Elem>(x)) + " has dimension " +
                                   std::to_string(ms[x].dim));
    }
  degree.pass = degree.failures == 0;
  if (!degree.pass) {
    rep.conditions.push_back(std::move(degree));
    for (const char* name :
         {"identity", "unitary", "trace", "closure", "orthogonality", "faithful"})
      rep.conditions.push_back({name, false, 0, {"not evaluated: degree mismatch"}});
    return rep;
  }
  rep.conditions.push_back(std::move(degree));

  const DenseMatrix id = dense_identity(n);
  ConditionResult identity{"identity"};
  if (ms[0].distance(id) >= tol) {
    identity.failures = 1;
    identity.witnesses.push_back("rho(" + g.label(0) + ") is not the identity");
  }
  identity.pass = identity.failures == 0;
  rep.conditions.push_back(std::move(identity));

  ConditionResult unitary{"unitary"};
  for (std::size_t x = 0; x < order; ++x)
    if ((ms[x].adjoint() * ms[x]).distance(id) >= tol) {
      ++unitary.failures;
      if (unitary.witnesses.size() < kMaxWitnesses)
        unitary.witnesses.push_back("rho(" + g.label(static_cast<Elem>(x)) +
                                    ") is not unitary");
    }
  unitary.pass = unitary.failures == 0;
  rep.conditions.push_back(std::move(unitary));

  ConditionResult trace{"trace"};
  for (std::size_t x = 0; x < order; ++x) {
    const auto expected = x == 0 ? nd : 0.0;
    if (std::abs(ms[x].trace() - expected) >= tol) {
      ++trace.failures;
      if (trace.witnesses.size() < kMaxWitnesses)
        trace.witnesses.push_back("tr rho(" + g.label(static_cast<Elem>(x)) + ") != " +
                                  (x == 0 ? std::to_string(n) : "0"));
    }
  }
  trace.pass = trace.failures == 0;
  rep.conditions.push_back(std::move(trace));

  std::vector<DenseMatrix> adj;
  for (const auto& m : ms) adj.push_back(m.adjoint());
  std::vector<detail::RowFailures> closure_rows(order), orth_rows(order);
  parallel_for(order, jobs, [&](std::size_t x) {
    const auto a = static_cast<Elem>(x);
    for (std::size_t y = 0; y < order; ++y) {
      const auto b = static_cast<Elem>(y);
      const Elem ab = g.mul(a, b);
      const DenseMatrix p = ms[a] * ms[b];
      const auto c = (adj[ab] * p).trace() / nd;
      if (std::abs(std::abs(c) - 1.0) >= tol || p.distance(ms[ab], c) >= tol)
        closure_rows[x].add(pair_label(g, a, b));
      if (y < x) continue;
      const auto t = (adj[a] * ms[b]).trace();
      if (std::abs(t - (x == y ? nd : 0.0)) >= tol) orth_rows[x].add(pair_label(g, a, b));
    }
  });
  ConditionResult closure{"closure"};
  merge_rows(closure, closure_rows);
  rep.conditions.push_back(std::move(closure));
  ConditionResult orth{"orthogonality"};
  merge_rows(orth, orth_rows);
  rep.conditions.push_back(std::move(orth));

  ConditionResult faithful{"faithful"};
  for (std::size_t x = 1; x < order; ++x) {
    const auto c = ms[x].trace() / nd;
    if (std::abs(c) > tol && ms[x].distance(id, c) < tol) {
      ++faithful.failures;
      if (faithful.witnesses.size() < kMaxWitnesses)
        faithful.witnesses.push_back("rho(" + g.label(static_cast<Elem>(x)) +
                                     ") is scalar");
    }
  }
  faithful.pass = faithful.failures == 0;
  rep.conditions.push_back(std::move(faithful));
  return rep;
}

}  // namespace detail

/// Checks identity at 1, tr rho(g) = n delta_{g,1}, closure up to unimodular
/// scalars, unitarity, pairwise trace orthogonality and faithfulness.
/// Monomial bases are checked exactly; dense ones within the basis
/// tolerance. Failures are reported, never thrown.
inline NiceReport verify_nice(const ErrorBasis& e, unsigned jobs = 1) {
  return e.is_exact() ? detail::verify_exact(e, jobs) : detail::verify_dense(e, jobs);
}

/// Nearest root of unity e^{2 pi i p/q} with q <= max_den, if z lies within
/// tol of one.
inline std::optional<PhaseRational> nearest_root_of_unity(std::complex<double> z,
                                                          double tol,
                                                          std::int64_t max_den = 4096) {
  if (std::abs(std::abs(z) - 1.0) >= tol) return std::nullopt;
  double t = std::arg(z) / (2.0 * 3.14159265358979323846);
  if (t < 0) t += 1.0;
  for (std::int64_t q = 1; q <= max_den; ++q) {
    const auto p = static_cast<std::int64_t>(std::llround(t * static_cast<double>(q)));
    const PhaseRational cand(p, q);
    if (std::abs(z - cand.value()) < tol) return cand;
  }
  return std::nullopt;
}

/// omega(g, h) with rho(g) rho(h) = e^{2 pi i omega(g,h)} rho(gh).
class FactorSystem {
 public:
  FactorSystem(FiniteGroup group, std::vector<PhaseRational> omega)
      : group_(std::move(group)), omega_(std::move(omega)) {
    if (omega_.size() != group_.order() * group_.order())
      throw ValidationError("factor system table has the wrong size");
  }

  const FiniteGroup& group() const { return group_; }
  PhaseRational at(Elem g, Elem h) const { return omega_[std::size_t{g} * group_.order() + h]; }
  const std::vector<PhaseRational>& values() const { return omega_; }

  /// Order of the cyclic group generated by the values: lcm of denominators.
  std::int64_t value_order() const {
    std::int64_t d = 1;
    for (const auto& p : omega_) d = std::lcm(d, p.den());
    return d;
  }

  bool is_normalized() const {
    for (std::size_t x = 0; x < group_.order(); ++x)
      if (!at(0, static_cast<Elem>(x)).is_one() || !at(static_cast<Elem>(x), 0).is_one())
        return false;
    return true;
  }

 private:
  FiniteGroup group_;
  std::vector<PhaseRational> omega_;
};

struct CocycleWitness {
  Elem g, h, k;
};

/// Checks omega(g,h) omega(gh,k) = omega(g,hk) omega(h,k); exhaustive when
/// |G| <= exhaustive_limit, otherwise on `samples` seeded random triples.
inline std::optional<CocycleWitness> find_cocycle_violation(
    const FactorSystem& f, std::size_t exhaustive_limit = 256,
    std::size_t samples = 100000) {
  const auto& g = f.group();
  const std::size_t n = g.order();
  auto check = [&](Elem a, Elem b, Elem c) {
    return f.at(a, b) * f.at(g.mul(a, b), c) == f.at(a, g.mul(b, c)) * f.at(b, c);
  };
  if (n <= exhaustive_limit) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (!check(static_cast<Elem>(a), static_cast<Elem>(b), static_cast<Elem>(c)))
            return CocycleWitness{static_cast<Elem>(a), static_cast<Elem>(b),
                                  static_cast<Elem>(c)};
    return std::nullopt;
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto a = static_cast<Elem>(pick(rng));
    const auto b = static_cast<Elem>(pick(rng));
    const auto c = static_cast<Elem>(pick(rng));
    if (!check(a, b, c)) return CocycleWitness{a, b, c};
  }
  return std::nullopt;
}

/// Reads omega off the products rho(g) rho(h). Throws ValidationError with
/// the first pair whose product is not a scalar multiple of rho(gh).
inline FactorSystem extract_factor_system(const ErrorBasis& e) {
  const auto& g = e.index_group();
  const std::size_t order = g.order();
  std::vector<PhaseRational> omega(order * order);
  if (e.is_exact()) {
    for (const auto& m : e.monomial())
      if (m.dim() != e.degree())
        throw ValidationError("factor system: matrices of different dimensions");
    const detail::IntegerMonomials im(e.monomial());
    for (std::size_t x = 0; x < order; ++x)
      for (std::size_t y = 0; y < order; ++y) {
        const auto a = static_cast<Elem>(x), b = static_cast<Elem>(y);
        const auto c = im.product_scalar(a, b, g.mul(a, b));
        if (!c)
          throw ValidationError("factor system: rho" + detail::pair_label(g, a, b) +
                                " is not a scalar multiple of rho(gh)");
        omega[x * order + y] = im.rational(*c);
      }
  } else {
    const auto& ms = e.dense();
    for (const auto& m : ms)
      if (m.dim != e.degree())
        throw ValidationError("factor system: matrices of different dimensions");
    const auto nd = static_cast<double>(e.degree());
    for (std::size_t x = 0; x < order; ++x)
      for (std::size_t y = 0; y < order; ++y) {
        const auto a = static_cast<Elem>(x), b = static_cast<Elem>(y);
        const Elem ab = g.mul(a, b);
        const DenseMatrix p = ms[a] * ms[b];
        const auto c = (ms[ab].adjoint() * p).trace() / nd;
        const auto root = nearest_root_of_unity(c, e.tolerance());
        if (!root || p.distance(ms[ab], c) >= e.tolerance())
          throw ValidationError("factor system: rho" + detail::pair_label(g, a, b) +
                                " is not a root-of-unity multiple of rho(gh)");
        omega[x * order + y] = *root;
      }
  }
  FactorSystem f(g, std::move(omega));
  if (auto w = find_cocycle_violation(f))
    throw Error("factor system violates the cocycle identity at (" +
                g.label(w->g) + ", " + g.label(w->h) + ", " + g.label(w->k) + ")");
  return f;
}

/// The basis matrices as a sorted list; two monomial bases are equal up to
/// relabeling iff these lists coincide.
inline std::vector<MonomialMatrix> canonical_matrix_set(const ErrorBasis& e) {
  auto ms = e.monomial();
  std::sort(ms.begin(), ms.end());
  return ms;
}

inline bool equal_up_to_relabeling(const ErrorBasis& a, const ErrorBasis& b) {
  return a.is_exact() && b.is_exact() && canonical_matrix_set(a) == canonical_matrix_set(b);
}

}  // namespace neb

#endif  // NEB_ERROR_BASIS_HPP
