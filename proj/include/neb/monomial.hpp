#ifndef NEB_MONOMIAL_HPP
#define NEB_MONOMIAL_HPP

// Exact monomial matrices with root-of-unity entries, and a dense complex
// matrix type used only for imported bases.

#include <algorithm>
#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "neb/errors.hpp"
#include "neb/phase.hpp"

namespace neb {

/// Column j holds e^{2 pi i phases[j]} in row perm[j]; all other entries
/// are zero. Always unitary.
class MonomialMatrix {
 public:
  MonomialMatrix() = default;
  MonomialMatrix(std::vector<std::uint32_t> perm, std::vector<PhaseRational> phases)
      : perm_(std::move(perm)), phases_(std::move(phases)) {
    if (perm_.size() != phases_.size())
      throw ValidationError("monomial matrix: perm and phases differ in length");
    std::vector<char> seen(perm_.size(), 0);
    for (auto p : perm_) {
      if (p >= perm_.size() || seen[p])
        throw ValidationError("monomial matrix: perm is not a permutation");
      seen[p] = 1;
    }
  }

  static MonomialMatrix identity(std::size_t dim) {
    std::vector<std::uint32_t> perm(dim);
    for (std::size_t i = 0; i < dim; ++i) perm[i] = static_cast<std::uint32_t>(i);
    return {std::move(perm), std::vector<PhaseRational>(dim)};
  }

  static MonomialMatrix diagonal(std::vector<PhaseRational> phases) {
    auto m = identity(phases.size());
    m.phases_ = std::move(phases);
    return m;
  }

  /// Cyclic shift e_j -> e_{j+step mod dim}.
  static MonomialMatrix shift(std::size_t dim, std::int64_t step = 1) {
    std::vector<std::uint32_t> perm(dim);
    const auto d = static_cast<std::int64_t>(dim);
    for (std::int64_t j = 0; j < d; ++j)
      perm[static_cast<std::size_t>(j)] =
          static_cast<std::uint32_t>(((j + step) % d + d) % d);
    return {std::move(perm), std::vector<PhaseRational>(dim)};
  }

  std::size_t dim() const { return perm_.size(); }
  const std::vector<std::uint32_t>& perm() const { return perm_; }
  const std::vector<PhaseRational>& phases() const { return phases_; }

  /// Returns a copy with one column's phase replaced.
  MonomialMatrix with_phase(std::size_t column, PhaseRational p) const {
    auto m = *this;
    m.phases_.at(column) = p;
    return m;
  }

  /// Inverse permutation, negated phases.
  MonomialMatrix adjoint() const {
    std::vector<std::uint32_t> perm(dim());
    std::vector<PhaseRational> phases(dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      perm[perm_[j]] = static_cast<std::uint32_t>(j);
      phases[perm_[j]] = phases_[j].inverse();
    }
    return {std::move(perm), std::move(phases)};
  }

  MonomialMatrix scaled(PhaseRational c) const {
    auto m = *this;
    for (auto& p : m.phases_) p = p * c;
    return m;
  }

  /// The common phase if this is a scalar multiple of the identity.
  std::optional<PhaseRational> scalar() const {
    for (std::size_t j = 0; j < dim(); ++j)
      if (perm_[j] != j || phases_[j] != phases_[0]) return std::nullopt;
    return dim() == 0 ? PhaseRational{} : phases_[0];
  }

  MonomialMatrix pow(std::int64_t e) const {
    MonomialMatrix base = e < 0 ? adjoint() : *this;
    if (e < 0) e = -e;
    MonomialMatrix r = identity(dim());
    while (e > 0) {
      if (e & 1) r = mono_mul(r, base);
      base = mono_mul(base, base);
      e >>= 1;
    }
    return r;
  }

  std::vector<std::complex<double>> to_dense() const {
    std::vector<std::complex<double>> out(dim() * dim());
    for (std::size_t j = 0; j < dim(); ++j)
      out[perm_[j] * dim() + j] = phases_[j].value();
    return out;
  }

  /// (AB) e_j = b_j a_{pB(j)} e_{pA(pB(j))}.
  friend MonomialMatrix mono_mul(const MonomialMatrix& a, const MonomialMatrix& b) {
    if (a.dim() != b.dim())
      throw ValidationError("mono_mul: dimension mismatch (" +
                            std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()) + ")");
    std::vector<std::uint32_t> perm(a.dim());
    std::vector<PhaseRational> phases(a.dim());
    for (std::size_t j = 0; j < a.dim(); ++j) {
      perm[j] = a.perm_[b.perm_[j]];
      phases[j] = b.phases_[j] * a.phases_[b.perm_[j]];
    }
    return {std::move(perm), std::move(phases)};
  }

  friend MonomialMatrix operator*(const MonomialMatrix& a, const MonomialMatrix& b) {
    return mono_mul(a, b);
  }

  friend auto operator<=>(const MonomialMatrix&, const MonomialMatrix&) = default;
  friend bool operator==(const MonomialMatrix&, const MonomialMatrix&) = default;

 private:
  std::vector<std::uint32_t> perm_;
  std::vector<PhaseRational> phases_;
};

/// Sum of the phases at the fixed points of the permutation.
inline CyclotomicSum mono_trace(const MonomialMatrix& a) {
  std::vector<CyclotomicSum::Term> terms;
  for (std::size_t j = 0; j < a.dim(); ++j)
    if (a.perm()[j] == j) terms.push_back({1, a.phases()[j]});
  return CyclotomicSum::from_terms(std::move(terms));
}

/// Kronecker product; index (i, j) maps to i * dim(B) + j.
inline MonomialMatrix mono_kron(const MonomialMatrix& a, const MonomialMatrix& b) {
  const std::size_t db = b.dim();
  std::vector<std::uint32_t> perm(a.dim() * db);
  std::vector<PhaseRational> phases(a.dim() * db);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < db; ++j) {
      perm[i * db + j] = static_cast<std::uint32_t>(a.perm()[i] * db + b.perm()[j]);
      phases[i * db + j] = a.phases()[i] * b.phases()[j];
    }
  return {std::move(perm), std::move(phases)};
}

/// Row-major complex matrix for user-supplied bases.
struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<std::complex<double>> entries;

  DenseMatrix() = default;
  DenseMatrix(std::size_t d, std::vector<std::complex<double>> e)
      : dim(d), entries(std::move(e)) {
    if (entries.size() != dim * dim)
      throw ValidationError("dense matrix: expected " + std::to_string(dim * dim) +
                            " entries");
  }
  explicit DenseMatrix(const MonomialMatrix& m) : dim(m.dim()), entries(m.to_dense()) {}

  std::complex<double> operator()(std::size_t r, std::size_t c) const {
    return entries[r * dim + c];
  }

  DenseMatrix adjoint() const {
    DenseMatrix out(dim, std::vector<std::complex<double>>(dim * dim));
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        out.entries[c * dim + r] = std::conj(entries[r * dim + c]);
    return out;
  }

  std::complex<double> trace() const {
    std::complex<double> t{};
    for (std::size_t i = 0; i < dim; ++i) t += entries[i * dim + i];
    return t;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.dim != b.dim) throw ValidationError("dense multiply: dimension mismatch");
    const std::size_t n = a.dim;
    DenseMatrix out(n, std::vector<std::complex<double>>(n * n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k) {
        const auto x = a.entries[r * n + k];
        if (x == std::complex<double>{}) continue;
        for (std::size_t c = 0; c < n; ++c) out.entries[r * n + c] += x * b.entries[k * n + c];
      }
    return out;
  }

  /// Largest entrywise modulus of (this - s * other).
  double distance(const DenseMatrix& other, std::complex<double> s = 1.0) const {
    double d = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i)
      d = std::max(d, std::abs(entries[i] - s * other.entries[i]));
    return d;
  }
};

inline DenseMatrix dense_kron(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t n = a.dim * b.dim;
  DenseMatrix out(n, std::vector<std::complex<double>>(n * n));
  for (std::size_t r1 = 0; r1 < a.dim; ++r1)
    for (std::size_t c1 = 0; c1 < a.dim; ++c1)
      for (std::size_t r2 = 0; r2 < b.dim; ++r2)
        for (std::size_t c2 = 0; c2 < b.dim; ++c2)
          out.entries[(r1 * b.dim + r2) * n + c1 * b.dim + c2] = a(r1, c1) * b(r2, c2);
  return out;
}

}  // namespace neb

#endif  // NEB_MONOMIAL_HPP
