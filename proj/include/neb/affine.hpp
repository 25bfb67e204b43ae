#ifndef NEB_AFFINE_HPP
#define NEB_AFFINE_HPP

// The affine maps x -> 5^l x + k on Z/2^n and the group H_n they generate
// from tau = (x -> x + 1) and alpha = (x -> 5x).

#include <compare>
#include <cstdint>
#include <string>

#include "neb/errors.hpp"
#include "neb/group.hpp"

namespace neb {

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e,
                             std::uint64_t mod) {
  std::uint64_t r = 1 % mod;
  base %= mod;
  while (e > 0) {
    if (e & 1) r = r * base % mod;
    base = base * base % mod;
    e >>= 1;
  }
  return r;
}

/// The map x -> 5^l * x + k (mod 2^n), with k mod 2^n and l mod 2^{n-2}.
class AffineElement {
 public:
  AffineElement(int n, std::uint64_t k, std::uint64_t l) : n_(n) {
    if (n < 3 || n > 30) throw ValidationError("affine modulus 2^n needs 3 <= n <= 30");
    k_ = k % modulus();
    l_ = l % exponent_modulus();
  }

  static AffineElement identity(int n) { return {n, 0, 0}; }
  static AffineElement tau(int n) { return {n, 1, 0}; }
  static AffineElement alpha(int n) { return {n, 0, 1}; }

  int n() const { return n_; }
  std::uint64_t k() const { return k_; }
  std::uint64_t l() const { return l_; }
  std::uint64_t modulus() const { return std::uint64_t{1} << n_; }
  std::uint64_t exponent_modulus() const { return std::uint64_t{1} << (n_ - 2); }

  std::uint64_t apply(std::uint64_t x) const {
    return (pow_mod(5, l_, modulus()) * (x % modulus()) + k_) % modulus();
  }

  /// (a * b)(x) = a(b(x)), so (k1, l1)(k2, l2) = (k1 + 5^l1 k2, l1 + l2).
  friend AffineElement operator*(const AffineElement& a, const AffineElement& b) {
    if (a.n_ != b.n_) throw ValidationError("affine maps on different moduli");
    const auto m = a.modulus();
    return {a.n_, (a.k_ + pow_mod(5, a.l_, m) * b.k_) % m, a.l_ + b.l_};
  }

  std::string label() const {
    return "t^" + std::to_string(k_) + " a^" + std::to_string(l_);
  }

  friend auto operator<=>(const AffineElement&, const AffineElement&) = default;

 private:
  int n_;
  std::uint64_t k_ = 0;
  std::uint64_t l_ = 0;
};

/// H_n = <tau, alpha>, of order 2^{2n-2}.
inline Generated<AffineElement> hn_group(int n,
                                         std::size_t max_order = kDefaultMaxOrder) {
  if (n < 3 || n > 8) throw ValidationError("hn requires 3 <= n <= 8");
  return generate_group(
      AffineElement::identity(n),
      {AffineElement::tau(n), AffineElement::alpha(n)},
      [](const AffineElement& a, const AffineElement& b) { return a * b; },
      [](const AffineElement& a) { return a.label(); }, max_order);
}

}  // namespace neb

#endif  // NEB_AFFINE_HPP
