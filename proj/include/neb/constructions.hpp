#ifndef NEB_CONSTRUCTIONS_HPP
#define NEB_CONSTRUCTIONS_HPP

// Nice error bases built from group data: the qubit Pauli basis and its
// tensor powers, clock-and-shift bases for abelian groups H x H, and the
// basis attached to H_n with its nonabelian index group.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "neb/affine.hpp"
#include "neb/error_basis.hpp"
#include "neb/group.hpp"
#include "neb/monomial.hpp"

namespace neb {

/// The four 2x2 matrices indexed by Z2 x Z2, labels (a,b):
///   rho(0,0) = I, rho(0,1) = [[0,1],[1,0]], rho(1,0) = diag(1,-1),
///   rho(1,1) = [[0,-1],[1,0]].
inline ErrorBasis pauli_qubit_basis() {
  const PhaseRational one{}, minus{1, 2};
  std::vector<MonomialMatrix> ms{
      MonomialMatrix::identity(2),
      MonomialMatrix({1, 0}, {one, one}),
      MonomialMatrix::diagonal({one, minus}),
      // column 0 -> row 1 with +1, column 1 -> row 0 with -1
      MonomialMatrix({1, 0}, {one, minus}),
  };
  return {direct_product(cyclic_group(2), cyclic_group(2)), std::move(ms)};
}

/// One-dimensional basis over the trivial group.
inline ErrorBasis trivial_basis() {
  return {FiniteGroup{}, std::vector<MonomialMatrix>{MonomialMatrix::identity(1)}};
}

/// rho(g, h) = rho1(g) (x) rho2(h) over the direct product of index groups.
inline ErrorBasis tensor_basis(const ErrorBasis& a, const ErrorBasis& b) {
  const std::size_t degree = a.degree() * b.degree();
  if (degree > kMaxBasisDegree)
    throw ValidationError("tensor basis degree " + std::to_string(degree) +
                          " exceeds " + std::to_string(kMaxBasisDegree));
  FiniteGroup g = direct_product(a.index_group(), b.index_group());
  const std::size_t na = a.index_group().order(), nb = b.index_group().order();
  if (a.is_exact() && b.is_exact()) {
    std::vector<MonomialMatrix> ms;
    ms.reserve(na * nb);
    for (std::size_t x = 0; x < na; ++x)
      for (std::size_t y = 0; y < nb; ++y)
        ms.push_back(mono_kron(a.monomial()[x], b.monomial()[y]));
    return {std::move(g), std::move(ms)};
  }
  std::vector<DenseMatrix> ms;
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t y = 0; y < nb; ++y)
      ms.push_back(dense_kron(a.dense_at(static_cast<Elem>(x)),
                              b.dense_at(static_cast<Elem>(y))));
  return {std::move(g), std::move(ms), std::max(a.tolerance(), b.tolerance())};
}

/// m-fold tensor power of the qubit Pauli basis.
inline ErrorBasis construct_pauli(int m) {
  if (m < 1 || m > 8) throw ValidationError("pauli requires 1 <= m <= 8");
  ErrorBasis e = pauli_qubit_basis();
  for (int i = 1; i < m; ++i) e = tensor_basis(e, pauli_qubit_basis());
  return e;
}

/// Clock matrix diag(1, zeta_m, ..., zeta_m^{m-1}).
inline MonomialMatrix clock_matrix(std::size_t m) {
  std::vector<PhaseRational> phases;
  for (std::size_t j = 0; j < m; ++j)
    phases.emplace_back(static_cast<std::int64_t>(j), static_cast<std::int64_t>(m));
  return MonomialMatrix::diagonal(std::move(phases));
}

/// Basis for G = H x H with H = Z_{m1} + ... + Z_{mk}:
/// rho(a, b) = (x)_i X_{mi}^{a_i} Z_{mi}^{b_i}.
inline ErrorBasis construct_symmetric_abelian(std::span<const std::int64_t> orders) {
  if (orders.empty()) throw ValidationError("abelian basis needs at least one factor");
  std::int64_t degree = 1;
  for (auto m : orders) {
    if (m < 2) throw ValidationError("abelian basis factors must be >= 2");
    degree *= m;
    if (degree > static_cast<std::int64_t>(kMaxBasisDegree))
      throw ValidationError("abelian basis degree exceeds 256");
  }
  FiniteGroup h = cyclic_group(static_cast<std::size_t>(orders[0]));
  for (std::size_t i = 1; i < orders.size(); ++i)
    h = direct_product(h, cyclic_group(static_cast<std::size_t>(orders[i])));
  const auto nh = h.order();

  // Mixed-radix digits of an element of H, most significant factor first.
  auto digits = [&](std::size_t x) {
    std::vector<std::int64_t> d(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
      d[i] = static_cast<std::int64_t>(x % static_cast<std::size_t>(orders[i]));
      x /= static_cast<std::size_t>(orders[i]);
    }
    return d;
  };

  std::vector<MonomialMatrix> ms;
  ms.reserve(nh * nh);
  for (std::size_t a = 0; a < nh; ++a)
    for (std::size_t b = 0; b < nh; ++b) {
      const auto da = digits(a), db = digits(b);
      MonomialMatrix m = MonomialMatrix::identity(1);
      for (std::size_t i = 0; i < orders.size(); ++i) {
        const auto mi = static_cast<std::size_t>(orders[i]);
        const auto factor = MonomialMatrix::shift(mi).pow(da[i]) * clock_matrix(mi).pow(db[i]);
        m = mono_kron(m, factor);
      }
      ms.push_back(std::move(m));
    }
  return {direct_product(h, h), std::move(ms)};
}

inline ErrorBasis construct_symmetric_abelian(std::initializer_list<std::int64_t> orders) {
  const std::vector<std::int64_t> v(orders);
  return construct_symmetric_abelian(std::span<const std::int64_t>(v));
}

/// rho(tau) = diag(phi(0), ..., phi(2^{n-2}-1)), phi(x) = e^{2 pi i 5^x / 2^n}.
inline MonomialMatrix hn_rho_tau(int n) {
  const std::uint64_t dim = std::uint64_t{1} << (n - 2);
  const std::uint64_t mod = std::uint64_t{1} << n;
  std::vector<PhaseRational> phases;
  for (std::uint64_t x = 0; x < dim; ++x)
    phases.emplace_back(static_cast<std::int64_t>(pow_mod(5, x, mod)),
                        static_cast<std::int64_t>(mod));
  return MonomialMatrix::diagonal(std::move(phases));
}

/// rho(alpha): ones on the superdiagonal and in the bottom-left corner.
inline MonomialMatrix hn_rho_alpha(int n) {
  return MonomialMatrix::shift(std::size_t{1} << (n - 2), -1);
}

/// Index group H_n / Z(H_n): pairs (k, l) mod 2^{n-2} with
/// (k1, l1)(k2, l2) = (k1 + 5^l1 k2, l1 + l2).
struct HnIndexElement {
  std::uint64_t k = 0, l = 0;
  friend auto operator<=>(const HnIndexElement&, const HnIndexElement&) = default;
};

inline Generated<HnIndexElement> hn_index_group(int n) {
  const std::uint64_t m = std::uint64_t{1} << (n - 2);
  return generate_group(
      HnIndexElement{}, {HnIndexElement{1 % m, 0}, HnIndexElement{0, 1 % m}},
      [m](const HnIndexElement& a, const HnIndexElement& b) {
        return HnIndexElement{(a.k + pow_mod(5, a.l, m) * b.k) % m, (a.l + b.l) % m};
      },
      [](const HnIndexElement& a) {
        return "t^" + std::to_string(a.k) + " a^" + std::to_string(a.l);
      });
}

/// E = { rho(tau)^k rho(alpha)^l : 0 <= k, l < 2^{n-2} } over H_n / Z(H_n).
inline ErrorBasis construct_hn(int n) {
  if (n < 3 || n > 8) throw ValidationError("hn requires 3 <= n <= 8");
  auto index = hn_index_group(n);
  const auto tau = hn_rho_tau(n), alpha = hn_rho_alpha(n);
  std::vector<MonomialMatrix> ms;
  ms.reserve(index.elements.size());
  for (const auto& el : index.elements)
    ms.push_back(tau.pow(static_cast<std::int64_t>(el.k)) *
                 alpha.pow(static_cast<std::int64_t>(el.l)));
  return {std::move(index.group), std::move(ms)};
}

inline std::string mono_label(const MonomialMatrix& m) {
  std::string s = "[";
  for (std::size_t j = 0; j < m.dim(); ++j) {
    if (j) s += ' ';
    s += std::to_string(m.perm()[j]) + ":" + m.phases()[j].to_string();
  }
  return s + "]";
}

/// The matrix group generated by rho(tau) and rho(alpha).
inline Generated<MonomialMatrix> hn_matrix_group(int n,
                                                 std::size_t max_order = kDefaultMaxOrder) {
  if (n < 3 || n > 8) throw ValidationError("hn requires 3 <= n <= 8");
  const std::size_t dim = std::size_t{1} << (n - 2);
  return generate_group(
      MonomialMatrix::identity(dim), {hn_rho_tau(n), hn_rho_alpha(n)},
      [](const MonomialMatrix& a, const MonomialMatrix& b) { return a * b; }, mono_label,
      max_order);
}

/// Matrix group generated by all basis elements.
inline Generated<MonomialMatrix> basis_matrix_group(const ErrorBasis& e,
                                                    std::size_t max_order = kDefaultMaxOrder) {
  const auto& ms = e.monomial();
  std::vector<MonomialMatrix> gens(ms.begin() + 1, ms.end());
  return generate_group(
      MonomialMatrix::identity(e.degree()), gens,
      [](const MonomialMatrix& a, const MonomialMatrix& b) { return a * b; }, mono_label,
      max_order);
}

}  // namespace neb

#endif  // NEB_CONSTRUCTIONS_HPP
