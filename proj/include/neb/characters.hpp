#ifndef NEB_CHARACTERS_HPP
#define NEB_CHARACTERS_HPP

// Degrees of the irreducible characters by the class-algebra method.
//
// The class sums K_i multiply as K_i K_j = sum_k a_ijk K_k. For every
// irreducible chi the central character w_i = |C_i| chi(g_i) / chi(1) is a
// common eigenvector of the matrices (M_i)_jk = a_ijk, and
// chi(1)^2 = |G| / sum_i |w_i|^2 / |C_i|. A random combination of the M_i
// separates the characters, so its eigenvectors give all the w.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "neb/errors.hpp"
#include "neb/group.hpp"

namespace neb {

inline constexpr std::size_t kMaxCharacterOrder = 512;
inline constexpr double kCharacterTolerance = 1e-6;

/// Sorted degrees of the irreducible ordinary characters. Throws Error when
/// the numerical result fails integer validation on every attempt.
inline std::vector<std::int64_t> character_degrees(const FiniteGroup& g) {
  if (g.order() > kMaxCharacterOrder)
    throw PreconditionError("character_degrees: order " + std::to_string(g.order()) +
                            " exceeds " + std::to_string(kMaxCharacterOrder));
  const auto cls = conjugacy_classes(g);
  const std::size_t r = cls.classes.size();
  const std::size_t n = g.order();

  // a[(i * r + j) * r + k] = #{x in C_i : x^{-1} z_k in C_j}
  std::vector<std::int64_t> a(r * r * r, 0);
  for (std::size_t k = 0; k < r; ++k) {
    const Elem z = cls.classes[k].front();
    for (std::size_t x = 0; x < n; ++x) {
      const auto e = static_cast<Elem>(x);
      const std::size_t i = cls.class_of[e];
      const std::size_t j = cls.class_of[g.mul(g.inv(e), z)];
      ++a[(i * r + j) * r + k];
    }
  }

  std::string last_failure;
  for (std::uint64_t attempt = 0; attempt < 6; ++attempt) {
    std::mt19937_64 rng(0xc1a55 + attempt);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r),
                                              static_cast<Eigen::Index>(r));
    for (std::size_t i = 0; i < r; ++i) {
      const double c = coeff(rng);
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < r; ++k)
          m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) +=
              c * static_cast<double>(a[(i * r + j) * r + k]);
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
      last_failure = "eigen decomposition did not converge";
      continue;
    }
    const auto values = solver.eigenvalues();
    const auto vectors = solver.eigenvectors();

    double min_gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < values.size(); ++i)
      for (Eigen::Index j = i + 1; j < values.size(); ++j)
        min_gap = std::min(min_gap, std::abs(values[i] - values[j]));
    if (r > 1 && min_gap < kCharacterTolerance) {
      last_failure = "eigenvalues not separated (gap " + std::to_string(min_gap) + ")";
      continue;
    }

    std::vector<std::int64_t> degrees;
    bool ok = true;
    for (Eigen::Index col = 0; col < vectors.cols() && ok; ++col) {
      const std::complex<double> pivot = vectors(0, col);  // class of the identity
      if (std::abs(pivot) < kCharacterTolerance) {
        ok = false;
        last_failure = "eigenvector vanishes on the identity class";
        break;
      }
      double denom = 0.0;
      for (std::size_t i = 0; i < r; ++i) {
        const auto w = vectors(static_cast<Eigen::Index>(i), col) / pivot;
        denom += std::norm(w) / static_cast<double>(cls.classes[i].size());
      }
      const double d = std::sqrt(static_cast<double>(n) / denom);
      const double rounded = std::round(d);
      if (std::abs(d - rounded) > kCharacterTolerance || rounded < 1.0) {
        ok = false;
        last_failure = "degree " + std::to_string(d) + " is not an integer";
        break;
      }
      degrees.push_back(static_cast<std::int64_t>(rounded));
    }
    if (!ok) continue;
    std::int64_t sum_sq = 0;
    for (auto d : degrees) sum_sq += d * d;
    if (sum_sq != static_cast<std::int64_t>(n) || degrees.size() != r) {
      last_failure = "sum of squared degrees " + std::to_string(sum_sq) + " != " +
                     std::to_string(n);
      continue;
    }
    std::sort(degrees.begin(), degrees.end());
    return degrees;
  }
  throw Error("character_degrees: numerical breakdown: " + last_failure);
}

}  // namespace neb

#endif  // NEB_CHARACTERS_HPP
