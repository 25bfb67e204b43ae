#ifndef NEB_CENTRAL_TYPE_HPP
#define NEB_CENTRAL_TYPE_HPP

// Abstract error groups: omega-covering groups of factor systems, and the
// test whether a group H is of central type with cyclic center.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "neb/characters.hpp"
#include "neb/error_basis.hpp"
#include "neb/errors.hpp"
#include "neb/group.hpp"

namespace neb {

struct PahlingsResult {
  bool central_type = true;
  std::optional<Elem> witness;  // a noncentral x violating the inequality
};

/// For H with cyclic center Z and G = H/Z: H is of central type iff
/// |Cl_H(x)| > |Cl_G(xZ)| for every x outside Z.
inline PahlingsResult pahlings_test(const FiniteGroup& h) {
  const Subgroup z = center(h);
  if (!is_cyclic(h, z))
    throw PreconditionError("pahlings_test: center of order " + std::to_string(z.size()) +
                            " is not cyclic");
  const Quotient q = quotient(h, z);
  const auto cls_h = conjugacy_classes(h);
  const auto cls_g = conjugacy_classes(q.group);
  for (std::size_t x = 0; x < h.order(); ++x) {
    const auto e = static_cast<Elem>(x);
    if (z.contains(e)) continue;
    const auto size_h = cls_h.classes[cls_h.class_of[e]].size();
    const auto size_g = cls_g.classes[cls_g.class_of[q.projection[e]]].size();
    if (size_h <= size_g) return {false, e};
  }
  return {};
}

/// Character-side oracle: some irreducible degree d has d^2 = (H : Z(H)).
inline bool central_type_by_characters(const FiniteGroup& h) {
  const auto degrees = character_degrees(h);
  const auto d = degrees.back();
  return static_cast<std::size_t>(d * d) * center(h).size() == h.order();
}

inline Quotient index_group(const FiniteGroup& h) { return quotient(h, center(h)); }

/// T x G with (a, g)(b, h) = (a b omega(g, h), g h), T cyclic of order
/// lcm of the omega denominators. Element (a, g) has index a * |G| + g.
struct CoveringGroup {
  FiniteGroup group;
  std::int64_t t_order = 1;
  std::vector<Elem> t_embedding;  // a -> (a, 1)
  std::vector<Elem> projection;   // (a, g) -> g
};

inline CoveringGroup covering_group(const FactorSystem& f,
                                    std::size_t max_order = kDefaultMaxOrder) {
  const auto& g = f.group();
  const std::int64_t t = f.value_order();
  const std::size_t ng = g.order();
  const std::size_t n = static_cast<std::size_t>(t) * ng;
  if (n > max_order)
    throw ValidationError("covering group order " + std::to_string(n) + " exceeds bound " +
                          std::to_string(max_order));
  std::vector<Elem> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t a = x / ng;
    const auto gx = static_cast<Elem>(x % ng);
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t b = y / ng;
      const auto gy = static_cast<Elem>(y % ng);
      const auto w = f.at(gx, gy);
      const auto c = static_cast<std::size_t>(w.num() * (t / w.den()));
      table[x * n + y] =
          static_cast<Elem>(((a + b + c) % static_cast<std::size_t>(t)) * ng + g.mul(gx, gy));
    }
  }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t x = 0; x < n; ++x)
    labels.push_back("(" + std::to_string(x / ng) + "/" + std::to_string(t) + "," +
                     g.label(static_cast<Elem>(x % ng)) + ")");
  CoveringGroup cover{FiniteGroup::from_table(n, std::move(table), std::move(labels)), t, {},
                      {}};
  for (std::int64_t a = 0; a < t; ++a)
    cover.t_embedding.push_back(static_cast<Elem>(static_cast<std::size_t>(a) * ng));
  for (std::size_t x = 0; x < n; ++x) cover.projection.push_back(static_cast<Elem>(x % ng));
  return cover;
}

struct ClassificationReport {
  Fingerprint fingerprint;
  std::size_t center_order = 0;
  bool center_cyclic = false;
  std::optional<bool> central_type;          // nullopt when undecidable here
  std::string central_type_method;           // "pahlings", "characters", or both
  std::optional<std::string> central_type_witness;
  std::optional<bool> methods_agree;         // set when both tests ran
  std::optional<std::int64_t> max_character_degree;
  bool abstract_error_group = false;
  bool solvable = false;
  std::size_t derived_length = 0;
  std::optional<int> nilpotency_class;
  Fingerprint index_group_fingerprint;
  bool index_group_abelian = false;
  std::vector<std::string> notes;
};

/// Full classification. Pahlings' criterion decides when the center is
/// cyclic; for |H| <= 512 the character oracle also runs and must agree.
inline ClassificationReport classify(const FiniteGroup& h) {
  ClassificationReport rep;
  rep.fingerprint = fingerprint(h);
  const Subgroup z = center(h);
  rep.center_order = z.size();
  rep.center_cyclic = is_cyclic(h, z);

  std::optional<bool> by_pahlings;
  if (rep.center_cyclic) {
    const auto p = pahlings_test(h);
    by_pahlings = p.central_type;
    if (p.witness) rep.central_type_witness = h.label(*p.witness);
  }
  std::optional<bool> by_characters;
  if (h.order() <= kMaxCharacterOrder) {
    try {
      const auto degrees = character_degrees(h);
      rep.max_character_degree = degrees.back();
      by_characters = static_cast<std::size_t>(degrees.back() * degrees.back()) * z.size() ==
                      h.order();
    } catch (const Error& e) {
      rep.notes.push_back(e.what());
    }
  }
  if (by_pahlings) {
    rep.central_type = by_pahlings;
    rep.central_type_method = "pahlings";
    if (by_characters) {
      rep.central_type_method = "pahlings+characters";
      rep.methods_agree = *by_pahlings == *by_characters;
      if (!*rep.methods_agree)
        rep.notes.push_back("Pahlings criterion and character degrees disagree");
    }
  } else if (by_characters) {
    rep.central_type = by_characters;
    rep.central_type_method = "characters";
  } else {
    rep.central_type_method = "none";
    rep.notes.push_back("central type undecided: center not cyclic and order above " +
                        std::to_string(kMaxCharacterOrder));
  }
  rep.abstract_error_group = rep.center_cyclic && rep.central_type.value_or(false);

  const auto ds = derived_series(h);
  rep.solvable = ds.solvable;
  rep.derived_length = ds.length();
  rep.nilpotency_class = nilpotency_class(h);

  const Quotient q = quotient(h, z);
  rep.index_group_fingerprint = fingerprint(q.group);
  rep.index_group_abelian = q.group.is_abelian();
  return rep;
}

}  // namespace neb

#endif  // NEB_CENTRAL_TYPE_HPP
