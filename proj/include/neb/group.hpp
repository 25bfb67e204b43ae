#ifndef NEB_GROUP_HPP
#define NEB_GROUP_HPP

// Cayley-table backed finite groups and the structural computations used by
// the classifier: center, conjugacy classes, quotients, commutator subgroup,
// derived and upper central series, direct products.
//
// Element 0 is always the identity. Groups produced by generate_group use a
// canonical breadth-first element order so every derived table is
// deterministic.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "neb/errors.hpp"

namespace neb {

using Elem = std::uint32_t;

inline constexpr std::size_t kDefaultMaxOrder = std::size_t{1} << 16;

class FiniteGroup {
 public:
  /// The trivial group.
  FiniteGroup() : order_(1), table_{0}, inverse_{0}, labels_{"e"} {}

  /// Builds a group from a row-major Cayley table and checks every group
  /// axiom. Throws ValidationError naming a witness on failure.
  static FiniteGroup from_table(std::size_t order, std::vector<Elem> table,
                                std::vector<std::string> labels = {}) {
    FiniteGroup g(order, std::move(table), std::move(labels));
    g.verify_axioms();
    g.generators_ = g.greedy_generators();
    g.compute_inverses();
    return g;
  }

  /// Skips axiom checks; the caller guarantees a valid group table and a
  /// generating set.
  static FiniteGroup trusted(std::size_t order, std::vector<Elem> table,
                             std::vector<std::string> labels,
                             std::vector<Elem> generators) {
    FiniteGroup g(order, std::move(table), std::move(labels));
    g.generators_ = std::move(generators);
    g.compute_inverses();
    return g;
  }

  std::size_t order() const { return order_; }
  static constexpr Elem identity() { return 0; }

  Elem mul(Elem a, Elem b) const { return table_[std::size_t{a} * order_ + b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  Elem conj(Elem x, Elem g) const { return mul(inv(g), mul(x, g)); }
  Elem commutator(Elem a, Elem b) const {
    return mul(mul(inv(a), inv(b)), mul(a, b));
  }

  Elem pow(Elem a, std::int64_t e) const {
    if (e < 0) {
      a = inv(a);
      e = -e;
    }
    Elem r = identity();
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  std::size_t element_order(Elem a) const {
    std::size_t k = 1;
    for (Elem x = a; x != identity(); x = mul(x, a)) ++k;
    return k;
  }

  const std::vector<Elem>& generators() const { return generators_; }
  const std::vector<Elem>& table() const { return table_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Elem a) const { return labels_[a]; }

  std::optional<Elem> find_label(std::string_view name) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == name) return static_cast<Elem>(i);
    return std::nullopt;
  }

  bool is_abelian() const {
    for (std::size_t i = 0; i < generators_.size(); ++i)
      for (std::size_t j = i + 1; j < generators_.size(); ++j)
        if (mul(generators_[i], generators_[j]) !=
            mul(generators_[j], generators_[i]))
          return false;
    return true;
  }

  /// Latin square, identity row and column, and associativity. The latter
  /// is checked exactly with Light's test: (x s) y == x (s y) for every x, y
  /// and every s in a generating set suffices.
  void verify_axioms() const {
    const std::size_t n = order_;
    if (n == 0) throw ValidationError("group of order 0");
    if (table_.size() != n * n)
      throw ValidationError("table has " + std::to_string(table_.size()) +
                            " entries, expected " + std::to_string(n * n));
    for (std::size_t i = 0; i < n * n; ++i)
      if (table_[i] >= n)
        throw ValidationError("entry " + std::to_string(table_[i]) +
                              " out of range at row " + std::to_string(i / n));
    std::vector<char> seen(n);
    for (std::size_t r = 0; r < n; ++r) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t c = 0; c < n; ++c) {
        const Elem v = table_[r * n + c];
        if (seen[v])
          throw ValidationError("Latin-square violation: row " +
                                std::to_string(r) + " repeats " +
                                std::to_string(v));
        seen[v] = 1;
      }
    }
    for (std::size_t c = 0; c < n; ++c) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t r = 0; r < n; ++r) {
        const Elem v = table_[r * n + c];
        if (seen[v])
          throw ValidationError("Latin-square violation: column " +
                                std::to_string(c) + " repeats " +
                                std::to_string(v));
        seen[v] = 1;
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      if (table_[i] != i || table_[i * n] != i)
        throw ValidationError("index 0 is not the identity (element " +
                              std::to_string(i) + ")");
    // The greedy generating set reaches every element through left-nested
    // products, which is what Light's argument needs.
    for (Elem s : greedy_generators())
      for (std::size_t x = 0; x < n; ++x) {
        const Elem xs = mul(static_cast<Elem>(x), s);
        for (std::size_t y = 0; y < n; ++y)
          if (mul(xs, static_cast<Elem>(y)) !=
              mul(static_cast<Elem>(x), mul(s, static_cast<Elem>(y))))
            throw ValidationError(
                "associativity fails for (" + std::to_string(x) + ", " +
                std::to_string(s) + ", " + std::to_string(y) + ")");
      }
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.order_ == b.order_ && a.table_ == b.table_;
  }

 private:
  FiniteGroup(std::size_t order, std::vector<Elem> table,
              std::vector<std::string> labels)
      : order_(order), table_(std::move(table)), labels_(std::move(labels)) {
    if (labels_.empty()) {
      labels_.reserve(order_);
      for (std::size_t i = 0; i < order_; ++i) labels_.push_back(std::to_string(i));
    }
    if (labels_.size() != order_)
      throw ValidationError("expected " + std::to_string(order_) +
                            " labels, got " + std::to_string(labels_.size()));
  }

  // Picks elements in index order that are not yet reachable by right
  // multiplication from the identity.
  std::vector<Elem> greedy_generators() const {
    std::vector<Elem> gens;
    std::vector<char> reached(order_, 0);
    std::vector<Elem> members{0};
    reached[0] = 1;
    for (std::size_t x = 0; x < order_; ++x) {
      if (reached[x]) continue;
      gens.push_back(static_cast<Elem>(x));
      // Re-close from scratch over all members with the extended set.
      std::deque<Elem> queue(members.begin(), members.end());
      while (!queue.empty()) {
        const Elem y = queue.front();
        queue.pop_front();
        for (Elem s : gens) {
          const Elem z = table_[std::size_t{y} * order_ + s];
          if (!reached[z]) {
            reached[z] = 1;
            members.push_back(z);
            queue.push_back(z);
          }
        }
      }
    }
    return gens;
  }

  void compute_inverses() {
    inverse_.assign(order_, 0);
    for (std::size_t i = 0; i < order_; ++i)
      for (std::size_t j = 0; j < order_; ++j)
        if (table_[i * order_ + j] == 0) {
          inverse_[i] = static_cast<Elem>(j);
          break;
        }
  }

  std::size_t order_ = 1;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<std::string> labels_;
  std::vector<Elem> generators_;
};

/// A subgroup of some parent group, stored as a sorted element list with a
/// membership mask and a generating set.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(std::size_t parent_order, std::vector<Elem> elements,
           std::vector<Elem> generators)
      : elements_(std::move(elements)),
        generators_(std::move(generators)),
        member_(parent_order, 0) {
    std::sort(elements_.begin(), elements_.end());
    for (Elem e : elements_) member_[e] = 1;
  }

  std::size_t size() const { return elements_.size(); }
  bool contains(Elem e) const { return e < member_.size() && member_[e]; }
  const std::vector<Elem>& elements() const { return elements_; }
  const std::vector<Elem>& generators() const { return generators_; }
  bool is_trivial() const { return elements_.size() == 1; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.elements_ == b.elements_;
  }

 private:
  std::vector<Elem> elements_;
  std::vector<Elem> generators_;
  std::vector<char> member_;
};

/// Result of closing a generating set under an abstract multiplication.
template <class T>
struct Generated {
  FiniteGroup group;
  std::vector<T> elements;  // elements[i] is the group element with index i

  std::optional<Elem> index_of(const T& x) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (elements[i] == x) return static_cast<Elem>(i);
    return std::nullopt;
  }
};

/// Closure of generators under an associative composition rule.
///
/// Elements are numbered breadth-first from the identity, expanding each
/// element by right multiplication with the generators in the given order.
/// The full table is filled from the generator columns, using
/// x * w = (x * parent(w)) * s where w = parent(w) * s in the BFS tree.
template <class T, class Mul, class Label>
Generated<T> generate_group(const T& identity, const std::vector<T>& generators,
                            Mul mul, Label label,
                            std::size_t max_order = kDefaultMaxOrder) {
  std::map<T, Elem> index;
  std::vector<T> elements{identity};
  index.emplace(identity, 0);
  std::vector<Elem> parent{0};
  std::vector<std::uint32_t> via{0};
  std::vector<std::vector<Elem>> right;  // right[x][s] = x * generators[s]

  for (std::size_t head = 0; head < elements.size(); ++head) {
    std::vector<Elem> row(generators.size());
    for (std::size_t s = 0; s < generators.size(); ++s) {
      T y = mul(elements[head], generators[s]);
      auto [it, inserted] = index.try_emplace(std::move(y), 0);
      if (inserted) {
        if (elements.size() >= max_order)
          throw ValidationError("group closure exceeds bound " +
                                std::to_string(max_order));
        it->second = static_cast<Elem>(elements.size());
        elements.push_back(it->first);
        parent.push_back(static_cast<Elem>(head));
        via.push_back(static_cast<std::uint32_t>(s));
      }
      row[s] = it->second;
    }
    right.push_back(std::move(row));
  }

  const std::size_t n = elements.size();
  std::vector<Elem> table(n * n);
  for (std::size_t x = 0; x < n; ++x) table[x * n] = static_cast<Elem>(x);
  for (std::size_t w = 1; w < n; ++w)
    for (std::size_t x = 0; x < n; ++x)
      table[x * n + w] = right[table[x * n + parent[w]]][via[w]];

  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& e : elements) labels.push_back(label(e));

  std::vector<Elem> gens;
  for (std::size_t s = 0; s < generators.size(); ++s) {
    const Elem g = right[0][s];
    if (g != 0 && std::find(gens.begin(), gens.end(), g) == gens.end())
      gens.push_back(g);
  }
  return {FiniteGroup::trusted(n, std::move(table), std::move(labels),
                               std::move(gens)),
          std::move(elements)};
}

inline Subgroup whole_group(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), Elem{0});
  return Subgroup(g.order(), std::move(all), g.generators());
}

inline Subgroup trivial_subgroup(const FiniteGroup& g) {
  return Subgroup(g.order(), {0}, {});
}

/// Subgroup generated by the given elements.
inline Subgroup subgroup_generated(const FiniteGroup& g,
                                   std::span<const Elem> gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Elem> members{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < members.size(); ++head)
    for (Elem s : gens) {
      const Elem y = g.mul(members[head], s);
      if (!seen[y]) {
        seen[y] = 1;
        members.push_back(y);
      }
    }
  std::vector<Elem> kept;
  for (Elem s : gens)
    if (s != 0 && std::find(kept.begin(), kept.end(), s) == kept.end())
      kept.push_back(s);
  return Subgroup(g.order(), std::move(members), std::move(kept));
}

/// Smallest subgroup containing `seed` that is normalized by `conjugators`.
inline Subgroup normal_closure(const FiniteGroup& g, std::vector<Elem> seed,
                               std::span<const Elem> conjugators) {
  Subgroup k = subgroup_generated(g, seed);
  for (;;) {
    bool grown = false;
    const auto gens = k.generators();
    for (Elem x : gens)
      for (Elem c : conjugators) {
        const Elem y = g.conj(x, c);
        if (!k.contains(y)) {
          seed.push_back(y);
          grown = true;
        }
      }
    if (!grown) return k;
    k = subgroup_generated(g, seed);
  }
}

struct ClassPartition {
  std::vector<std::vector<Elem>> classes;  // sorted by minimal element
  std::vector<std::uint32_t> class_of;     // element -> class index

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> s;
    for (const auto& c : classes) s.push_back(c.size());
    return s;
  }
};

/// Conjugacy classes as orbits under conjugation by the generators.
inline ClassPartition conjugacy_classes(const FiniteGroup& g) {
  constexpr auto kUnset = std::uint32_t(-1);
  ClassPartition p;
  p.class_of.assign(g.order(), kUnset);
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (p.class_of[x] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(p.classes.size());
    std::vector<Elem> orbit{static_cast<Elem>(x)};
    p.class_of[x] = id;
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (Elem s : g.generators()) {
        const Elem y = g.conj(orbit[head], s);
        if (p.class_of[y] == kUnset) {
          p.class_of[y] = id;
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    p.classes.push_back(std::move(orbit));
  }
  return p;
}

/// Wraps a known subgroup element set, choosing a small generating set.
inline Subgroup make_subgroup(const FiniteGroup& g, std::vector<Elem> elements) {
  std::vector<Elem> gens;
  std::vector<char> reached(g.order(), 0);
  reached[0] = 1;
  std::vector<Elem> members{0};
  for (Elem x : elements) {
    if (reached[x]) continue;
    gens.push_back(x);
    for (std::size_t head = 0; head < members.size(); ++head)
      for (Elem s : gens) {
        const Elem y = g.mul(members[head], s);
        if (!reached[y]) {
          reached[y] = 1;
          members.push_back(y);
        }
      }
  }
  if (members.size() != elements.size())
    throw Error("make_subgroup: element set is not closed");
  return Subgroup(g.order(), std::move(elements), std::move(gens));
}

inline Subgroup center(const FiniteGroup& g) {
  std::vector<Elem> z;
  for (std::size_t x = 0; x < g.order(); ++x) {
    const auto e = static_cast<Elem>(x);
    if (std::all_of(g.generators().begin(), g.generators().end(),
                    [&](Elem s) { return g.mul(e, s) == g.mul(s, e); }))
      z.push_back(e);
  }
  return make_subgroup(g, std::move(z));
}

/// True iff the subgroup contains an element whose order equals its size.
inline bool is_cyclic(const FiniteGroup& g, const Subgroup& h) {
  return std::any_of(h.elements().begin(), h.elements().end(), [&](Elem e) {
    return g.element_order(e) == h.size();
  });
}

inline bool is_normal(const FiniteGroup& g, const Subgroup& n) {
  for (Elem x : n.elements())
    for (Elem s : g.generators())
      if (!n.contains(g.conj(x, s))) return false;
  return true;
}

struct Quotient {
  FiniteGroup group;
  std::vector<Elem> projection;       // element of G -> coset index
  std::vector<Elem> representatives;  // coset index -> minimal element
};

/// G/N on left cosets, numbered by their minimal element.
inline Quotient quotient(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(g, n)) throw ValidationError("quotient: subgroup is not normal");
  constexpr auto kUnset = Elem(-1);
  std::vector<Elem> proj(g.order(), kUnset);
  std::vector<Elem> reps;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (proj[x] != kUnset) continue;
    const auto c = static_cast<Elem>(reps.size());
    reps.push_back(static_cast<Elem>(x));
    for (Elem k : n.elements()) proj[g.mul(static_cast<Elem>(x), k)] = c;
  }
  const std::size_t m = reps.size();
  std::vector<Elem> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      table[a * m + b] = proj[g.mul(reps[a], reps[b])];
  std::vector<std::string> labels;
  for (Elem r : reps) labels.push_back(g.label(r));
  std::vector<Elem> gens;
  for (Elem s : g.generators())
    if (proj[s] != 0 && std::find(gens.begin(), gens.end(), proj[s]) == gens.end())
      gens.push_back(proj[s]);
  return {FiniteGroup::trusted(m, std::move(table), std::move(labels),
                               std::move(gens)),
          std::move(proj), std::move(reps)};
}

/// Commutator subgroup of a subgroup K: the normal closure in K of the
/// commutators of K's generators.
inline Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& k) {
  const auto& gens = k.generators();
  std::vector<Elem> seed;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const Elem c = g.commutator(gens[i], gens[j]);
      if (c != 0) seed.push_back(c);
    }
  return normal_closure(g, std::move(seed), gens);
}

inline Subgroup commutator_subgroup(const FiniteGroup& g) {
  return commutator_subgroup(g, whole_group(g));
}

struct DerivedSeries {
  std::vector<Subgroup> terms;  // G, G', G'', ... up to the first repeat
  bool solvable = false;
  std::size_t length() const { return terms.size() - 1; }
};

inline DerivedSeries derived_series(const FiniteGroup& g) {
  DerivedSeries s;
  s.terms.push_back(whole_group(g));
  while (!s.terms.back().is_trivial()) {
    Subgroup next = commutator_subgroup(g, s.terms.back());
    if (next.size() == s.terms.back().size()) break;
    s.terms.push_back(std::move(next));
  }
  s.solvable = s.terms.back().is_trivial();
  return s;
}

/// Upper central series 1 = Z_0 <= Z_1 <= ...; Z_{i+1} holds the x with
/// [x, s] in Z_i for every generator s.
inline std::vector<Subgroup> upper_central_series(const FiniteGroup& g) {
  std::vector<Subgroup> series{trivial_subgroup(g)};
  for (;;) {
    const Subgroup& zi = series.back();
    std::vector<Elem> next;
    for (std::size_t x = 0; x < g.order(); ++x) {
      const auto e = static_cast<Elem>(x);
      if (std::all_of(g.generators().begin(), g.generators().end(),
                      [&](Elem s) { return zi.contains(g.commutator(e, s)); }))
        next.push_back(e);
    }
    if (next.size() == zi.size()) return series;
    series.push_back(make_subgroup(g, std::move(next)));
  }
}

/// Length of the upper central series, or nullopt when it stalls below G.
inline std::optional<int> nilpotency_class(const FiniteGroup& g) {
  const auto series = upper_central_series(g);
  if (series.back().size() != g.order()) return std::nullopt;
  return static_cast<int>(series.size()) - 1;
}

/// A x B with element (a, b) at index a * |B| + b.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b,
                                  std::size_t max_order = kDefaultMaxOrder) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  if (n > max_order)
    throw ValidationError("direct product order " + std::to_string(n) +
                          " exceeds bound " + std::to_string(max_order));
  std::vector<Elem> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      table[x * n + y] = static_cast<Elem>(
          a.mul(static_cast<Elem>(x / nb), static_cast<Elem>(y / nb)) * nb +
          b.mul(static_cast<Elem>(x % nb), static_cast<Elem>(y % nb)));
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t x = 0; x < n; ++x)
    labels.push_back("(" + a.label(static_cast<Elem>(x / nb)) + "," +
                     b.label(static_cast<Elem>(x % nb)) + ")");
  std::vector<Elem> gens;
  for (Elem s : a.generators()) gens.push_back(static_cast<Elem>(s * nb));
  for (Elem s : b.generators()) gens.push_back(s);
  return FiniteGroup::trusted(n, std::move(table), std::move(labels),
                              std::move(gens));
}

inline FiniteGroup cyclic_group(std::size_t m) {
  if (m == 0) throw ValidationError("cyclic group of order 0");
  std::vector<Elem> table(m * m);
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < m; ++x) {
    labels.push_back(std::to_string(x));
    for (std::size_t y = 0; y < m; ++y)
      table[x * m + y] = static_cast<Elem>((x + y) % m);
  }
  return FiniteGroup::trusted(m, std::move(table), std::move(labels),
                              m > 1 ? std::vector<Elem>{1} : std::vector<Elem>{});
}

/// Isomorphism invariants standing in for an isomorphism test.
struct Fingerprint {
  std::size_t order = 0;
  bool abelian = false;
  std::size_t center_order = 0;
  std::vector<std::size_t> class_sizes;               // sorted ascending
  std::map<std::size_t, std::size_t> element_orders;  // order -> count

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

inline Fingerprint fingerprint(const FiniteGroup& g) {
  Fingerprint f;
  f.order = g.order();
  f.abelian = g.is_abelian();
  f.center_order = center(g).size();
  f.class_sizes = conjugacy_classes(g).sizes();
  std::sort(f.class_sizes.begin(), f.class_sizes.end());
  for (std::size_t x = 0; x < g.order(); ++x)
    ++f.element_orders[g.element_order(static_cast<Elem>(x))];
  return f;
}

}  // namespace neb

#endif  // NEB_GROUP_HPP
