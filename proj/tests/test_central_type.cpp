#include <catch2/catch_amalgamated.hpp>

#include <array>

#include "neb/affine.hpp"
#include "neb/catalogue.hpp"
#include "neb/central_type.hpp"
#include "neb/characters.hpp"
#include "neb/constructions.hpp"
#include "oracles.hpp"

using namespace neb;
using Degrees = std::vector<std::int64_t>;

namespace {

FiniteGroup symmetric4() {
  using P = std::array<int, 4>;
  return generate_group(
             P{0, 1, 2, 3}, {P{1, 0, 2, 3}, P{1, 2, 3, 0}},
             [](const P& a, const P& b) {
               P c{};
               for (int i = 0; i < 4; ++i) c[i] = a[b[i]];
               return c;
             },
             [](const P&) { return std::string("p"); })
      .group;
}

/// Pahlings inequality evaluated from the table alone.
bool pahlings_by_brute_force(const FiniteGroup& h) {
  const auto z = oracle::center(h);
  for (Elem x = 0; x < h.order(); ++x) {
    if (z.count(x)) continue;
    std::set<Elem> conj, cosets_union;
    for (Elem y = 0; y < h.order(); ++y) conj.insert(h.mul(h.mul(oracle::inverse(h, y), x), y));
    for (auto c : conj)
      for (auto w : z) cosets_union.insert(h.mul(c, w));
    if (conj.size() <= cosets_union.size() / z.size()) return false;
  }
  return true;
}

bool extraspecial_signature(const FiniteGroup& h) {
  const auto z = center(h);
  return commutator_subgroup(h) == z && z.size() == 2;
}

}  // namespace

TEST_CASE("character degree examples", "[characters]") {
  CHECK(character_degrees(direct_product(cyclic_group(2), cyclic_group(2))) == Degrees{1, 1, 1, 1});
  CHECK(character_degrees(build("dihedral:8")) == Degrees{1, 1, 1, 1, 2});
  CHECK(character_degrees(build("quaternion:8")) == Degrees{1, 1, 1, 1, 2});
  CHECK(character_degrees(build("dihedral:6")) == Degrees{1, 1, 2});
  CHECK(character_degrees(symmetric4()) == Degrees{1, 1, 2, 3, 3});
  CHECK(character_degrees(FiniteGroup{}) == Degrees{1});
  CHECK(character_degrees(build("heisenberg:3")) == Degrees{1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3});
  const auto h5 = character_degrees(hn_group(5).group);
  CHECK(h5.back() == 8);
  CHECK_THROWS_AS(character_degrees(hn_group(6).group), PreconditionError);
}

TEST_CASE("character degrees are validated", "[characters][property]") {
  for (const auto& d : builtin_catalogue()) {
    const auto g = build(d);
    if (g.order() > kMaxCharacterOrder) continue;
    const auto degs = character_degrees(g);
    std::int64_t sum = 0;
    for (auto x : degs) {
      sum += x * x;
      REQUIRE(static_cast<std::int64_t>(g.order()) % x == 0);
    }
    REQUIRE(sum == static_cast<std::int64_t>(g.order()));
    REQUIRE(degs.size() == conjugacy_classes(g).classes.size());
    // abelian count
    REQUIRE(static_cast<std::size_t>(std::count(degs.begin(), degs.end(), 1)) ==
            g.order() / commutator_subgroup(g).size());
  }
}

TEST_CASE("central type by characters examples", "[characters]") {
  CHECK(central_type_by_characters(hn_group(4).group));
  CHECK(central_type_by_characters(direct_product(cyclic_group(2), cyclic_group(2))));
  CHECK(central_type_by_characters(build("dihedral:8")));
  CHECK_FALSE(central_type_by_characters(build("dihedral:6")));
}

TEST_CASE("Pahlings test", "[pahlings]") {
  CHECK(pahlings_test(build("quaternion:8")).central_type);
  CHECK(pahlings_test(hn_group(5).group).central_type);
  const auto d6 = pahlings_test(build("dihedral:6"));
  CHECK_FALSE(d6.central_type);
  REQUIRE(d6.witness.has_value());
  CHECK_THROWS_AS(pahlings_test(direct_product(cyclic_group(2), cyclic_group(2))),
                  PreconditionError);
}

TEST_CASE("Pahlings test agrees with the brute-force inequality", "[pahlings][oracle]") {
  for (const auto& d : builtin_catalogue()) {
    const auto g = build(d);
    if (g.order() > 128 || !is_cyclic(g, center(g))) continue;
    INFO(d);
    REQUIRE(pahlings_test(g).central_type == pahlings_by_brute_force(g));
  }
}

TEST_CASE("index group examples", "[classify]") {
  CHECK(index_group(hn_group(5).group).group.order() == 64);
  const auto v = index_group(build("dihedral:8")).group;
  CHECK(v.order() == 4);
  CHECK(v.is_abelian());
  CHECK(index_group(cyclic_group(6)).group.order() == 1);
}

TEST_CASE("classify examples", "[classify]") {
  const auto h5 = classify(hn_group(5).group);
  CHECK(h5.abstract_error_group);
  CHECK(h5.solvable);
  CHECK(h5.nilpotency_class == 3);
  CHECK_FALSE(h5.index_group_abelian);
  CHECK(h5.methods_agree == true);

  const auto q8 = classify(build("quaternion:8"));
  CHECK(q8.abstract_error_group);
  CHECK(q8.center_order == 2);
  CHECK(q8.nilpotency_class == 2);
  CHECK(q8.index_group_abelian);
  CHECK(q8.index_group_fingerprint.order == 4);
  CHECK(q8.index_group_fingerprint.element_orders == std::map<std::size_t, std::size_t>{{1, 1}, {2, 3}});

  const auto v4 = classify(direct_product(cyclic_group(2), cyclic_group(2)));
  CHECK_FALSE(v4.center_cyclic);
  CHECK_FALSE(v4.abstract_error_group);
  CHECK(v4.central_type_method == "characters");

  const auto big = classify(direct_product(hn_group(6).group, cyclic_group(2)));
  CHECK_FALSE(big.center_cyclic);
  CHECK(big.central_type_method == "none");
  CHECK_FALSE(big.central_type.has_value());
  CHECK_FALSE(big.abstract_error_group);
}

TEST_CASE("covering groups", "[cover]") {
  const auto v4 = direct_product(cyclic_group(2), cyclic_group(2));
  const FactorSystem trivial(v4, std::vector<PhaseRational>(16));
  const auto c0 = covering_group(trivial);
  CHECK(c0.t_order == 1);
  CHECK(fingerprint(c0.group) == fingerprint(v4));

  for (int m = 1; m <= 3; ++m) {
    const auto cover = covering_group(extract_factor_system(construct_pauli(m)));
    INFO("m = " << m);
    CHECK(cover.group.order() == (std::size_t{1} << (2 * m + 1)));
    CHECK(center(cover.group).size() == 2);
    CHECK(extraspecial_signature(cover.group));
    const auto derived = oracle::derived_subgroup(cover.group);
    CHECK(derived == oracle::center(cover.group));
  }
  const auto c1 = covering_group(extract_factor_system(construct_pauli(1)));
  CHECK(fingerprint(c1.group) == fingerprint(build("dihedral:8")));
  CHECK_THROWS_AS(covering_group(extract_factor_system(construct_hn(5)), 100), ValidationError);
}

TEST_CASE("covering group is isomorphic to the generated matrix group", "[cover]") {
  for (int n = 3; n <= 5; ++n) {
    const auto cover = covering_group(extract_factor_system(construct_hn(n)));
    const auto mats = hn_matrix_group(n);
    CHECK(fingerprint(cover.group) == fingerprint(mats.group));
  }
  const auto p2 = construct_pauli(2);
  CHECK(fingerprint(covering_group(extract_factor_system(p2)).group) ==
        fingerprint(basis_matrix_group(p2).group));
}

TEST_CASE("covers of constructed bases are abstract error groups", "[cover][property]") {
  std::vector<ErrorBasis> bases;
  for (int m = 1; m <= 3; ++m) bases.push_back(construct_pauli(m));
  for (const auto& o : std::vector<std::vector<std::int64_t>>{{2}, {3}, {4}, {5}, {6}, {2, 2}, {2, 3}})
    bases.push_back(construct_symmetric_abelian(o));
  for (int n = 3; n <= 6; ++n) bases.push_back(construct_hn(n));
  bases.push_back(tensor_basis(construct_pauli(1), construct_symmetric_abelian({3})));
  for (const auto& e : bases) {
    const auto cover = covering_group(extract_factor_system(e));
    const auto rep = classify(cover.group);
    INFO("degree " << e.degree() << " order " << e.index_group().order());
    REQUIRE(rep.abstract_error_group);
    REQUIRE(rep.solvable);
    REQUIRE(rep.index_group_fingerprint == fingerprint(e.index_group()));
    if (cover.group.order() <= kMaxCharacterOrder) {
      const auto degs = character_degrees(cover.group);
      REQUIRE(std::find(degs.begin(), degs.end(), static_cast<std::int64_t>(e.degree())) !=
              degs.end());
      REQUIRE(rep.methods_agree == true);
    }
  }
}
