#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "neb/catalogue.hpp"
#include "neb/cayley_io.hpp"
#include "oracles.hpp"

using namespace neb;

TEST_CASE("descriptor parsing", "[catalogue]") {
  using F = FamilyDescriptor::Family;
  CHECK(parse_descriptor("hn:5").family == F::hn);
  CHECK(parse_descriptor("abelian:2x2x3").params == std::vector<std::int64_t>{2, 2, 3});
  CHECK(parse_descriptor("extraspecial:2-").sign == '-');
  CHECK(parse_descriptor("extraspecial:3").sign == '+');
  CHECK(parse_descriptor("dihedral:8*cyclic:3").factors.size() == 2);
  CHECK(parse_descriptor("heisenberg:4").to_string() == "heisenberg:4");
  for (const char* bad : {"hn:2", "hn:9", "dihedral:7", "quaternion:6", "heisenberg:1",
                          "extraspecial:4", "cyclic:0", "nosuch:3", "hn", "abelian:2x", "hn:x"})
    CHECK_THROWS_AS(build(bad), Error);
}

TEST_CASE("build examples", "[catalogue]") {
  CHECK(build("hn:5").order() == 256);
  const auto d8 = build("dihedral:8");
  CHECK(d8.order() == 8);
  CHECK(conjugacy_classes(d8).classes.size() == 5);
  const auto h3 = build("heisenberg:3");
  CHECK(h3.order() == 27);
  CHECK(center(h3).size() == 3);
  CHECK(nilpotency_class(h3) <= 2);
  CHECK(build("quaternion:16").order() == 16);
  CHECK(build("abelian:2x3").is_abelian());
  CHECK(build("dihedral:8*cyclic:3").order() == 24);
  CHECK(build("cyclic:12").element_order(1) == 12);
  CHECK_THROWS_AS(build("hn:7", 1000), ValidationError);
}

TEST_CASE("quaternion and dihedral differ", "[catalogue]") {
  const auto q = build("quaternion:8"), d = build("dihedral:8");
  CHECK(oracle::element_order(q, 1) > 0);
  std::size_t q_inv = 0, d_inv = 0;
  for (Elem x = 0; x < 8; ++x) {
    q_inv += q.element_order(x) == 2;
    d_inv += d.element_order(x) == 2;
  }
  CHECK(q_inv == 1);
  CHECK(d_inv == 5);
  CHECK(fingerprint(build("extraspecial:2+")) == fingerprint(d));
  CHECK(fingerprint(build("extraspecial:2-")) == fingerprint(q));
}

TEST_CASE("extraspecial signature", "[catalogue]") {
  for (const char* desc : {"extraspecial:2+", "extraspecial:2-", "extraspecial:3",
                           "extraspecial:3-", "extraspecial:5-"}) {
    const auto h = build(desc);
    const auto p = static_cast<std::size_t>(parse_descriptor(desc).params.front());
    INFO(desc);
    CHECK(h.order() == p * p * p);
    const auto z = center(h);
    CHECK(z.size() == p);
    CHECK(commutator_subgroup(h) == z);
    const auto q = quotient(h, z).group;
    CHECK(q.is_abelian());
    for (Elem x = 1; x < q.order(); ++x) CHECK(q.element_order(x) == p);
  }
  // exponent distinguishes the two odd types
  const auto plus = build("extraspecial:3+"), minus = build("extraspecial:3-");
  std::size_t max_plus = 0, max_minus = 0;
  for (Elem x = 0; x < 27; ++x) {
    max_plus = std::max(max_plus, plus.element_order(x));
    max_minus = std::max(max_minus, minus.element_order(x));
  }
  CHECK(max_plus == 3);
  CHECK(max_minus == 9);
}

TEST_CASE("every built-in group is valid and deterministic", "[catalogue][property]") {
  const auto cat = builtin_catalogue();
  CHECK(cat.size() >= 40);
  for (const auto& d : cat) {
    const auto g = build(d);
    INFO(d);
    REQUIRE_NOTHROW(g.verify_axioms());
    REQUIRE(build(d) == g);
    if (g.order() <= 64) REQUIRE(oracle::associative(g));
  }
}

TEST_CASE("nilpotent implies solvable on the catalogue", "[catalogue][property]") {
  for (const auto& d : builtin_catalogue()) {
    const auto g = build(d);
    if (nilpotency_class(g)) REQUIRE(derived_series(g).solvable);
  }
}

TEST_CASE("scan over H_n", "[catalogue][scan]") {
  std::vector<std::string> sources;
  for (int n = 3; n <= 7; ++n) sources.push_back("hn:" + std::to_string(n));
  const auto s = scan(sources, 2);
  REQUIRE(s.entries.size() == 5);
  CHECK(s.abstract_error_groups == 5);
  CHECK(s.nonabelian_index_groups == 3);
  for (std::size_t i = 0; i < 5; ++i) {
    REQUIRE(s.entries[i].report);
    CHECK(s.entries[i].name == sources[i]);
    CHECK(s.entries[i].report->index_group_abelian == (i < 2));
  }
}

TEST_CASE("scan isolates errors and handles empty input", "[catalogue][scan]") {
  const auto s = scan({"dihedral:8", "hn:42", "cyclic:3"});
  REQUIRE(s.entries.size() == 3);
  CHECK(s.errors == 1);
  CHECK(s.entries[1].error.has_value());
  CHECK(s.entries[2].report.has_value());
  CHECK(scan({}).entries.empty());
}

TEST_CASE("small built-in groups: abstract error groups are solvable", "[catalogue][scan]") {
  std::vector<std::string> small;
  for (const auto& d : builtin_catalogue())
    if (build(d).order() <= 64) small.push_back(d);
  const auto s = scan(small, 4);
  CHECK(s.errors == 0);
  for (const auto& e : s.entries)
    if (e.report->abstract_error_group) REQUIRE(e.report->solvable);
}

TEST_CASE("scan is independent of the job count", "[catalogue][scan]") {
  const auto cat = builtin_catalogue();
  const auto a = scan(cat, 1), b = scan(cat, 5);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    REQUIRE(a.entries[i].name == b.entries[i].name);
    REQUIRE(a.entries[i].report->fingerprint == b.entries[i].report->fingerprint);
    REQUIRE(a.entries[i].report->central_type == b.entries[i].report->central_type);
  }
}

TEST_CASE("load_group reads files and descriptors", "[catalogue][io]") {
  const auto path = std::filesystem::temp_directory_path() / "neb_catalogue_d8.txt";
  {
    std::ofstream f(path);
    write_cayley(f, build("dihedral:8"));
  }
  const auto g = load_group(path.string());
  CHECK(fingerprint(g) == fingerprint(build("dihedral:8")));
  CHECK(load_group("quaternion:8").order() == 8);
  std::filesystem::remove(path);
}
