#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "neb/affine.hpp"
#include "neb/constructions.hpp"
#include "neb/error_basis.hpp"
#include "oracles.hpp"

using namespace neb;

namespace {

const PhaseRational kOne{}, kHalf{1, 2};

std::vector<ErrorBasis> constructed_bases() {
  std::vector<ErrorBasis> out;
  for (int m = 1; m <= 2; ++m) out.push_back(construct_pauli(m));
  for (const auto& orders : std::vector<std::vector<std::int64_t>>{{2}, {3}, {4}, {5}, {6}, {2, 2}})
    out.push_back(construct_symmetric_abelian(orders));
  for (int n = 3; n <= 5; ++n) out.push_back(construct_hn(n));
  out.push_back(tensor_basis(construct_pauli(1), construct_symmetric_abelian({3})));
  out.push_back(trivial_basis());
  return out;
}

ErrorBasis flip(const ErrorBasis& e, Elem g, std::size_t col, PhaseRational by = kHalf) {
  auto ms = e.monomial();
  ms[g] = ms[g].with_phase(col, ms[g].phases()[col] * by);
  return {e.index_group(), std::move(ms)};
}

/// Pass verdict from the plain trace-orthogonality characterization.
bool orthonormal_by_oracle(const ErrorBasis& e) {
  const double n = static_cast<double>(e.degree());
  std::vector<oracle::Dense> d;
  for (const auto& m : e.monomial()) d.push_back(oracle::dense(m));
  for (std::size_t a = 0; a < d.size(); ++a)
    for (std::size_t b = 0; b < d.size(); ++b) {
      const auto ip = oracle::inner(d[a], d[b]);
      if (std::abs(ip - (a == b ? n : 0.0)) > 1e-9) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("monomial products", "[monomial]") {
  const auto x = MonomialMatrix::shift(2);
  CHECK(x * x == MonomialMatrix::identity(2));
  const auto e = construct_pauli(1);
  const auto& rho = e.monomial();
  // Z X = -rho(1,1)
  CHECK(rho[2] * rho[1] == rho[3].scaled(kHalf));
  CHECK(oracle::close(oracle::matmul(oracle::dense(rho[2]), oracle::dense(rho[1])),
                      oracle::dense(rho[3].scaled(kHalf))));

  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng() % 7;
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<PhaseRational> ph;
    for (std::size_t j = 0; j < n; ++j) ph.emplace_back(static_cast<std::int64_t>(rng() % 24), 24);
    const MonomialMatrix a(perm, ph);
    REQUIRE(a * a.adjoint() == MonomialMatrix::identity(n));
    std::shuffle(perm.begin(), perm.end(), rng);
    const MonomialMatrix b(perm, ph);
    const auto prod = oracle::matmul(oracle::dense(a), oracle::dense(b));
    const auto mine = oracle::dense(a * b);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) REQUIRE(std::abs(prod[i][j] - mine[i][j]) < 1e-12);
  }
  CHECK_THROWS_AS(MonomialMatrix({0, 0}, {kOne, kOne}), ValidationError);
}

TEST_CASE("monomial traces", "[monomial]") {
  CHECK(mono_trace(MonomialMatrix::identity(4)) == CyclotomicSum::integer(4));
  for (int n = 3; n <= 6; ++n) CHECK(mono_trace(hn_rho_alpha(n)).empty());
  const auto t = mono_trace(hn_rho_tau(4));
  CHECK(t.terms().size() == 4);
  CHECK(t.terms()[0].phase == PhaseRational(1, 16));
  CHECK(sum_is_zero(t));
}

TEST_CASE("qubit Pauli matrices are as printed", "[construct]") {
  const auto e = construct_pauli(1);
  const auto& g = e.index_group();
  REQUIRE(g.order() == 4);
  CHECK(g.label(1) == "(0,1)");
  CHECK(g.label(2) == "(1,0)");
  using D = oracle::Dense;
  const D id{{1, 0}, {0, 1}}, x{{0, 1}, {1, 0}}, z{{1, 0}, {0, -1}}, y{{0, -1}, {1, 0}};
  CHECK(oracle::close(oracle::dense(e.monomial()[0]), id));
  CHECK(oracle::close(oracle::dense(e.monomial()[1]), x));
  CHECK(oracle::close(oracle::dense(e.monomial()[2]), z));
  CHECK(oracle::close(oracle::dense(e.monomial()[3]), y));
}

TEST_CASE("two-qubit Pauli basis is trace-orthogonal", "[construct]") {
  const auto e = construct_pauli(2);
  CHECK(e.index_group().order() == 16);
  CHECK(e.degree() == 4);
  CHECK(orthonormal_by_oracle(e));
  CHECK(equal_up_to_relabeling(e, tensor_basis(construct_pauli(1), construct_pauli(1))));
}

TEST_CASE("symmetric abelian bases", "[construct]") {
  const auto a2 = construct_symmetric_abelian({2});
  const auto p1 = construct_pauli(1);
  for (const auto& m : a2.monomial()) {
    bool found = false;
    for (const auto& p : p1.monomial()) found = found || m == p || m == p.scaled(kHalf);
    CHECK(found);
  }
  const auto a3 = construct_symmetric_abelian({3});
  CHECK(a3.index_group().order() == 9);
  CHECK(a3.degree() == 3);
  CHECK(orthonormal_by_oracle(a3));
  CHECK(equal_up_to_relabeling(construct_symmetric_abelian({2, 2}), construct_pauli(2)));
  CHECK(construct_symmetric_abelian({2, 3}).degree() == 6);
  CHECK_THROWS_AS(construct_symmetric_abelian({1}), ValidationError);
  CHECK_THROWS_AS(construct_symmetric_abelian({16, 17}), ValidationError);
}

TEST_CASE("H_n bases", "[construct]") {
  const auto h5 = construct_hn(5);
  CHECK(h5.degree() == 8);
  CHECK(hn_matrix_group(5).group.order() == 256);
  const auto h4 = construct_hn(4);
  CHECK(h4.degree() == 4);
  CHECK(h4.index_group().order() == 16);
  CHECK(h4.index_group().is_abelian());
  CHECK_FALSE(h5.index_group().is_abelian());
  CHECK(hn_rho_tau(5).phases()[2] == PhaseRational(25, 32));
  CHECK_THROWS_AS(construct_hn(2), ValidationError);
  CHECK_THROWS_AS(construct_hn(9), ValidationError);
}

TEST_CASE("H_n matrix group matches the affine group", "[construct][property]") {
  for (int n = 3; n <= 6; ++n) {
    const auto mats = hn_matrix_group(n);
    REQUIRE(mats.group.order() == (std::size_t{1} << (2 * n - 2)));
    const auto affine = hn_group(n);
    REQUIRE(fingerprint(mats.group) == fingerprint(affine.group));
    const auto qm = quotient(mats.group, center(mats.group)).group;
    const auto qa = quotient(affine.group, center(affine.group)).group;
    REQUIRE(fingerprint(qm) == fingerprint(qa));
    REQUIRE(fingerprint(qm) == fingerprint(construct_hn(n).index_group()));
  }
}

TEST_CASE("tensor products", "[construct]") {
  const auto p1 = construct_pauli(1);
  CHECK(equal_up_to_relabeling(tensor_basis(p1, trivial_basis()), p1));
  const auto t = tensor_basis(p1, construct_symmetric_abelian({3}));
  CHECK(t.degree() == 6);
  CHECK(t.index_group().order() == 36);
  CHECK(verify_nice(t).pass());
  CHECK_THROWS_AS(tensor_basis(construct_hn(7), construct_hn(7)), ValidationError);
}

TEST_CASE("verify_nice examples", "[verify]") {
  CHECK(verify_nice(construct_pauli(2)).pass());
  CHECK(verify_nice(construct_hn(6), 4).pass());
  const auto r = verify_nice(construct_pauli(1));
  REQUIRE(r.conditions.size() == 7);
  for (const auto& c : r.conditions) CHECK(c.pass);

  const auto bad = flip(construct_pauli(1), 1, 0);
  const auto rb = verify_nice(bad);
  CHECK_FALSE(rb.pass());
  const auto& closure = rb.condition("closure");
  CHECK_FALSE(closure.pass);
  REQUIRE_FALSE(closure.witnesses.empty());
  CHECK(closure.witnesses.front().find("(0,1)") != std::string::npos);
}

TEST_CASE("tampering the identity breaks condition (i)", "[verify]") {
  const auto r = verify_nice(flip(construct_pauli(1), 0, 1));
  CHECK_FALSE(r.condition("identity").pass);
  CHECK_FALSE(r.pass());
}

TEST_CASE("scalar non-identity element is caught", "[verify]") {
  // rho(g) = I for every g: closure holds but nothing else does
  const auto g = direct_product(cyclic_group(2), cyclic_group(2));
  const ErrorBasis e(g, std::vector<MonomialMatrix>(4, MonomialMatrix::identity(2)));
  const auto r = verify_nice(e);
  CHECK(r.condition("closure").pass);
  CHECK_FALSE(r.condition("faithful").pass);
  CHECK_FALSE(r.condition("trace").pass);
  CHECK_FALSE(r.condition("orthogonality").pass);
}

TEST_CASE("degree mismatch is reported, not thrown", "[verify]") {
  const ErrorBasis e(cyclic_group(3), std::vector<MonomialMatrix>(3, MonomialMatrix::identity(2)));
  const auto r = verify_nice(e);
  CHECK_FALSE(r.condition("degree").pass);
  CHECK_FALSE(r.pass());
}

TEST_CASE("witnesses are deterministic across job counts", "[verify]") {
  const auto bad = flip(construct_hn(4), 5, 1);
  const auto a = verify_nice(bad, 1), b = verify_nice(bad, 3);
  REQUIRE(a.conditions.size() == b.conditions.size());
  for (std::size_t i = 0; i < a.conditions.size(); ++i) {
    CHECK(a.conditions[i].failures == b.conditions[i].failures);
    CHECK(a.conditions[i].witnesses == b.conditions[i].witnesses);
    CHECK(a.conditions[i].witnesses.size() <= kMaxWitnesses);
  }
}

TEST_CASE("factor system examples", "[omega]") {
  const auto p1 = construct_pauli(1);
  const auto f = extract_factor_system(p1);
  CHECK(f.at(2, 1) == kHalf);
  CHECK(f.at(1, 2) == kOne);
  CHECK(f.is_normalized());
  for (const auto& e : constructed_bases()) {
    const auto w = extract_factor_system(e);
    for (Elem g = 0; g < e.index_group().order(); ++g) REQUIRE(w.at(0, g).is_one());
  }
  const auto f5 = extract_factor_system(construct_hn(5));
  for (const auto& p : f5.values()) CHECK(32 % p.den() == 0);
}

TEST_CASE("factor system agrees with dense products", "[omega][oracle]") {
  for (const auto& e : {construct_pauli(2), construct_hn(4), construct_symmetric_abelian({3})}) {
    const auto f = extract_factor_system(e);
    const auto& g = e.index_group();
    for (Elem a = 0; a < g.order(); ++a)
      for (Elem b = 0; b < g.order(); ++b) {
        const auto lhs = oracle::matmul(oracle::dense(e.monomial()[a]), oracle::dense(e.monomial()[b]));
        const auto c = oracle::scalar_ratio(lhs, oracle::dense(e.monomial()[g.mul(a, b)]));
        REQUIRE(c.has_value());
        REQUIRE(std::abs(*c - f.at(a, b).value()) < 1e-9);
      }
  }
}

TEST_CASE("extraction fails on a non-projective basis", "[omega]") {
  CHECK_THROWS_AS(extract_factor_system(flip(construct_pauli(1), 1, 0)), ValidationError);
}

TEST_CASE("cocycle check catches a broken table", "[omega]") {
  const auto f = extract_factor_system(construct_pauli(1));
  auto values = f.values();
  values[1 * 4 + 2] = PhaseRational(1, 4);
  CHECK(find_cocycle_violation(FactorSystem(f.group(), values)).has_value());
}

TEST_CASE("nearest root of unity", "[omega]") {
  CHECK(nearest_root_of_unity(PhaseRational(3, 7).value(), 1e-9) == PhaseRational(3, 7));
  CHECK(nearest_root_of_unity({1.001, 0.0}, 1e-9) == std::nullopt);
  CHECK(nearest_root_of_unity(std::polar(1.0, 0.123), 1e-9) == std::nullopt);
}

TEST_CASE("basis invariants", "[verify][property]") {
  for (const auto& e : constructed_bases()) {
    const auto n = static_cast<std::int64_t>(e.degree());
    CyclotomicSum total;
    for (const auto& m : e.monomial()) {
      const auto t = mono_trace(m);
      total = total + t * t.conj();
    }
    REQUIRE(sum_is_zero(total - CyclotomicSum::integer(n * n)));
    REQUIRE(verify_nice(e).pass());
    REQUIRE(orthonormal_by_oracle(e));
    const auto f = extract_factor_system(e);
    REQUIRE_FALSE(find_cocycle_violation(f).has_value());
  }
}

TEST_CASE("verdict matches trace orthogonality on mutated bases", "[verify][property]") {
  std::mt19937 rng(11);
  for (const auto& e : constructed_bases()) {
    // a 1x1 basis stays orthonormal under any phase change
    if (e.degree() == 1) continue;
    const std::size_t order = e.index_group().order();
    for (int t = 0; t < 6; ++t) {
      const auto g = static_cast<Elem>(rng() % order);
      const auto col = rng() % e.degree();
      const PhaseRational by(1 + static_cast<std::int64_t>(rng() % 3), 4);
      const auto bad = flip(e, g, col, by);
      INFO("element " << g << " column " << col);
      REQUIRE(verify_nice(bad).pass() == orthonormal_by_oracle(bad));
    }
  }
}

TEST_CASE("tensor products preserve the verdict", "[verify][property]") {
  const auto bases = constructed_bases();
  for (const auto& a : bases)
    for (const auto& b : bases) {
      if (a.degree() * b.degree() > 8) continue;
      REQUIRE(verify_nice(tensor_basis(a, b)).pass());
    }
}

TEST_CASE("dense verification path", "[verify]") {
  const auto p = construct_pauli(2);
  std::vector<DenseMatrix> ds;
  for (Elem g = 0; g < 16; ++g) ds.push_back(p.dense_at(g));
  const ErrorBasis dense(p.index_group(), ds);
  const auto r = verify_nice(dense);
  CHECK_FALSE(r.exact);
  CHECK(r.pass());
  for (auto& d : ds)
    for (auto& z : d.entries) z *= 1.001;
  const auto scaled = verify_nice(ErrorBasis(p.index_group(), ds));
  CHECK_FALSE(scaled.condition("unitary").pass);
}
