#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "qwspec/errors.hpp"
#include "qwspec/spectral.hpp"
#include "support.hpp"

using namespace qwspec;
using std::numbers::pi;

namespace {

const EigItem* find_item(const std::vector<EigItem>& items, Complex value, Origin origin) {
  for (const EigItem& it : items) {
    if (it.origin == origin && std::abs(it.value - value) < 1e-8) return &it;
  }
  return nullptr;
}

// Multiplicity per eigenvalue summed over all report items.
Index total_at(const SpectralReport& rep, Complex value) {
  Index k = 0;
  for (const EigItem& it : rep.items) {
    if (std::abs(it.value - value) < 1e-8) k += it.multiplicity;
  }
  return k;
}

void check_against_test_oracle(const SpectralReport& rep, const WalkModel& m) {
  const auto values = test::eigenvalues_of(m.U());
  Index total = 0;
  for (const EigItem& it : rep.items) total += it.multiplicity;
  CHECK(total == m.m());
  std::vector<Complex> distinct;
  for (const EigItem& it : rep.items) {
    bool seen = false;
    for (Complex d : distinct) seen = seen || std::abs(d - it.value) < 1e-8;
    if (!seen) distinct.push_back(it.value);
  }
  for (Complex d : distinct) CHECK(total_at(rep, d) == test::count_near(values, d, 1e-6));
}

}  // namespace

TEST_CASE("joukowsky") {
  CHECK(std::abs(joukowsky(1.0) - 1.0) < 1e-15);
  CHECK(std::abs(joukowsky(Complex(0.0, 1.0))) < 1e-15);
  CHECK(std::abs(joukowsky(test::unit(2 * pi / 3)) - (-0.5)) < 1e-15);
  CHECK_THROWS_AS(joukowsky(0.0), Error);
}

TEST_CASE("joukowsky preimage") {
  const auto one = joukowsky_preimage(1.0);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == Complex(1.0, 0.0));
  const auto minus_one = joukowsky_preimage(-1.0);
  REQUIRE(minus_one.size() == 1);
  CHECK(minus_one[0] == Complex(-1.0, 0.0));

  const auto half = joukowsky_preimage(-0.5);
  REQUIRE(half.size() == 2);
  CHECK(std::abs(half[0] - test::unit(2 * pi / 3)) < 1e-15);
  CHECK(std::abs(half[1] - test::unit(-2 * pi / 3)) < 1e-15);

  const auto zero = joukowsky_preimage(0.0);
  REQUIRE(zero.size() == 2);
  CHECK(std::abs(zero[0] - Complex(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(zero[1] - Complex(0.0, -1.0)) < 1e-15);

  CHECK(joukowsky_preimage(1.0 + 1e-10).size() == 1);
  try {
    joukowsky_preimage(1.1);
    FAIL("expected OutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfRange);
  }
}

TEST_CASE("spectrum of T") {
  auto as_map = [](const std::vector<TCluster>& s) {
    std::vector<std::pair<double, Index>> out;
    for (const auto& c : s) out.emplace_back(c.mu, c.multiplicity);
    return out;
  };
  const auto c3 = spectrum_T(test::grover_model(test::cycle(3)));
  REQUIRE(c3.size() == 2);
  CHECK(c3[0].mu == 1.0);
  CHECK(c3[0].multiplicity == 1);
  CHECK(c3[1].mu == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(c3[1].multiplicity == 2);

  const auto c4 = as_map(spectrum_T(test::grover_model(test::cycle(4))));
  REQUIRE(c4.size() == 3);
  CHECK(c4[0] == std::pair<double, Index>{1.0, 1});
  CHECK(std::abs(c4[1].first) < 1e-12);
  CHECK(c4[1].second == 2);
  CHECK(c4[2] == std::pair<double, Index>{-1.0, 1});

  const auto k4 = spectrum_T(test::grover_model(test::complete(4)));
  REQUIRE(k4.size() == 2);
  CHECK(k4[0].multiplicity == 1);
  CHECK(k4[1].mu == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK(k4[1].multiplicity == 3);
  for (const auto& c : k4) CHECK(c.eigenbasis.dim() == c.multiplicity);
}

TEST_CASE("inherited eigensystem") {
  SUBCASE("C3") {
    const WalkModel m = test::grover_model(test::cycle(3));
    const auto items = inherited_eigensystem(m, spectrum_T(m));
    const EigItem* up = find_item(items, test::unit(2 * pi / 3), Origin::InheritedGeneric);
    const EigItem* down = find_item(items, test::unit(-2 * pi / 3), Origin::InheritedGeneric);
    REQUIRE(up != nullptr);
    REQUIRE(down != nullptr);
    CHECK(up->multiplicity == 2);
    CHECK(down->multiplicity == 2);
    const EigItem* plus = find_item(items, 1.0, Origin::InheritedPlusOne);
    REQUIRE(plus != nullptr);
    CHECK(plus->multiplicity == 1);
    // proportional to dA^* (1,1,1)
    CVector f = CVector::Constant(3, 1.0);
    const CVector v = m.dA().adjoint() * f;
    CHECK(plus->eigenbasis.distance_of(v / v.norm()) < 1e-12);
    CHECK((m.U() * v - v).norm() < 1e-12);
    for (const EigItem& it : items) {
      CHECK((m.U() * it.eigenbasis.basis() - it.value * it.eigenbasis.basis()).norm() < 1e-12);
    }
  }
  SUBCASE("C4 at -1") {
    const WalkModel m = test::grover_model(test::cycle(4));
    const auto items = inherited_eigensystem(m, spectrum_T(m));
    const EigItem* minus = find_item(items, -1.0, Origin::InheritedMinusOne);
    REQUIRE(minus != nullptr);
    CHECK(minus->multiplicity == 1);
    CHECK(minus->source_mu == -1.0);
  }
}

TEST_CASE("birth eigensystem") {
  CHECK(birth_eigensystem(test::grover_model(test::path2())).empty());

  const auto c3 = birth_eigensystem(test::grover_model(test::cycle(3)));
  REQUIRE(c3.size() == 1);
  CHECK(c3[0].value == Complex(1.0, 0.0));
  CHECK(c3[0].multiplicity == 1);
  CHECK(c3[0].origin == Origin::BirthPlusOne);

  const WalkModel k4 = test::grover_model(test::complete(4));
  const auto items = birth_eigensystem(k4);
  REQUIRE(items.size() == 2);
  CHECK(items[0].multiplicity == 3);
  CHECK(items[1].value == Complex(-1.0, 0.0));
  CHECK(items[1].multiplicity == 2);
  const Subspace im_l = image(k4.L());
  for (const EigItem& it : items) {
    const CMatrix& b = it.eigenbasis.basis();
    CHECK((k4.U() * b - it.value * b).norm() < 1e-12);
    CHECK((im_l.projector() * b).norm() < 1e-12);
  }
}

TEST_CASE("corollary multiplicities") {
  auto run = [](const Digraph& g) {
    const WalkModel m = test::grover_model(g);
    return corollary_multiplicities(g, spectrum_T(m));
  };
  const auto c3 = run(test::cycle(3));
  CHECK(c3.m_plus == 1);
  CHECK(c3.m_minus == 0);
  CHECK(c3.M_plus == 1);
  CHECK(c3.M_minus == 0);
  CHECK_FALSE(c3.bipartite);

  const auto c4 = run(test::cycle(4));
  CHECK(c4.m_plus == 1);
  CHECK(c4.m_minus == 1);
  CHECK(c4.M_plus == 1);
  CHECK(c4.M_minus == 1);
  CHECK(c4.bipartite);
  CHECK(c4.literal_m_minus == 1);

  const auto k4 = run(test::complete(4));
  CHECK(k4.m_plus == 1);
  CHECK(k4.m_minus == 0);
  CHECK(k4.M_plus == 3);
  CHECK(k4.M_minus == 2);

  const auto p2 = run(test::path2());
  CHECK(p2.M_plus == 0);
  CHECK(p2.M_minus == 0);

  const Digraph two = parse_graph("0 1\n1 2\n2 0\n3 4").graph;
  const auto split = run(two);
  CHECK_FALSE(split.connected);
  CHECK(split.components == 2);
}

TEST_CASE("full report on named graphs") {
  SUBCASE("C3") {
    const Digraph g = test::cycle(3);
    const WalkModel m = test::grover_model(g);
    const SpectralReport rep = full_report(m, &g);
    CHECK(rep.verdicts.all_pass());
    CHECK(total_at(rep, 1.0) == 2);
    CHECK(total_at(rep, test::unit(2 * pi / 3)) == 2);
    CHECK(total_at(rep, test::unit(-2 * pi / 3)) == 2);
    CHECK(find_item(rep.items, 1.0, Origin::InheritedPlusOne)->multiplicity == 1);
    CHECK(find_item(rep.items, 1.0, Origin::BirthPlusOne)->multiplicity == 1);
    check_against_test_oracle(rep, m);
  }
  SUBCASE("C4") {
    const Digraph g = test::cycle(4);
    const WalkModel m = test::grover_model(g);
    const SpectralReport rep = full_report(m, &g);
    CHECK(rep.verdicts.all_pass());
    for (Complex z : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) CHECK(total_at(rep, z) == 2);
    CHECK(find_item(rep.items, 1.0, Origin::BirthPlusOne)->multiplicity == 1);
    CHECK(find_item(rep.items, -1.0, Origin::InheritedMinusOne)->multiplicity == 1);
    CHECK(find_item(rep.items, -1.0, Origin::BirthMinusOne)->multiplicity == 1);
    check_against_test_oracle(rep, m);
  }
  SUBCASE("P2") {
    const Digraph g = test::path2();
    const WalkModel m = test::grover_model(g);
    const SpectralReport rep = full_report(m, &g);
    CHECK(rep.verdicts.all_pass());
    REQUIRE(rep.items.size() == 2);
    for (const EigItem& it : rep.items) CHECK_FALSE(is_birth(it.origin));
    CHECK(total_at(rep, 1.0) == 1);
    CHECK(total_at(rep, -1.0) == 1);
    CHECK(rep.birth_dim == 0);
  }
  SUBCASE("K4") {
    const Digraph g = test::complete(4);
    const WalkModel m = test::grover_model(g);
    const SpectralReport rep = full_report(m, &g);
    CHECK(rep.verdicts.all_pass());
    const double theta = std::acos(-1.0 / 3.0);
    CHECK(total_at(rep, 1.0) == 4);
    CHECK(total_at(rep, -1.0) == 2);
    CHECK(total_at(rep, test::unit(theta)) == 3);
    CHECK(total_at(rep, test::unit(-theta)) == 3);
    CHECK(find_item(rep.items, -1.0, Origin::InheritedMinusOne) == nullptr);
    check_against_test_oracle(rep, m);
  }
  SUBCASE("K_{1,3}") {
    const Digraph g = test::star(3);
    const WalkModel m = test::grover_model(g);
    const SpectralReport rep = full_report(m, &g);
    CHECK(rep.verdicts.all_pass());
    CHECK(rep.birth_dim == 0);
    CHECK(total_at(rep, Complex(0, 1)) == 2);
    check_against_test_oracle(rep, m);
  }
}

TEST_CASE("oracle clusters wrap around -1") {
  const auto oracle = oracle_eigensystem(test::grover_model(test::cycle(4)).U());
  Index at_minus_one = 0;
  for (const auto& c : oracle) {
    if (angular_distance(c.value, -1.0) < 1e-8) at_minus_one += c.multiplicity;
    CHECK(c.eigenspace.dim() == c.multiplicity);
  }
  CHECK(at_minus_one == 2);
  CHECK(oracle.size() == 4);
}

TEST_CASE("generalized eigenspace at +1 and -1 lifts to the oracle eigenspace") {
  for (const Digraph& g : {test::cycle(3), test::cycle(4), test::cycle(6), test::complete(4)}) {
    const WalkModel m = test::grover_model(g);
    const Subspace im_l = image(m.L());
    for (const int sign : {1, -1}) {
      const Subspace lifted = pm1_inherited_eigenspace(m, sign);
      const Subspace direct = intersect(kernel(m.U() - double(sign) * CMatrix::Identity(m.m(), m.m())), im_l);
      CHECK(subspace_equal(lifted, direct, 1e-7).equal);
      const bool bipartite = is_bipartite(g);
      CHECK(lifted.dim() == (sign > 0 ? 1 : (bipartite ? 1 : 0)));
    }
  }
}

TEST_CASE("disconnected graph gets a connectivity warning") {
  const Digraph g = parse_graph("0 1\n1 2\n2 0\n3 4").graph;
  const SpectralReport rep = full_report(test::grover_model(g), &g);
  bool warned = false;
  for (const auto& w : rep.warnings) warned = warned || w.find("Connectivity") != std::string::npos;
  CHECK(warned);
  REQUIRE(rep.corollary.has_value());
  // per-component sum: triangle gives (1,0), the edge gives (0,0)
  CHECK(rep.corollary->M_plus == 1);
  CHECK(rep.verdicts.all_pass());
}

TEST_CASE("abstract report has no corollary") {
  const WalkModel m = test::grover_model(test::cycle(4));
  const SpectralReport rep = full_report(m, nullptr);
  CHECK_FALSE(rep.corollary.has_value());
  CHECK(rep.verdicts.all_pass());
}
