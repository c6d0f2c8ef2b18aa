#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qwspec/errors.hpp"
#include "qwspec/random_graph.hpp"
#include "qwspec/subspace.hpp"
#include "support.hpp"

using namespace qwspec;

namespace {

CMatrix random_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMatrix a(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) a(i, j) = Complex(normal(rng), normal(rng));
  }
  return a;
}

Subspace axis(Index d, Index k) {
  CMatrix b = CMatrix::Zero(d, 1);
  b(k, 0) = 1.0;
  return Subspace(b, 1e-12);
}

Subspace axes(Index d, std::initializer_list<Index> ks) {
  CMatrix b = CMatrix::Zero(d, static_cast<Index>(ks.size()));
  Index j = 0;
  for (Index k : ks) b(k, j++) = 1.0;
  return Subspace(b, 1e-12);
}

CMatrix I(Index d) { return CMatrix::Identity(d, d); }

}  // namespace

TEST_CASE("kernel examples") {
  const WalkModel m = test::grover_model(test::cycle(3));
  const Subspace k = kernel(I(3) - m.T());
  REQUIRE(k.dim() == 1);
  CVector ones = CVector::Constant(3, 1.0 / std::sqrt(3.0));
  CHECK(k.distance_of(ones) < 1e-12);

  CHECK(kernel(I(2)).dim() == 0);
  CHECK(kernel(CMatrix::Zero(2, 2)).dim() == 2);
}

TEST_CASE("generalized kernel examples") {
  const WalkModel m = test::grover_model(test::cycle(3));
  const auto g2 = generalized_kernel(I(6) - m.Ttilde(), 2);
  CHECK(g2.space.dim() == 2);
  CHECK(g2.stabilized);
  CHECK(g2.next_dim == 2);

  CMatrix jordan = CMatrix::Zero(2, 2);
  jordan(0, 1) = 1.0;
  CHECK(generalized_kernel(jordan, 1).space.dim() == 1);
  CHECK_FALSE(generalized_kernel(jordan, 1).stabilized);
  CHECK(generalized_kernel(jordan, 2).space.dim() == 2);

  const auto g3 = generalized_kernel(I(6) - m.Ttilde(), 3);
  CHECK(subspace_equal(g2.space, g3.space).equal);

  CHECK_THROWS_AS(generalized_kernel(jordan, 0), Error);
  const auto capped = generalized_kernel(jordan, 10);
  CHECK(capped.capped);
  CHECK(capped.power == 2);
}

TEST_CASE("image examples") {
  const WalkModel m = test::grover_model(test::path2());
  CHECK(image(m.L()).dim() == 2);
  CHECK(image(CMatrix::Zero(3, 2)).dim() == 0);
  CHECK(image(I(4)).dim() == 4);
}

TEST_CASE("intersect examples") {
  CHECK(subspace_equal(intersect(axis(3, 0), axis(3, 0)), axis(3, 0)).equal);
  CHECK(intersect(axis(3, 0), axis(3, 1)).dim() == 0);

  const WalkModel m = test::grover_model(test::cycle(3));
  const Subspace birth = intersect(kernel(m.dA()), kernel(I(6) + m.S()));
  REQUIRE(birth.dim() == 1);
  CHECK((m.U() * birth.basis() - birth.basis()).norm() < 1e-12);

  CHECK_THROWS_AS(intersect(axis(3, 0), axis(4, 0)), Error);
}

TEST_CASE("subspace_equal examples") {
  const auto same = subspace_equal(axes(3, {0, 1}), axes(3, {1, 0}));
  CHECK(same.equal);
  CHECK(same.distance < 1e-15);

  const auto ortho = subspace_equal(axis(2, 0), axis(2, 1));
  CHECK_FALSE(ortho.equal);
  CHECK(ortho.distance == doctest::Approx(std::sqrt(2.0)));

  for (const Digraph& g : {test::cycle(3), test::cycle(4), test::complete(4), test::star(3)}) {
    const WalkModel m = test::grover_model(g);
    const Index n2 = 2 * g.vertex_count();
    CHECK(subspace_equal(kernel(m.L()), kernel(I(n2) - m.Ttilde() * m.Ttilde())).equal);
  }
  CHECK_THROWS_AS(subspace_equal(axis(3, 0), axis(2, 0)), Error);
}

TEST_CASE("apply_map examples") {
  const Subspace a = axes(4, {1, 3});
  CHECK(subspace_equal(apply_map(I(4), a), a).equal);

  for (const Digraph& g : {test::path2(), test::cycle(3), test::complete(4)}) {
    const WalkModel m = test::grover_model(g);
    const Index n2 = 2 * g.vertex_count();
    CHECK(apply_map(m.L(), kernel(I(n2) - m.Ttilde() * m.Ttilde())).dim() == 0);
  }

  const WalkModel m = test::grover_model(test::cycle(3));
  const Subspace lifted = apply_map(m.L(), generalized_kernel(I(6) - m.Ttilde(), 2).space);
  REQUIRE(lifted.dim() == 1);
  CHECK((m.U() * lifted.basis() - lifted.basis()).norm() < 1e-12);

  CHECK_THROWS_AS(apply_map(I(3), a), Error);
}

TEST_CASE("rank-nullity on random low-rank matrices") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Index rows = 3 + trial % 7;
    const Index cols = 2 + (trial * 5) % 9;
    const Index rank = std::min(rows, cols) - trial % 3;
    const CMatrix a = random_matrix(rows, std::max<Index>(rank, 0), rng) *
                      random_matrix(std::max<Index>(rank, 0), cols, rng);
    const Subspace k = kernel(a);
    const Subspace im = image(a);
    CHECK(k.dim() + im.dim() == cols);
    CHECK(im.dim() == std::max<Index>(rank, 0));
    if (k.dim() > 0) CHECK((a * k.basis()).norm() < 1e-10 * std::max(1.0, a.norm()));
  }
}

TEST_CASE("direct sum: (U + W) ∩ V = U for U ⊂ V and V ∩ W = 0") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Index d = 9;
    const CMatrix vb = random_matrix(d, 4, rng);
    const Subspace v = span_of(vb);
    const Subspace u = span_of(vb.leftCols(2) * random_matrix(2, 2, rng));
    const Subspace w = span_of(random_matrix(d, 3, rng));
    REQUIRE(intersect(v, w).dim() == 0);
    const Subspace meet = intersect(sum(u, w), v);
    CHECK(meet.dim() == u.dim());
    for (Index j = 0; j < meet.dim(); ++j) CHECK(u.distance_of(meet.basis().col(j)) < 1e-9);
  }
}

TEST_CASE("kernels of I -+ Ttilde: tensor structure and stabilization") {
  std::mt19937_64 rng(9);
  std::vector<WalkModel> models;
  for (const Digraph& g : {test::cycle(3), test::cycle(4), test::complete(4), test::star(3), test::path2()}) {
    models.push_back(test::grover_model(g));
  }
  for (int i = 0; i < 5; ++i) {
    const Digraph g = random_connected_graph(4 + 2 * i, 0.5, rng);
    models.push_back(build_model(g, random_szegedy_weights(g, rng)));
  }
  for (const WalkModel& m : models) {
    const Index n = m.n();
    for (const double s : {1.0, -1.0}) {
      const Subspace kt = kernel(I(n) - s * m.T());
      const CMatrix shifted = I(2 * n) - s * m.Ttilde();
      for (int p = 2; p <= 4; ++p) {
        CHECK(generalized_kernel(shifted, p).space.dim() == 2 * kt.dim());
      }
      // ker(I -+ Ttilde) = {(f, -+ f)}
      CMatrix pairs(2 * n, kt.dim());
      pairs.topRows(n) = kt.basis() / std::sqrt(2.0);
      pairs.bottomRows(n) = -s * kt.basis() / std::sqrt(2.0);
      const Subspace want(pairs, 1e-12);
      CHECK(subspace_equal(kernel(shifted), want).equal);
    }
  }
}

TEST_CASE("orthogonal complement and complement within") {
  const Subspace a = axes(4, {0, 2});
  const Subspace c = orthogonal_complement(a);
  CHECK(c.dim() == 2);
  CHECK(subspace_equal(c, axes(4, {1, 3})).equal);
  const Subspace inner = axis(4, 0);
  const Subspace rest = complement_within(inner, a);
  CHECK(subspace_equal(rest, axis(4, 2)).equal);
  CHECK(orthogonal_complement(Subspace::zero(3)).dim() == 3);
}

TEST_CASE("non-orthonormal basis is rejected") {
  CMatrix b(2, 1);
  b << 1.0, 1.0;
  CHECK_THROWS_AS(Subspace(b, 1e-12), Error);
}
