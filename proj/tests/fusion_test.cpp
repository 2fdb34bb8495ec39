#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/fusion.hpp"
#include "support.hpp"

using namespace fgmsc;

TEST_CASE("trans rearranges rows into per-sample slices") {
  AffinityGraph z1(2, 2), z2(2, 2);
  z1 << 0, 1, 1, 0;
  z2 << 0.5, 0.5, 0, 1;
  const auto slices = trans({z1, z2});
  REQUIRE(slices.size() == 2);
  CHECK(slices[0](0, 0) == 0.0);
  CHECK(slices[0](0, 1) == 1.0);
  CHECK(slices[0](1, 0) == 0.5);
  CHECK(slices[0](1, 1) == 0.5);

  const auto single = trans({z1});
  CHECK(single[1].rows() == 1);
  CHECK(single[1](0, 0) == 1.0);
}

TEST_CASE("trans and trans_inverse are exact mutual inverses") {
  Rng rng(8);
  std::vector<AffinityGraph> graphs;
  for (int v = 0; v < 3; ++v) graphs.push_back(test_support::random_matrix(rng, 5, 5, -1.0, 1.0));
  const auto round_trip = trans_inverse(trans(graphs));
  REQUIRE(round_trip.size() == graphs.size());
  for (std::size_t v = 0; v < graphs.size(); ++v) {
    CHECK((round_trip[v] - graphs[v]).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("trans_inverse rejects inconsistent shapes") {
  CHECK_THROWS_AS(trans_inverse({CrossViewSlice(2, 3)}), Error);
}

TEST_CASE("z-slice update: lambda = 0 returns the W slice") {
  Rng rng(4);
  const CrossViewSlice w = test_support::random_matrix(rng, 3, 6, 0.0, 1.0);
  const Vector a = test_support::random_simplex_vector(rng, 3);
  const Vector g = test_support::random_simplex_vector(rng, 6);
  const CrossViewSlice z = update_z_slice(w, a, g, 0.7, 0.0);
  CHECK((z - w).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("z-slice update: scalar case averages w and g") {
  CrossViewSlice w(1, 1);
  w << 0.3;
  Vector a(1), g(1);
  a << 1;
  g << 0.9;
  const CrossViewSlice z = update_z_slice(w, a, g, 1.0, 1.0);
  CHECK(z(0, 0) == doctest::Approx((0.3 + 0.9) / 2.0).epsilon(1e-12));
}

TEST_CASE("z-slice update solves the quadratic exactly (finite differences)") {
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const int t = rng.uniform_int(1, 4);
    const int n = rng.uniform_int(2, 6);
    const CrossViewSlice w = test_support::random_matrix(rng, t, n, 0.0, 1.0);
    const Vector a = test_support::random_simplex_vector(rng, t);
    const Vector g = test_support::random_simplex_vector(rng, n);
    const double alpha = rng.uniform(0.1, 2.0);
    const double lambda = rng.uniform(0.0, 3.0);

    const CrossViewSlice z = update_z_slice(w, a, g, alpha, lambda);
    const auto objective = [&](const Matrix& candidate) {
      return alpha * (w - candidate).squaredNorm() +
             lambda * (g.transpose() - a.transpose() * candidate).squaredNorm();
    };
    const Matrix grad = test_support::finite_difference_gradient(objective, z, 1e-6);
    CHECK(grad.cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("z-slice update validates arguments") {
  CrossViewSlice w(2, 3);
  w.setZero();
  Vector a(2), g(3);
  a.setConstant(0.5);
  g.setConstant(1.0 / 3);
  CHECK_THROWS_AS(update_z_slice(w, a, g, 0.0, 1.0), Error);
  Vector wrong(3);
  wrong.setZero();
  CHECK_THROWS_AS(update_z_slice(w, wrong, g, 1.0, 1.0), Error);
}

TEST_CASE("row clipping and normalization") {
  Vector row(3);
  row << -0.2, 0.6, 0.6;
  const Vector out = clip_normalize_row(row, 0);
  CHECK(out[0] == 0.0);
  CHECK(out[1] == doctest::Approx(0.5));
  CHECK(out[2] == doctest::Approx(0.5));

  const Vector zero = clip_normalize_row(Vector::Zero(4), 0);
  CHECK(zero[0] == 0.0);
  for (int j = 1; j < 4; ++j) CHECK(zero[j] == doctest::Approx(1.0 / 3));
}

TEST_CASE("postprocess keeps symmetric row-stochastic graphs fixed") {
  AffinityGraph g(3, 3);
  g << 0, 0.5, 0.5, 0.5, 0, 0.5, 0.5, 0.5, 0;
  const auto out = postprocess_z({g});
  CHECK((out[0] - g).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("postprocess output is nonnegative and row-stochastic") {
  Rng rng(21);
  std::vector<AffinityGraph> graphs;
  for (int v = 0; v < 2; ++v) graphs.push_back(test_support::random_matrix(rng, 5, 5, -0.3, 1.0));
  const auto out = postprocess_z(graphs);
  for (const auto& graph : out) {
    CHECK(graph.minCoeff() >= 0.0);
    for (int i = 0; i < 5; ++i) CHECK(graph.row(i).sum() == doctest::Approx(1.0).epsilon(1e-9));
  }
  AffinityGraph bad = AffinityGraph::Constant(2, 2, std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(postprocess_z({bad}), Error);
}

TEST_CASE("a-column update: forced and symmetric cases") {
  {
    CrossViewSlice z(1, 3);
    z << 0.2, 0.5, 0.3;
    Vector g(3);
    g << 0.1, 0.4, 0.5;
    const Vector a = update_a_column(z, g, 1e-8);
    REQUIRE(a.size() == 1);
    CHECK(a[0] == doctest::Approx(1.0));
  }
  {
    CrossViewSlice z(2, 3);
    z << 0.2, 0.5, 0.3, 0.2, 0.5, 0.3;  // identical view rows
    Vector g(3);
    g << 0.1, 0.4, 0.5;
    const Vector a = update_a_column(z, g, 1e-8);
    CHECK(a[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(a[1] == doctest::Approx(0.5).epsilon(1e-6));
  }
}

TEST_CASE("a-column update matches the simplex grid oracle") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int t = rng.uniform_int(1, 3);
    const int n = rng.uniform_int(3, 6);
    const CrossViewSlice z = test_support::random_row_stochastic(rng, t, n);
    const Vector g = test_support::random_simplex_vector(rng, n);

    const Vector a = update_a_column(z, g, 1e-8);
    CHECK(a.minCoeff() >= 0.0);
    CHECK(std::abs(a.sum() - 1.0) <= 1e-9);

    const auto objective = [&](const Vector& candidate) {
      return (g.transpose() - candidate.transpose() * z).squaredNorm();
    };
    const Vector grid = test_support::simplex_grid_argmin(t, 1000, objective);
    CHECK(objective(a) <= objective(grid) + 1e-4);
  }
}

TEST_CASE("a-column ridge sensitivity stays small on well-conditioned slices") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const CrossViewSlice z = test_support::random_row_stochastic(rng, 3, 8);
    const Vector g = test_support::random_simplex_vector(rng, 8);
    const Vector bare = update_a_column(z, g, 0.0);
    const Vector ridged = update_a_column(z, g, 1e-8);
    CHECK((bare - ridged).cwiseAbs().maxCoeff() <= 1e-4);
  }
}

TEST_CASE("a-column update flags singular systems at ridge zero") {
  CrossViewSlice z(2, 3);
  z << 0.2, 0.5, 0.3, 0.2, 0.5, 0.3;  // T rows coincide -> singular Gram
  Vector g(3);
  g << 0.1, 0.4, 0.5;
  CHECK_THROWS_WITH_AS(update_a_column(z, g, 0.0), doctest::Contains("degenerate slice"), Error);
}

TEST_CASE("graph-level weights: forced, exact-match, and averaged cases") {
  Rng rng(51);
  const AffinityGraph z1 = test_support::random_row_stochastic(rng, 5, 5);
  const AffinityGraph z2 = test_support::random_row_stochastic(rng, 5, 5);

  const Vector single = update_a_graph_level(z1, {z1}, 1e-8);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == doctest::Approx(1.0));

  const Vector exact = update_a_graph_level(z1, {z1, z2}, 1e-8);
  CHECK(exact[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(exact[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));

  const AffinityGraph mean = 0.5 * (z1 + z2);
  const Vector balanced = update_a_graph_level(mean, {z1, z2}, 1e-8);
  CHECK(balanced[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(balanced[1] == doctest::Approx(0.5).epsilon(1e-6));

  const auto objective = [&](const Vector& a) {
    return (mean - a[0] * z1 - a[1] * z2).squaredNorm();
  };
  const Vector grid = test_support::simplex_grid_argmin(2, 1000, objective);
  CHECK(objective(balanced) <= objective(grid) + 1e-4);
}
