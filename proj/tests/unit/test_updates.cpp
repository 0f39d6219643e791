#include <cmath>

#include "doctest.h"

#include "cfs/errors.hpp"
#include "cfs/factorization.hpp"
#include "oracles.hpp"

using namespace cfs;
using cfs::testing::gnmf_step_reference;
using cfs::testing::random_weighted_graph;

namespace {

AdjacencyMatrix scalar_graph(double w) {
  return AdjacencyMatrix::from_edges(1, {{0, 0, w}});
}

LatentFactors scalar_pair(double u, double x) {
  LatentFactors f;
  f.U = Eigen::MatrixXd::Constant(1, 1, u);
  f.X = Eigen::MatrixXd::Constant(1, 1, x);
  f.tied = false;
  return f;
}

bool entries_match(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                   double rel) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double scale = std::max(std::abs(a(i, j)), std::abs(b(i, j)));
      if (std::abs(a(i, j) - b(i, j)) > rel * std::max(scale, 1e-300))
        return false;
    }
  return true;
}

}  // namespace

TEST_CASE("cfs step: exact symmetric factorization is a fixed point") {
  const auto graph = scalar_graph(1.0);
  const auto lap = build_laplacian(graph);
  for (double mu : {0.0, 0.5, 1.0})
    for (double lambda : {0.0, 2.0, 8.0}) {
      const auto next = cfs_update_step(graph, lap, scalar_pair(1.0, 1.0), mu, lambda);
      CHECK(next.U(0, 0) == 1.0);
      CHECK(next.X(0, 0) == 1.0);
    }
}

TEST_CASE("cfs step with both weights zero: scalar hand iteration") {
  const auto graph = scalar_graph(4.0);
  const auto lap = build_laplacian(graph);
  const auto next = cfs_update_step(graph, lap, scalar_pair(1.0, 1.0), 0.0, 0.0);
  CHECK(next.U(0, 0) == 4.0);       // 1 * 4/1
  CHECK(next.X(0, 0) == 1.0);       // 1 * 16/16, with the refreshed U
  CHECK(next.U(0, 0) * next.X(0, 0) == 4.0);  // exact fit after one sweep
}

TEST_CASE("cfs step degenerates to the nmf step entrywise") {
  RandomEngine rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto graph = random_weighted_graph(5, 0.7, rng);
    const auto lap = build_laplacian(graph);
    auto f = init_factors(5, 2, trial);
    for (int t = 0; t < 5; ++t) {
      const auto via_cfs = cfs_update_step(graph, lap, f, 0.0, 0.0);
      const auto via_nmf = nmf_update_step(graph, f);
      REQUIRE(entries_match(via_cfs.U, via_nmf.U, 1e-15));
      REQUIRE(entries_match(via_cfs.X, via_nmf.X, 1e-15));
      f = via_nmf;
    }
  }
}

TEST_CASE("cfs step with mu = 0 matches the reference graph-regularized rule") {
  RandomEngine rng(14);
  for (int trial = 0; trial < 8; ++trial) {
    const auto graph = random_weighted_graph(8, 0.5, rng);
    const auto lap = build_laplacian(graph);
    const auto f = init_factors(8, 3, trial);
    const double lambda = 0.5 + static_cast<double>(rng() % 5);

    const auto fast = cfs_update_step(graph, lap, f, 0.0, lambda);
    const auto slow = gnmf_step_reference(graph, lap, f, lambda);
    CHECK(entries_match(fast.U, slow.U, 1e-12));
    CHECK(entries_match(fast.X, slow.X, 1e-12));
  }
}

TEST_CASE("nmf step: scalar arithmetic and fixed point") {
  const auto graph = scalar_graph(4.0);
  const auto next = nmf_update_step(graph, scalar_pair(1.0, 1.0));
  CHECK(next.U(0, 0) == 4.0);

  // A = x x^T is an exact factorization, so the step must not move it.
  Eigen::MatrixXd x(2, 1);
  x << 1.0, 2.0;
  const auto exact = AdjacencyMatrix::from_edges(
      2, {{0, 0, 1.0}, {0, 1, 2.0}, {1, 1, 4.0}});
  LatentFactors f;
  f.U = x;
  f.X = x;
  const auto kept = nmf_update_step(exact, f);
  CHECK(kept.U == f.U);
  CHECK(kept.X == f.X);
}

TEST_CASE("nmf step does not increase the fit objective") {
  RandomEngine rng(15);
  const auto graph = random_weighted_graph(4, 0.8, rng);
  const auto lap = build_laplacian(graph);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = init_factors(4, 2, trial);
    const double before = objective(graph, lap, f, 0.0, 0.0);
    const double after = objective(graph, lap, nmf_update_step(graph, f), 0.0, 0.0);
    CHECK(after <= before + 1e-10);
  }
}

TEST_CASE("snmf step: damped scalar updates") {
  LatentFactors f;
  f.U = Eigen::MatrixXd::Ones(1, 1);
  f.tied = true;

  CHECK(snmf_update_step(scalar_graph(1.0), f).U(0, 0) == 1.0);  // 1/2 + 1/2
  CHECK(snmf_update_step(scalar_graph(4.0), f).U(0, 0) == 2.5);  // 1/2 + 2
}

TEST_CASE("update steps preserve nonnegativity") {
  RandomEngine rng(16);
  const auto graph = random_weighted_graph(12, 0.4, rng);
  const auto lap = build_laplacian(graph);

  auto pair = init_factors(12, 3, 0);
  auto single = init_factors(12, 3, 0, true);
  for (int t = 0; t < 50; ++t) {
    pair = cfs_update_step(graph, lap, pair, 0.25, 3.0);
    single = snmf_update_step(graph, single);
    CHECK(pair.U.minCoeff() >= 0.0);
    CHECK(pair.X.minCoeff() >= 0.0);
    CHECK(single.U.minCoeff() >= 0.0);
  }
}

TEST_CASE("steps reject the wrong factor layout") {
  const auto graph = scalar_graph(1.0);
  const auto lap = build_laplacian(graph);
  const auto tied = init_factors(1, 1, 0, true);
  const auto untied = init_factors(1, 1, 0);
  CHECK_THROWS_AS(nmf_update_step(graph, tied), ContractError);
  CHECK_THROWS_AS(cfs_update_step(graph, lap, tied, 0.0, 0.0), ContractError);
  CHECK_THROWS_AS(snmf_update_step(graph, untied), ContractError);
}

TEST_CASE("objective is non-increasing across models and weights") {
  RandomEngine rng(17);
  for (int instance = 0; instance < 10; ++instance) {
    const int n = 4 + static_cast<int>(rng() % 20);
    const int k = 1 + static_cast<int>(rng() % 4);
    const auto graph = random_weighted_graph(n, 0.4, rng);
    const auto lap = build_laplacian(graph);
    const double mu = std::vector<double>{0.0, 0.03125, 1.0}[rng() % 3];
    const double lambda = std::vector<double>{0.0, 1.0, 10.0}[rng() % 3];

    auto pair = init_factors(n, k, instance);
    double prev = objective(graph, lap, pair, mu, lambda);
    for (int t = 0; t < 20; ++t) {
      pair = cfs_update_step(graph, lap, pair, mu, lambda);
      const double cur = objective(graph, lap, pair, mu, lambda);
      REQUIRE(cur <= prev + 1e-10);
      prev = cur;
    }

    auto single = init_factors(n, k, instance, true);
    prev = objective(graph, lap, single, 0.0, 0.0);
    for (int t = 0; t < 20; ++t) {
      single = snmf_update_step(graph, single);
      const double cur = objective(graph, lap, single, 0.0, 0.0);
      REQUIRE(cur <= prev + 1e-10);
      prev = cur;
    }
  }
}
