#include <cmath>
#include <numeric>

#include "doctest.h"

#include "cfs/errors.hpp"
#include "cfs/metrics.hpp"
#include "oracles.hpp"

using namespace cfs;
using cfs::testing::brute_ari;
using cfs::testing::brute_nmi;
using cfs::testing::pair_sum_modularity;
using cfs::testing::random_partition;
using cfs::testing::random_weighted_graph;

namespace {

Partition labels(std::vector<int> v) {
  const int k = v.empty() ? 0 : *std::max_element(v.begin(), v.end()) + 1;
  return Partition{std::move(v), k};
}

// Two triangles joined by one bridge edge 2-3.
AdjacencyMatrix two_triangles() {
  return AdjacencyMatrix::from_edges(6, {{0, 1, 1.0},
                                         {1, 2, 1.0},
                                         {0, 2, 1.0},
                                         {3, 4, 1.0},
                                         {4, 5, 1.0},
                                         {3, 5, 1.0},
                                         {2, 3, 1.0}});
}

}  // namespace

TEST_CASE("modularity of the all-in-one partition is exactly zero") {
  RandomEngine rng(41);
  const auto g = random_weighted_graph(15, 0.4, rng);
  CHECK(modularity(g, labels(std::vector<int>(15, 0))) == 0.0);
}

TEST_CASE("modularity hand values are exact") {
  CHECK(modularity(two_triangles(), labels({0, 0, 0, 1, 1, 1})) == 5.0 / 14.0);

  const auto triangle =
      AdjacencyMatrix::from_edges(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  CHECK(modularity(triangle, labels({0, 1, 2})) == -1.0 / 3.0);
}

TEST_CASE("grouped form agrees with the pair-sum oracle") {
  RandomEngine rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 20);
    auto g = random_weighted_graph(n, 0.5, rng);
    if (g.total_weight() == 0.0) continue;
    const auto p = random_partition(n, 1 + static_cast<int>(rng() % 5), rng);
    const double fast = modularity(g, p);
    CHECK(fast == doctest::Approx(pair_sum_modularity(g, p)).epsilon(1e-12));
    CHECK(fast >= -0.5);
    CHECK(fast <= 1.0);
  }
}

TEST_CASE("modularity error paths") {
  const auto empty = AdjacencyMatrix::from_edges(3, {});
  CHECK_THROWS_AS(modularity(empty, labels({0, 1, 0})), MetricError);
  CHECK_THROWS_AS(modularity(two_triangles(), labels({0, 1})), ContractError);
}

TEST_CASE("nmi conventions") {
  // identical up to names; 1 at machine precision and never above it
  CHECK(nmi(labels({0, 1, 0, 2}), labels({2, 0, 2, 1})) >= 1.0 - 1e-15);
  CHECK(nmi(labels({0, 1, 0, 2}), labels({2, 0, 2, 1})) <= 1.0);
  CHECK(nmi(labels({0, 0, 0}), labels({0, 1, 2})) == 0.0);        // one side trivial
  CHECK(nmi(labels({0, 0, 0}), labels({0, 0, 0})) == 1.0);        // both trivial
  CHECK_THROWS_AS(nmi(labels({0, 1}), labels({0, 1, 0})), ContractError);
}

TEST_CASE("nmi matches the direct-summation oracle") {
  const auto a = labels({0, 0, 1});
  const auto b = labels({0, 1, 1});
  CHECK(nmi(a, b) == doctest::Approx(brute_nmi(a, b)).epsilon(1e-12));

  RandomEngine rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_partition(30, 4, rng);
    const auto q = random_partition(30, 3, rng);
    CHECK(nmi(p, q) == doctest::Approx(brute_nmi(p, q)).epsilon(1e-12));
    CHECK(nmi(p, q) == doctest::Approx(nmi(q, p)).epsilon(1e-13));
    CHECK(nmi(p, q) >= 0.0);
    CHECK(nmi(p, q) <= 1.0);
  }
}

TEST_CASE("nmi is invariant under label permutation") {
  const auto p = labels({0, 1, 2, 1, 0, 2, 2});
  const auto q = labels({1, 1, 0, 0, 2, 2, 0});
  Partition renamed = q;
  for (int& v : renamed.labels) v = (v + 2) % 3;
  CHECK(nmi(p, q) == doctest::Approx(nmi(p, renamed)).epsilon(1e-14));
}

TEST_CASE("ari agreement and hand value") {
  CHECK(ari(labels({0, 0, 1, 1}), labels({1, 1, 0, 0})) == 1.0);
  // {a,b}{c} against {a}{b,c}
  CHECK(ari(labels({0, 0, 1}), labels({0, 1, 1})) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(brute_ari(labels({0, 0, 1}), labels({0, 1, 1})) ==
        doctest::Approx(-0.5).epsilon(1e-14));
  CHECK_THROWS_AS(ari(labels({0}), labels({0})), MetricError);
}

TEST_CASE("ari matches the pair-counting oracle and ignores label names") {
  RandomEngine rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_partition(25, 3, rng);
    const auto q = random_partition(25, 4, rng);
    CHECK(ari(p, q) == doctest::Approx(brute_ari(p, q)).epsilon(1e-12));
    CHECK(ari(p, q) == doctest::Approx(ari(q, p)).epsilon(1e-13));

    Partition renamed = q;
    for (int& v : renamed.labels) v = (v + 1) % q.community_count;
    CHECK(ari(p, renamed) == doctest::Approx(ari(p, q)).epsilon(1e-14));
  }
}

TEST_CASE("ari of independent partitions is centered on zero") {
  RandomEngine rng(45);
  double total = 0.0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const auto p = random_partition(60, 3, rng);
    const auto q = random_partition(60, 3, rng);
    total += ari(p, q);
  }
  CHECK(std::abs(total / trials) <= 0.05);
}

TEST_CASE("asymmetry") {
  SUBCASE("identical factors give zero") {
    LatentFactors f;
    f.U = Eigen::MatrixXd::Random(5, 2).cwiseAbs();
    f.X = f.U;
    CHECK(asymmetry(f) == 0.0);
  }
  SUBCASE("scalar factors are always symmetric") {
    LatentFactors f;
    f.U = Eigen::MatrixXd::Constant(1, 1, 0.3);
    f.X = Eigen::MatrixXd::Constant(1, 1, 0.9);
    CHECK(asymmetry(f) == 0.0);
  }
  SUBCASE("orthogonal rank-one pair") {
    LatentFactors f;
    f.U.resize(2, 1);
    f.X.resize(2, 1);
    f.U << 1.0, 0.0;
    f.X << 0.0, 1.0;
    CHECK(asymmetry(f) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  }
  SUBCASE("tied factors short-circuit to zero") {
    LatentFactors f;
    f.tied = true;
    f.U = Eigen::MatrixXd::Random(4, 2).cwiseAbs();
    CHECK(asymmetry(f) == 0.0);
  }
  SUBCASE("matches the dense defect on random factors") {
    RandomEngine rng(46);
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = init_factors(9, 3, trial);
      const Eigen::MatrixXd m = f.U * f.X.transpose();
      const double expected = (m - m.transpose()).norm() / m.norm();
      CHECK(asymmetry(f) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("metrics tolerate communities that won no nodes") {
  // A 3-community partition that realizes only labels 0 and 2.
  const Partition sparse_labels{{0, 0, 2, 2, 2, 0}, 3};
  const auto g = two_triangles();

  CHECK(modularity(g, sparse_labels) == modularity(g, labels({0, 0, 1, 1, 1, 0})));

  const auto dense_labels = labels({0, 0, 1, 1, 1, 0});
  CHECK(nmi(sparse_labels, dense_labels) >= 1.0 - 1e-15);
  CHECK(ari(sparse_labels, dense_labels) == 1.0);
}

TEST_CASE("friedman ranks") {
  SUBCASE("two models, one dataset") {
    ScoreTable t;
    t.datasets = {"d"};
    t.models = {"a", "b"};
    t.values.resize(1, 2);
    t.values << 0.9, 0.1;
    CHECK(friedman_ranks(t) == std::vector<double>{1.0, 2.0});
  }
  SUBCASE("ties share the average rank") {
    ScoreTable t;
    t.datasets = {"d"};
    t.models = {"a", "b"};
    t.values.resize(1, 2);
    t.values << 0.5, 0.5;
    CHECK(friedman_ranks(t) == std::vector<double>{1.5, 1.5});
  }
  SUBCASE("rows average") {
    ScoreTable t;
    t.datasets = {"d1", "d2"};
    t.models = {"a", "b", "c"};
    t.values.resize(2, 3);
    t.values << 3.0, 2.0, 1.0,  //
        1.0, 2.0, 3.0;
    CHECK(friedman_ranks(t) == std::vector<double>{2.0, 2.0, 2.0});
  }
  SUBCASE("empty tables are rejected") {
    ScoreTable t;
    CHECK_THROWS_AS(friedman_ranks(t), ContractError);
  }
}
