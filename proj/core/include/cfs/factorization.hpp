#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

#include "cfs/adjacency.hpp"

namespace cfs {

/// Factorization models. gnmf is not listed: it is exactly cfs with mu = 0.
enum class Model { nmf, snmf, cfs };

std::string to_string(Model m);

/// Nonnegative factor pair whose product U * X^T approximates the adjacency
/// matrix. The rows of X are the node representations used for community
/// assignment. The snmf model ties both roles to a single matrix; tied
/// factors store only U and rep() resolves to it.
struct LatentFactors {
  Eigen::MatrixXd U;
  Eigen::MatrixXd X;  // empty when tied
  bool tied = false;

  const Eigen::MatrixXd& rep() const noexcept { return tied ? U : X; }
  Eigen::Index node_count() const noexcept { return U.rows(); }
  Eigen::Index rank() const noexcept { return U.cols(); }
  bool all_finite() const;
};

struct SolverConfig {
  Model model = Model::cfs;
  double mu = 0.03125;   // symmetry-regularizer weight, >= 0
  double lambda = 10.0;  // graph-regularizer weight, >= 0
  int k = 2;             // community count
  int max_iters = 500;
  double tol = 1e-6;     // relative objective-change stopping threshold
  std::uint64_t seed = 0;
  double eps_guard = 1e-12;  // denominator floor

  /// Throws ContractError when any field is out of range.
  void validate() const;
};

struct SolveResult {
  LatentFactors factors;
  /// Objective value at initialization followed by one value per iteration;
  /// non-increasing up to rounding noise.
  std::vector<double> objective_trace;
  double kkt_residual = 0.0;
  int iterations_run = 0;
  bool converged = false;
  double wall_seconds = 0.0;
};

/// Entries i.i.d. uniform on (0, 1]; multiplicative updates cannot revive an
/// exact zero, so the open interval matters. Identical seeds reproduce
/// identical matrices. tied=true draws the single-factor layout.
LatentFactors init_factors(int node_count, int k, std::uint64_t seed,
                           bool tied = false);

/// Loss of the factor pair against the graph:
///
///   ||A - U X^T||_F^2  +  (mu/2) ||U X^T - X U^T||_F^2  +  lambda tr(X^T L X)
///
/// evaluated in that term order through K x K Gram products, so no n x n
/// matrix is formed; the Laplacian quadratic form uses the degree/weights
/// pair directly. Tied factors evaluate the single-factor form (the symmetry
/// term vanishes identically). Large reductions use compensated summation.
double objective(const AdjacencyMatrix& graph, const LaplacianPair& lap,
                 const LatentFactors& f, double mu, double lambda);

/// Gradients of the objective with respect to U and X. For tied factors only
/// U is populated.
struct Gradients {
  Eigen::MatrixXd U;
  Eigen::MatrixXd X;
};

Gradients gradients(const AdjacencyMatrix& graph, const LaplacianPair& lap,
                    const LatentFactors& f, double mu, double lambda);

/// First-order stationarity measure for the nonnegativity-constrained
/// problem: max over all factor entries of |min(entry, gradient)|. Zero
/// exactly when the KKT conditions (stationarity plus complementary
/// slackness) hold.
double kkt_residual(const AdjacencyMatrix& graph, const LaplacianPair& lap,
                    const LatentFactors& f, double mu, double lambda);

/// One multiplicative update sweep of the plain two-factor model:
///   u <- u (A X) / (U X^T X),   x <- x (A^T U) / (X U^T U),
/// with X updated against the refreshed U. Denominators are floored at
/// eps_guard. Kept as a standalone implementation; the cfs step with
/// mu = lambda = 0 must reproduce it entrywise.
LatentFactors nmf_update_step(const AdjacencyMatrix& graph,
                              const LatentFactors& f,
                              double eps_guard = 1e-12);

/// One damped single-factor update:  u <- u (1/2 + (A U) / (2 U U^T U)).
/// The damping stabilizes the otherwise oscillation-prone plain rule.
LatentFactors snmf_update_step(const AdjacencyMatrix& graph,
                               const LatentFactors& f,
                               double eps_guard = 1e-12);

/// One symmetry- and graph-regularized update sweep:
///
///   u <- u (A X + mu X U^T X) / ((1+mu) U X^T X)
///   x <- x (A U + mu U X^T U + lambda W X) / ((1+mu) X U^T U + lambda D X)
///
/// U first, then X against the refreshed U; W = A. With mu = 0 this is the
/// graph-regularized (gnmf) rule, with mu = lambda = 0 the plain nmf rule.
LatentFactors cfs_update_step(const AdjacencyMatrix& graph,
                              const LaplacianPair& lap, const LatentFactors& f,
                              double mu, double lambda,
                              double eps_guard = 1e-12);

/// Runs the configured model from a seeded initialization until the relative
/// objective change drops below tol or max_iters is reached. nmf and snmf
/// ignore mu and lambda. Throws NumericalError when factors leave the finite
/// range, tagged with the iteration.
SolveResult solve(const AdjacencyMatrix& graph, const LaplacianPair& lap,
                  const SolverConfig& config);

}  // namespace cfs
