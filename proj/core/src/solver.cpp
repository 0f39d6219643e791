#include <chrono>
#include <cmath>

#include "cfs/errors.hpp"
#include "cfs/factorization.hpp"

namespace cfs {

SolveResult solve(const AdjacencyMatrix& graph, const LaplacianPair& lap,
                  const SolverConfig& config) {
  config.validate();
  if (lap.degrees.size() != graph.node_count())
    throw ContractError("degree vector does not match the graph");

  const bool tied = config.model == Model::snmf;
  // nmf minimizes the plain fit and snmf the single-factor fit; only the cfs
  // rule carries the regularizer weights.
  const double mu = config.model == Model::cfs ? config.mu : 0.0;
  const double lambda = config.model == Model::cfs ? config.lambda : 0.0;

  const auto start = std::chrono::steady_clock::now();

  SolveResult result;
  result.factors = init_factors(graph.node_count(), config.k, config.seed, tied);
  result.objective_trace.reserve(static_cast<std::size_t>(config.max_iters) + 1);

  double previous = objective(graph, lap, result.factors, mu, lambda);
  result.objective_trace.push_back(previous);

  for (int t = 1; t <= config.max_iters; ++t) {
    switch (config.model) {
      case Model::nmf:
        result.factors = nmf_update_step(graph, result.factors, config.eps_guard);
        break;
      case Model::snmf:
        result.factors = snmf_update_step(graph, result.factors, config.eps_guard);
        break;
      case Model::cfs:
        result.factors = cfs_update_step(graph, lap, result.factors, mu, lambda,
                                         config.eps_guard);
        break;
    }
    if (!result.factors.all_finite())
      throw NumericalError("factor entries left the finite range", t);

    const double current = objective(graph, lap, result.factors, mu, lambda);
    result.objective_trace.push_back(current);
    result.iterations_run = t;

    if (std::abs(current - previous) / std::max(previous, config.eps_guard) <
        config.tol) {
      result.converged = true;
      break;
    }
    previous = current;
  }

  result.kkt_residual = kkt_residual(graph, lap, result.factors, mu, lambda);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace cfs
