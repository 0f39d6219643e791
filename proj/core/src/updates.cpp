#include <Eigen/Core>

#include "cfs/errors.hpp"
#include "cfs/factorization.hpp"

namespace cfs {
namespace {

void require_untied(const LatentFactors& f, const char* rule) {
  if (f.tied)
    throw ContractError(std::string(rule) + " needs a two-factor model");
}

}  // namespace

LatentFactors nmf_update_step(const AdjacencyMatrix& graph,
                              const LatentFactors& f, double eps_guard) {
  require_untied(f, "nmf_update_step");
  const auto& a = graph.weights();

  LatentFactors next;
  next.tied = false;

  Eigen::MatrixXd num = a * f.X;
  Eigen::MatrixXd den = f.U * (f.X.transpose() * f.X);
  next.U = f.U.cwiseProduct(num.cwiseQuotient(den.cwiseMax(eps_guard)));

  num = a * next.U;  // A is symmetric, so A^T U = A U
  den = f.X * (next.U.transpose() * next.U);
  next.X = f.X.cwiseProduct(num.cwiseQuotient(den.cwiseMax(eps_guard)));
  return next;
}

LatentFactors snmf_update_step(const AdjacencyMatrix& graph,
                               const LatentFactors& f, double eps_guard) {
  if (!f.tied)
    throw ContractError("snmf_update_step needs the tied single-factor model");

  const Eigen::MatrixXd num = graph.weights() * f.U;
  const Eigen::MatrixXd den = 2.0 * (f.U * (f.U.transpose() * f.U));

  LatentFactors next;
  next.tied = true;
  next.U = f.U.cwiseProduct(
      (num.cwiseQuotient(den.cwiseMax(eps_guard)).array() + 0.5).matrix());
  return next;
}

LatentFactors cfs_update_step(const AdjacencyMatrix& graph,
                              const LaplacianPair& lap, const LatentFactors& f,
                              double mu, double lambda, double eps_guard) {
  require_untied(f, "cfs_update_step");
  const auto& a = graph.weights();

  // U sweep against the current X.
  const Eigen::MatrixXd ax = a * f.X;
  Eigen::MatrixXd num = ax;
  if (mu != 0.0) num.noalias() += mu * (f.X * (f.U.transpose() * f.X));
  Eigen::MatrixXd den = f.U * (f.X.transpose() * f.X);
  if (mu != 0.0) den *= 1.0 + mu;

  LatentFactors next;
  next.tied = false;
  next.U = f.U.cwiseProduct(num.cwiseQuotient(den.cwiseMax(eps_guard)));

  // X sweep against the refreshed U; the graph terms reuse A X from above
  // (W = A) and the degree product keeps the Laplacian implicit.
  num = a * next.U;
  if (mu != 0.0) num.noalias() += mu * (next.U * (f.X.transpose() * next.U));
  if (lambda != 0.0) num.noalias() += lambda * ax;
  den = f.X * (next.U.transpose() * next.U);
  if (mu != 0.0) den *= 1.0 + mu;
  if (lambda != 0.0)
    den.noalias() += lambda * (lap.degrees.asDiagonal() * f.X);
  next.X = f.X.cwiseProduct(num.cwiseQuotient(den.cwiseMax(eps_guard)));
  return next;
}

}  // namespace cfs
