#include "cfs/factorization.hpp"

#include <cmath>

#include "cfs/errors.hpp"
#include "cfs/random.hpp"

namespace cfs {
namespace {

// Kahan-Babuska accumulator; the solver evaluates the objective every
// iteration and the monotonicity contract leaves only 1e-10 of slack, so the
// long elementwise reductions are compensated.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      carry_ += (sum_ - t) + v;
    else
      carry_ += (v - t) + sum_;
    sum_ = t;
  }

  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double dot_entries(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  CompensatedSum s;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) s.add(a(i, j) * b(i, j));
  return s.value();
}

// sum_i degrees[i] * ||row_i(m)||^2, the degree half of the Laplacian
// quadratic form.
double degree_quadratic(const Eigen::VectorXd& degrees, const Eigen::MatrixXd& m) {
  CompensatedSum s;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      s.add(degrees[i] * m(i, j) * m(i, j));
  return s.value();
}

void check_shapes(const AdjacencyMatrix& graph, const LaplacianPair& lap,
                  const LatentFactors& f) {
  const auto n = static_cast<Eigen::Index>(graph.node_count());
  if (f.U.rows() != n)
    throw ContractError("factor row count does not match the graph");
  if (lap.degrees.size() != n)
    throw ContractError("degree vector does not match the graph");
  if (f.U.cols() < 1) throw ContractError("factors need at least one column");
  if (!f.tied && (f.X.rows() != f.U.rows() || f.X.cols() != f.U.cols()))
    throw ContractError("U and X must have identical shapes");
}

}  // namespace

std::string to_string(Model m) {
  switch (m) {
    case Model::nmf: return "nmf";
    case Model::snmf: return "snmf";
    case Model::cfs: return "cfs";
  }
  return "unknown";
}

bool LatentFactors::all_finite() const {
  return U.allFinite() && (tied || X.allFinite());
}

void SolverConfig::validate() const {
  if (!(mu >= 0.0) || !std::isfinite(mu))
    throw ContractError("mu must be finite and >= 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw ContractError("lambda must be finite and >= 0");
  if (k < 1) throw ContractError("k must be >= 1");
  if (max_iters < 1) throw ContractError("max_iters must be >= 1");
  if (!(tol > 0.0)) throw ContractError("tol must be > 0");
  if (!(eps_guard > 0.0)) throw ContractError("eps_guard must be > 0");
}

LatentFactors init_factors(int node_count, int k, std::uint64_t seed, bool tied) {
  if (node_count < 1 || k < 1)
    throw ContractError("node count and k must be >= 1");

  RandomEngine rng(seed);
  auto draw = [&rng](Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        m(i, j) = uniform_positive(rng);
  };

  LatentFactors f;
  f.tied = tied;
  f.U.resize(node_count, k);
  draw(f.U);
  if (!tied) {
    f.X.resize(node_count, k);
    draw(f.X);
  }
  return f;
}

double objective(const AdjacencyMatrix& graph, const LaplacianPair& lap,
                 const LatentFactors& f, double mu, double lambda) {
  check_shapes(graph, lap, f);
  const Eigen::MatrixXd& u = f.U;
  const Eigen::MatrixXd& x = f.rep();

  const Eigen::MatrixXd ax = graph.weights() * x;
  const Eigen::MatrixXd gram_u = u.transpose() * u;
  const Eigen::MatrixXd gram_x = f.tied ? gram_u : Eigen::MatrixXd(x.transpose() * x);

  // ||A - U X^T||^2 = ||A||^2 - 2 <A X, U> + tr((U^T U)(X^T X))
  const double fit_cross = dot_entries(ax, u);
  const double approx_sq = gram_u.cwiseProduct(gram_x).sum();
  double value = graph.squared_norm() - 2.0 * fit_cross + approx_sq;

  // (mu/2) ||U X^T - X U^T||^2 = mu (tr((U^T U)(X^T X)) - tr((X^T U)(X^T U)));
  // identically zero for tied factors.
  if (mu != 0.0 && !f.tied) {
    const Eigen::MatrixXd cross = x.transpose() * u;
    value += mu * (approx_sq - cross.cwiseProduct(cross.transpose()).sum());
  }

  // lambda tr(X^T L X) = lambda (sum_i D_ii ||x_i||^2 - <A X, X>)
  if (lambda != 0.0)
    value += lambda * (degree_quadratic(lap.degrees, x) - dot_entries(ax, x));

  return value;
}

Gradients gradients(const AdjacencyMatrix& graph, const LaplacianPair& lap,
                    const LatentFactors& f, double mu, double lambda) {
  check_shapes(graph, lap, f);
  Gradients g;

  if (f.tied) {
    const Eigen::MatrixXd& u = f.U;
    const Eigen::MatrixXd au = graph.weights() * u;
    g.U = 4.0 * (u * (u.transpose() * u) - au);
    if (lambda != 0.0)
      g.U += 2.0 * lambda * (lap.degrees.asDiagonal() * u - au);
    return g;
  }

  const Eigen::MatrixXd& u = f.U;
  const Eigen::MatrixXd& x = f.X;
  const Eigen::MatrixXd ax = graph.weights() * x;
  const Eigen::MatrixXd au = graph.weights() * u;

  g.U = -2.0 * ax + 2.0 * (1.0 + mu) * (u * (x.transpose() * x)) -
        2.0 * mu * (x * (u.transpose() * x));
  g.X = -2.0 * au + 2.0 * (1.0 + mu) * (x * (u.transpose() * u)) -
        2.0 * mu * (u * (x.transpose() * u));
  if (lambda != 0.0)
    g.X += 2.0 * lambda * (lap.degrees.asDiagonal() * x - ax);
  return g;
}

double kkt_residual(const AdjacencyMatrix& graph, const LaplacianPair& lap,
                    const LatentFactors& f, double mu, double lambda) {
  const Gradients g = gradients(graph, lap, f, mu, lambda);
  double residual = f.U.cwiseMin(g.U).cwiseAbs().maxCoeff();
  if (!f.tied)
    residual = std::max(residual, f.X.cwiseMin(g.X).cwiseAbs().maxCoeff());
  return residual;
}

}  // namespace cfs
