#include "cfs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cfs/errors.hpp"

namespace cfs {
namespace {

void require_same_length(const Partition& a, const Partition& b) {
  if (a.labels.size() != b.labels.size())
    throw ContractError("partitions cover different node counts");
}

std::vector<std::vector<double>> contingency(const Partition& a,
                                             const Partition& b) {
  std::vector<std::vector<double>> table(
      a.community_count, std::vector<double>(b.community_count, 0.0));
  for (std::size_t i = 0; i < a.labels.size(); ++i)
    table[a.labels[i]][b.labels[i]] += 1.0;
  return table;
}

double entropy(const std::vector<double>& counts, double n) {
  double h = 0.0;
  for (double c : counts)
    if (c > 0.0) h -= (c / n) * std::log(c / n);
  return h;
}

double choose2(double c) { return c * (c - 1.0) / 2.0; }

}  // namespace

double modularity(const AdjacencyMatrix& graph, const Partition& p) {
  const int n = graph.node_count();
  if (static_cast<int>(p.labels.size()) != n)
    throw ContractError("partition does not cover the graph");
  const double total = graph.total_weight();  // sum over all entries, 2m
  if (total <= 0.0)
    throw MetricError("modularity is undefined on an edgeless graph");

  std::vector<double> intra(p.community_count, 0.0);
  std::vector<double> degree_mass(p.community_count, 0.0);
  const auto& w = graph.weights();
  for (int i = 0; i < n; ++i) {
    const int ci = p.labels[i];
    for (AdjacencyMatrix::Sparse::InnerIterator it(w, i); it; ++it) {
      degree_mass[ci] += it.value();
      if (p.labels[it.col()] == ci) intra[ci] += it.value();
    }
  }

  // Q = sum_c (intra_c/total - (d_c/total)^2), folded into one division so
  // integer-weight graphs round once.
  double scaled = 0.0;
  for (int c = 0; c < p.community_count; ++c)
    scaled += total * intra[c] - degree_mass[c] * degree_mass[c];
  return scaled / (total * total);
}

double nmi(const Partition& a, const Partition& b) {
  require_same_length(a, b);
  const double n = static_cast<double>(a.labels.size());
  if (n == 0.0) throw ContractError("partitions are empty");

  const auto table = contingency(a, b);
  std::vector<double> row_sum(a.community_count, 0.0);
  std::vector<double> col_sum(b.community_count, 0.0);
  for (int i = 0; i < a.community_count; ++i)
    for (int j = 0; j < b.community_count; ++j) {
      row_sum[i] += table[i][j];
      col_sum[j] += table[i][j];
    }

  const double ha = entropy(row_sum, n);
  const double hb = entropy(col_sum, n);
  if (ha + hb == 0.0) return 1.0;  // both partitions trivial
  if (ha == 0.0 || hb == 0.0) return 0.0;

  double info = 0.0;
  for (int i = 0; i < a.community_count; ++i)
    for (int j = 0; j < b.community_count; ++j) {
      const double nij = table[i][j];
      if (nij > 0.0)
        info += (nij / n) * std::log(nij * n / (row_sum[i] * col_sum[j]));
    }
  // Rounding can push 2I marginally past H(a)+H(b); pin the contract range.
  return std::clamp(2.0 * info / (ha + hb), 0.0, 1.0);
}

double ari(const Partition& a, const Partition& b) {
  require_same_length(a, b);
  const double n = static_cast<double>(a.labels.size());
  if (n < 2.0)
    throw MetricError("adjusted Rand index needs at least two nodes");

  const auto table = contingency(a, b);
  double sum_cells = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (int i = 0; i < a.community_count; ++i) {
    double row = 0.0;
    for (int j = 0; j < b.community_count; ++j) {
      sum_cells += choose2(table[i][j]);
      row += table[i][j];
    }
    sum_rows += choose2(row);
  }
  for (int j = 0; j < b.community_count; ++j) {
    double col = 0.0;
    for (int i = 0; i < a.community_count; ++i) col += table[i][j];
    sum_cols += choose2(col);
  }

  const double expected = sum_rows * sum_cols / choose2(n);
  const double maximum = 0.5 * (sum_rows + sum_cols);
  if (maximum == expected) return 1.0;  // both partitions trivial
  return (sum_cells - expected) / (maximum - expected);
}

double asymmetry(const LatentFactors& f, double eps) {
  if (f.tied) return 0.0;
  const Eigen::MatrixXd gram_u = f.U.transpose() * f.U;
  const Eigen::MatrixXd gram_x = f.X.transpose() * f.X;
  const Eigen::MatrixXd cross = f.X.transpose() * f.U;

  // ||U X^T||^2 = tr((U^T U)(X^T X));
  // ||U X^T - X U^T||^2 = 2 (tr((U^T U)(X^T X)) - tr((X^T U)(X^T U))).
  const double approx_sq = gram_u.cwiseProduct(gram_x).sum();
  const double defect_sq =
      2.0 * (approx_sq - cross.cwiseProduct(cross.transpose()).sum());
  return std::sqrt(std::max(defect_sq, 0.0)) /
         std::max(std::sqrt(std::max(approx_sq, 0.0)), eps);
}

void ScoreTable::validate() const {
  if (datasets.empty() || models.empty())
    throw ContractError("score table must have at least one row and column");
  if (values.rows() != static_cast<Eigen::Index>(datasets.size()) ||
      values.cols() != static_cast<Eigen::Index>(models.size()))
    throw ContractError("score table shape does not match its labels");
}

std::vector<double> friedman_ranks(const ScoreTable& table) {
  table.validate();
  const auto n_models = static_cast<int>(table.models.size());
  std::vector<double> mean_rank(n_models, 0.0);

  std::vector<int> order(n_models);
  for (Eigen::Index r = 0; r < table.values.rows(); ++r) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
      return table.values(r, lhs) > table.values(r, rhs);
    });

    // Tied scores share the average of the positions they span.
    int i = 0;
    while (i < n_models) {
      int j = i;
      while (j + 1 < n_models &&
             table.values(r, order[j + 1]) == table.values(r, order[i]))
        ++j;
      const double shared = 0.5 * (i + j) + 1.0;
      for (int k = i; k <= j; ++k) mean_rank[order[k]] += shared;
      i = j + 1;
    }
  }

  for (double& v : mean_rank) v /= static_cast<double>(table.values.rows());
  return mean_rank;
}

}  // namespace cfs
