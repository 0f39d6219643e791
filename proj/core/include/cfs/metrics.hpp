#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "cfs/adjacency.hpp"
#include "cfs/factorization.hpp"
#include "cfs/partition.hpp"

namespace cfs {

/// Newman modularity of a partition, in [-0.5, 1]. Evaluated in the grouped
/// form over communities,
///
///   Q = sum_c ( intra_c / s - (d_c / s)^2 ),   s = total entry weight,
///
/// arranged so the single final division keeps small rational cases exact.
/// Throws MetricError on an edgeless graph and ContractError when the
/// partition does not cover the graph.
double modularity(const AdjacencyMatrix& graph, const Partition& p);

/// Normalized mutual information with arithmetic-mean normalization,
/// 2 I(a;b) / (H(a) + H(b)), natural logarithms, clamped into [0, 1]. Two
/// trivial partitions give 1; exactly one zero-entropy argument gives 0.
double nmi(const Partition& a, const Partition& b);

/// Adjusted Rand index over the pair contingency table, in [-1, 1]; zero in
/// expectation for independent partitions. Needs at least two nodes.
double ari(const Partition& a, const Partition& b);

/// Relative symmetry defect of the learnt approximation,
/// ||U X^T - X U^T||_F / max(||U X^T||_F, eps), evaluated through K x K Gram
/// products so the n x n approximation is never formed. Tied factors give 0.
double asymmetry(const LatentFactors& f, double eps = 1e-12);

/// Rectangular score matrix; rows are datasets, columns are models, higher
/// scores mean better.
struct ScoreTable {
  std::vector<std::string> datasets;
  std::vector<std::string> models;
  Eigen::MatrixXd values;  // datasets x models

  void validate() const;  // throws ContractError when malformed or empty
};

/// Per-model Friedman ranks: each dataset row ranks the models 1..M by
/// descending score, ties share the average rank, and the result is the
/// per-model mean across rows. Lower is better.
std::vector<double> friedman_ranks(const ScoreTable& table);

}  // namespace cfs
