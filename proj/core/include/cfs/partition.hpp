#pragma once

#include <Eigen/Core>

#include <vector>

#include "cfs/adjacency.hpp"
#include "cfs/factorization.hpp"

namespace cfs {

/// Hard non-overlapping community assignment. Labels lie in
/// [0, community_count); a community may own no nodes.
struct Partition {
  std::vector<int> labels;
  int community_count = 0;
};

/// Row-wise argmax of a nonnegative representation matrix: node j joins the
/// community whose column holds the largest entry of row j. Ties break toward
/// the smaller column index. Throws ContractError on an empty matrix.
Partition assign(const Eigen::MatrixXd& representation);

/// Assignment from solved factors (the tied model assigns from its single
/// factor).
inline Partition assign(const LatentFactors& f) { return assign(f.rep()); }

inline Partition to_partition(const GroundTruth& truth) {
  return Partition{truth.labels, truth.community_count};
}

}  // namespace cfs
