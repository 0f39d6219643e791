#include "cfs/partition.hpp"

#include "cfs/errors.hpp"

namespace cfs {

Partition assign(const Eigen::MatrixXd& representation) {
  if (representation.rows() == 0 || representation.cols() == 0)
    throw ContractError("cannot assign communities from an empty matrix");

  Partition p;
  p.community_count = static_cast<int>(representation.cols());
  p.labels.resize(representation.rows());
  for (Eigen::Index i = 0; i < representation.rows(); ++i) {
    int best = 0;
    for (Eigen::Index k = 1; k < representation.cols(); ++k)
      if (representation(i, k) > representation(i, best))
        best = static_cast<int>(k);
    p.labels[i] = best;
  }
  return p;
}

}  // namespace cfs
