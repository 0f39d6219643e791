#pragma once

#include <cstdint>
#include <vector>

#include "cfs/adjacency.hpp"

namespace cfs {

struct SbmGraph {
  AdjacencyMatrix graph;
  GroundTruth truth;
};

/// Planted-partition benchmark generator. Every intra-block node pair gets an
/// edge independently with probability p_in, every inter-block pair with
/// p_out; requires 0 <= p_out <= p_in <= 1 so the planted structure exists.
/// The same block sizes, probabilities and seed always produce the identical
/// graph. Node labels are "0".."n-1" in block order.
SbmGraph generate_sbm(const std::vector<int>& block_sizes, double p_in,
                      double p_out, std::uint64_t seed);

}  // namespace cfs
