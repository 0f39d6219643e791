#include "cfs/sbm.hpp"

#include <numeric>

#include "cfs/errors.hpp"
#include "cfs/random.hpp"

namespace cfs {

SbmGraph generate_sbm(const std::vector<int>& block_sizes, double p_in,
                      double p_out, std::uint64_t seed) {
  if (block_sizes.empty()) throw DomainError("at least one block is required");
  for (int s : block_sizes)
    if (s <= 0) throw DomainError("block sizes must be positive");
  if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0)
    throw DomainError("edge probabilities must lie in [0, 1]");
  if (p_out > p_in)
    throw DomainError("p_out must not exceed p_in");

  const int n = std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
  std::vector<int> block_of(n);
  {
    int node = 0;
    for (int b = 0; b < static_cast<int>(block_sizes.size()); ++b)
      for (int k = 0; k < block_sizes[b]; ++k) block_of[node++] = b;
  }

  // Pairs are visited in a fixed order so a seed maps to one edge set.
  RandomEngine rng(seed);
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double p = block_of[i] == block_of[j] ? p_in : p_out;
      if (uniform01(rng) < p) edges.push_back({i, j, 1.0});
    }
  }

  SbmGraph out;
  out.graph = AdjacencyMatrix::from_edges(n, edges);
  out.truth = GroundTruth{std::move(block_of),
                          static_cast<int>(block_sizes.size())};
  return out;
}

}  // namespace cfs
