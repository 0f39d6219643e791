#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cfs {

/// One undirected edge between dense node indices, weight > 0.
struct WeightedEdge {
  int source = 0;
  int target = 0;
  double weight = 1.0;
};

/// Symmetric nonnegative weight matrix of an undirected network, stored in
/// compressed-row layout so that all solver products iterate rows.
///
/// Ingestion paths (edge lists, generators) never produce diagonal entries;
/// `from_edges` accepts them so tests and callers can build arbitrary
/// symmetric matrices directly.
class AdjacencyMatrix {
 public:
  using Sparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  AdjacencyMatrix() = default;

  /// Takes ownership of a prebuilt matrix. Throws ContractError if the matrix
  /// is not square or labels do not match its size, DomainError if any entry
  /// is negative or the matrix is not exactly symmetric.
  explicit AdjacencyMatrix(Sparse weights, std::vector<std::string> labels = {});

  /// Builds the symmetric matrix from one-sided undirected edges. Each edge
  /// (i, j) also stores (j, i); duplicates overwrite (the last weight wins).
  /// Labels default to "0".."n-1".
  static AdjacencyMatrix from_edges(int node_count,
                                    const std::vector<WeightedEdge>& edges,
                                    std::vector<std::string> labels = {});

  int node_count() const noexcept { return static_cast<int>(weights_.rows()); }
  std::int64_t stored_entries() const noexcept { return weights_.nonZeros(); }
  const Sparse& weights() const noexcept { return weights_; }

  /// Sum over all matrix entries; equals twice the total edge weight of a
  /// simple graph.
  double total_weight() const noexcept { return total_weight_; }

  /// Squared Frobenius norm, cached at construction.
  double squared_norm() const noexcept { return squared_norm_; }

  const std::vector<std::string>& node_labels() const noexcept { return labels_; }
  std::optional<int> index_of(std::string_view label) const;

 private:
  Sparse weights_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  double total_weight_ = 0.0;
  double squared_norm_ = 0.0;

  void finalize();  // validates invariants, builds the label index
};

/// Degree vector of W (= the adjacency matrix); the Laplacian L = D - W is
/// kept implicit and never materialized.
struct LaplacianPair {
  Eigen::VectorXd degrees;
};

/// Row sums of the weight matrix. Isolated nodes get degree zero.
LaplacianPair build_laplacian(const AdjacencyMatrix& graph);

/// Reference node-community assignment with dense ids 0..community_count-1.
struct GroundTruth {
  std::vector<int> labels;
  int community_count = 0;
};

}  // namespace cfs
