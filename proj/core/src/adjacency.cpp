#include "cfs/adjacency.hpp"

#include <cmath>
#include <algorithm>
#include <map>
#include <utility>

#include "cfs/errors.hpp"

namespace cfs {

AdjacencyMatrix::AdjacencyMatrix(Sparse weights, std::vector<std::string> labels)
    : weights_(std::move(weights)), labels_(std::move(labels)) {
  finalize();
}

AdjacencyMatrix AdjacencyMatrix::from_edges(int node_count,
                                            const std::vector<WeightedEdge>& edges,
                                            std::vector<std::string> labels) {
  if (node_count < 0) throw ContractError("node count must be nonnegative");

  // Last weight wins for duplicate edges, regardless of orientation.
  std::map<std::pair<int, int>, double> canonical;
  for (const auto& e : edges) {
    if (e.source < 0 || e.source >= node_count || e.target < 0 ||
        e.target >= node_count) {
      throw ContractError("edge endpoint out of range");
    }
    canonical[std::minmax(e.source, e.target)] = e.weight;
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * canonical.size());
  for (const auto& [key, w] : canonical) {
    if (w == 0.0) continue;  // zero weight means no edge
    triplets.emplace_back(key.first, key.second, w);
    if (key.first != key.second) triplets.emplace_back(key.second, key.first, w);
  }

  Sparse m(node_count, node_count);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return AdjacencyMatrix(std::move(m), std::move(labels));
}

void AdjacencyMatrix::finalize() {
  if (weights_.rows() != weights_.cols())
    throw ContractError("adjacency matrix must be square");
  weights_.makeCompressed();

  const int n = node_count();
  if (labels_.empty()) {
    labels_.reserve(n);
    for (int i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
  }
  if (static_cast<int>(labels_.size()) != n)
    throw ContractError("node label count does not match matrix size");

  total_weight_ = 0.0;
  squared_norm_ = 0.0;
  for (int i = 0; i < n; ++i) {
    for (Sparse::InnerIterator it(weights_, i); it; ++it) {
      const double w = it.value();
      if (!std::isfinite(w) || w < 0.0)
        throw DomainError("adjacency weights must be finite and nonnegative");
      if (weights_.coeff(it.col(), i) != w)
        throw DomainError("adjacency matrix must be exactly symmetric");
      total_weight_ += w;
      squared_norm_ += w * w;
    }
  }

  index_.clear();
  index_.reserve(labels_.size());
  for (int i = 0; i < n; ++i) {
    if (!index_.emplace(labels_[i], i).second)
      throw ContractError("duplicate node label: " + labels_[i]);
  }
}

std::optional<int> AdjacencyMatrix::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

LaplacianPair build_laplacian(const AdjacencyMatrix& graph) {
  const auto& w = graph.weights();
  Eigen::VectorXd degrees = Eigen::VectorXd::Zero(graph.node_count());
  for (int i = 0; i < graph.node_count(); ++i) {
    for (AdjacencyMatrix::Sparse::InnerIterator it(w, i); it; ++it)
      degrees[i] += it.value();
  }
  return LaplacianPair{std::move(degrees)};
}

}  // namespace cfs
