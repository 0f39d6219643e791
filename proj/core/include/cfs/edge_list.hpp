#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

#include "cfs/adjacency.hpp"

namespace cfs {

struct EdgeListResult {
  AdjacencyMatrix graph;
  std::size_t self_loops_skipped = 0;
};

/// Parses whitespace-separated "src dst [weight]" lines into a symmetric
/// matrix. '#' starts a comment line; blank lines are ignored. Node labels
/// are remapped to dense indices in first-appearance order. A duplicate
/// undirected edge keeps the last weight seen; self-loop lines are skipped
/// and counted. With weighted=false every line must have exactly two tokens
/// and each edge gets weight 1; with weighted=true a third decimal token is
/// the weight (default 1). Negative weights raise DomainError, anything else
/// malformed raises ParseError with the line number.
EdgeListResult parse_edge_list(std::istream& in, bool weighted = false);

/// parse_edge_list over a file; IoError when the file cannot be opened.
EdgeListResult load_edge_list(const std::string& path, bool weighted = false);

/// Parses "node_label community_label" lines against an existing graph.
/// Community labels are densified to 0..C-1 in first-appearance order.
/// Unknown node labels raise ParseError; a node without a label raises
/// DomainError. A repeated node keeps the last community seen.
GroundTruth parse_ground_truth(std::istream& in, const AdjacencyMatrix& graph);
GroundTruth load_ground_truth(const std::string& path, const AdjacencyMatrix& graph);

/// Writes one "src dst" line per undirected edge (upper triangle); appends
/// the weight column when any edge weight differs from 1.
void write_edge_list(std::ostream& out, const AdjacencyMatrix& graph);

void write_ground_truth(std::ostream& out, const AdjacencyMatrix& graph,
                        const GroundTruth& truth);

}  // namespace cfs
