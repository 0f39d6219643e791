#include "cfs/edge_list.hpp"

#include <charconv>
#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "cfs/errors.hpp"
#include "format.hpp"

namespace cfs {
namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

bool is_comment_or_blank(const std::vector<std::string>& tokens) {
  return tokens.empty() || tokens.front().front() == '#';
}

double parse_weight(const std::string& tok, std::size_t line_no) {
  double value = 0.0;
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError("invalid weight '" + tok + "'", line_no);
  return value;
}

}  // namespace

EdgeListResult parse_edge_list(std::istream& in, bool weighted) {
  std::unordered_map<std::string, int> index;
  std::vector<std::string> labels;
  auto intern = [&](const std::string& label) {
    auto [it, inserted] = index.emplace(label, static_cast<int>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  // Dense pairs with i <= j; last weight wins.
  std::map<std::pair<int, int>, double> edges;
  std::size_t self_loops = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (is_comment_or_blank(tokens)) continue;

    const std::size_t expected_max = weighted ? 3u : 2u;
    if (tokens.size() < 2 || tokens.size() > expected_max)
      throw ParseError("expected 'src dst" +
                           std::string(weighted ? " [weight]'" : "'") +
                           ", got " + std::to_string(tokens.size()) + " tokens",
                       line_no);

    double weight = 1.0;
    if (weighted && tokens.size() == 3) {
      weight = parse_weight(tokens[2], line_no);
      if (weight < 0.0)
        throw DomainError("negative weight on line " + std::to_string(line_no));
    }

    const int src = intern(tokens[0]);
    const int dst = intern(tokens[1]);
    if (src == dst) {
      ++self_loops;
      continue;
    }
    edges[std::minmax(src, dst)] = weight;
  }

  std::vector<WeightedEdge> flat;
  flat.reserve(edges.size());
  for (const auto& [key, w] : edges)
    flat.push_back({key.first, key.second, w});

  const int node_count = static_cast<int>(labels.size());
  EdgeListResult result;
  result.graph = AdjacencyMatrix::from_edges(node_count, flat, std::move(labels));
  result.self_loops_skipped = self_loops;
  return result;
}

EdgeListResult load_edge_list(const std::string& path, bool weighted) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list: " + path);
  return parse_edge_list(in, weighted);
}

GroundTruth parse_ground_truth(std::istream& in, const AdjacencyMatrix& graph) {
  std::vector<int> labels(graph.node_count(), -1);
  std::unordered_map<std::string, int> communities;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (is_comment_or_blank(tokens)) continue;
    if (tokens.size() != 2)
      throw ParseError("expected 'node_label community_label'", line_no);

    const auto node = graph.index_of(tokens[0]);
    if (!node)
      throw ParseError("unknown node label '" + tokens[0] + "'", line_no);
    const auto [it, inserted] =
        communities.emplace(tokens[1], static_cast<int>(communities.size()));
    labels[*node] = it->second;
  }

  for (int i = 0; i < graph.node_count(); ++i) {
    if (labels[i] < 0)
      throw DomainError("ground truth is missing node '" +
                        graph.node_labels()[i] + "'");
  }
  return GroundTruth{std::move(labels), static_cast<int>(communities.size())};
}

GroundTruth load_ground_truth(const std::string& path, const AdjacencyMatrix& graph) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ground truth: " + path);
  return parse_ground_truth(in, graph);
}

void write_edge_list(std::ostream& out, const AdjacencyMatrix& graph) {
  const auto& w = graph.weights();
  bool all_unit = true;
  for (int i = 0; i < graph.node_count() && all_unit; ++i)
    for (AdjacencyMatrix::Sparse::InnerIterator it(w, i); it; ++it)
      if (it.value() != 1.0) {
        all_unit = false;
        break;
      }

  const auto& names = graph.node_labels();
  for (int i = 0; i < graph.node_count(); ++i) {
    for (AdjacencyMatrix::Sparse::InnerIterator it(w, i); it; ++it) {
      if (it.col() < i) continue;  // emit each undirected edge once
      out << names[i] << '\t' << names[it.col()];
      if (!all_unit) out << '\t' << detail::format_double(it.value());
      out << '\n';
    }
  }
}

void write_ground_truth(std::ostream& out, const AdjacencyMatrix& graph,
                        const GroundTruth& truth) {
  if (static_cast<int>(truth.labels.size()) != graph.node_count())
    throw ContractError("ground truth size does not match graph");
  const auto& names = graph.node_labels();
  for (int i = 0; i < graph.node_count(); ++i)
    out << names[i] << '\t' << truth.labels[i] << '\n';
}

}  // namespace cfs
