#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oqw {

using Vertex = std::size_t;

/// Ordered pair (source, target). Loops have source == target.
struct Arc {
  Vertex source;
  Vertex target;

  bool is_loop() const { return source == target; }
  auto operator<=>(const Arc&) const = default;
};

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  /// Validates indices and self-pairs, removes duplicates.
  Graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& pairs);

  std::size_t order() const { return n_; }
  std::size_t size() const { return edges_.size(); }

  /// Edges stored as (min, max), sorted.
  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
  /// Sorted neighbor list.
  const std::vector<Vertex>& neighbors(Vertex u) const { return adjacency_.at(u); }
  std::size_t degree(Vertex u) const { return neighbors(u).size(); }
  bool adjacent(Vertex u, Vertex v) const;

  bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  std::size_t n_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

Graph path(std::size_t n);
Graph cycle(std::size_t n);
Graph star(std::size_t n);
Graph complete(std::size_t n);
/// Part V1 = {0..a-1}, V2 = {a..a+b-1}.
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph from_edge_list(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& pairs);

/// Both orientations of every edge plus one loop per vertex.
class DirectedWalkGraph {
 public:
  explicit DirectedWalkGraph(const Graph& g);

  std::size_t order() const { return n_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  /// Arcs leaving u; the loop comes first.
  const std::vector<Arc>& out_arcs(Vertex u) const { return out_.at(u); }
  /// Arcs entering u; the loop comes first.
  const std::vector<Arc>& in_arcs(Vertex u) const { return in_.at(u); }
  /// Outdegree counting the loop.
  std::size_t outdegree(Vertex u) const { return out_arcs(u).size(); }
  /// Number of neighbors, i.e. outdegree without the loop.
  std::size_t edge_outdegree(Vertex u) const { return outdegree(u) - 1; }
  bool has_arc(Arc a) const;

 private:
  std::size_t n_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;
};

DirectedWalkGraph to_walk_graph(const Graph& g);

/// Reads either a plain edge list (first line n, then "u v" per line, '#'
/// comments) or JSON {"n": int, "edges": [[u, v], ...]}.
Graph read_graph_file(const std::filesystem::path& file);
Graph parse_graph_text(const std::string& text);

}  // namespace oqw
