#include "oqw/graph.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace oqw {

Graph::Graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& pairs)
    : n_(n), adjacency_(n) {
  if (n == 0) throw GraphError("graph must have at least one vertex");
  for (auto [u, v] : pairs) {
    if (u >= n || v >= n) {
      std::ostringstream msg;
      msg << "edge (" << u << ", " << v << ") has a vertex index outside 0.." << n - 1;
      throw GraphError(msg.str());
    }
    if (u == v) {
      throw GraphError("self-loop at vertex " + std::to_string(u) + " is not allowed");
    }
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (auto [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

Graph path(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex k = 0; k + 1 < n; ++k) pairs.emplace_back(k, k + 1);
  return Graph(n, pairs);
}

Graph cycle(std::size_t n) {
  if (n < 3) throw GraphError("cycle needs at least 3 vertices, got " + std::to_string(n));
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex k = 0; k < n; ++k) pairs.emplace_back(k, (k + 1) % n);
  return Graph(n, pairs);
}

Graph star(std::size_t n) {
  if (n < 2) throw GraphError("star needs at least 2 vertices, got " + std::to_string(n));
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex k = 1; k < n; ++k) pairs.emplace_back(0, k);
  return Graph(n, pairs);
}

Graph complete(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  return Graph(n, pairs);
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) throw GraphError("complete bipartite parts must be non-empty");
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = a; v < a + b; ++v) pairs.emplace_back(u, v);
  return Graph(a + b, pairs);
}

Graph from_edge_list(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  return Graph(n, pairs);
}

DirectedWalkGraph::DirectedWalkGraph(const Graph& g) : n_(g.order()), out_(n_), in_(n_) {
  for (Vertex u = 0; u < n_; ++u) {
    out_[u].push_back({u, u});
    in_[u].push_back({u, u});
    for (Vertex v : g.neighbors(u)) {
      out_[u].push_back({u, v});
      in_[u].push_back({v, u});
    }
    arcs_.insert(arcs_.end(), out_[u].begin(), out_[u].end());
  }
}

bool DirectedWalkGraph::has_arc(Arc a) const {
  if (a.source >= n_) return false;
  const auto& out = out_[a.source];
  return std::find(out.begin(), out.end(), a) != out.end();
}

DirectedWalkGraph to_walk_graph(const Graph& g) { return DirectedWalkGraph(g); }

namespace {

Graph parse_graph_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw GraphError(std::string("invalid graph JSON: ") + e.what());
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    throw GraphError("graph JSON needs a positive integer field \"n\"");
  }
  std::vector<std::pair<Vertex, Vertex>> pairs;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw GraphError("graph JSON field \"edges\" must be an array");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
          !e[1].is_number_unsigned()) {
        throw GraphError("each edge must be a pair of non-negative integers");
      }
      pairs.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
  }
  return Graph(doc["n"].get<std::size_t>(), pairs);
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

Graph parse_graph_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_graph_json(text);

  std::istringstream in(text);
  std::string line;
  long long n = -1;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(strip_comment(line));
    std::string probe;
    if (!(fields >> probe)) continue;
    fields.clear();
    fields.seekg(0);
    if (n < 0) {
      if (!(fields >> n) || n < 1 || (fields >> probe)) {
        throw GraphError("line " + std::to_string(line_no) + ": expected vertex count");
      }
      continue;
    }
    long long u = -1;
    long long v = -1;
    if (!(fields >> u >> v) || u < 0 || v < 0 || (fields >> probe)) {
      throw GraphError("line " + std::to_string(line_no) + ": expected \"u v\"");
    }
    pairs.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (n < 0) throw GraphError("graph file has no vertex count");
  return Graph(static_cast<std::size_t>(n), pairs);
}

Graph read_graph_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw GraphError("cannot open graph file " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_graph_text(buffer.str());
}

}  // namespace oqw
