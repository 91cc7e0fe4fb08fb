#include "tipsy/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <queue>
#include <sstream>

#include "tipsy/errors.hpp"

namespace tipsy {

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidFamilyError(message);
}

}  // namespace

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges) {
  if (vertex_count == 0) throw ParseError("graph has no vertices");
  Graph g;
  g.adjacency_.resize(vertex_count);
  for (const auto& [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) {
      throw ParseError("edge " + std::to_string(u) + " " + std::to_string(v) +
                       " references a vertex outside 0.." + std::to_string(vertex_count - 1));
    }
    if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u));
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (auto& list : g.adjacency_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    g.edge_count_ += list.size();
  }
  g.edge_count_ /= 2;
  for (Vertex v = 0; v < vertex_count; ++v) {
    if (g.adjacency_[v].empty()) throw ParseError("graph is disconnected: vertex " + std::to_string(v) + " has no neighbors");
  }

  auto reach = bfs_distances(g, 0);
  for (Vertex v = 0; v < vertex_count; ++v) {
    if (reach[v] == kUnreached) {
      throw ParseError("graph is disconnected: vertex " + std::to_string(v) +
                       " is not reachable from vertex 0");
    }
  }
  return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < adjacency_.size(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph generate(const GraphFamily& family) {
  std::vector<Edge> edges;
  std::size_t n = 0;
  std::visit(
      overloaded{
          [&](const CompleteFamily& f) {
            require(f.v >= 2, "complete graph needs v >= 2");
            n = static_cast<std::size_t>(f.v);
            for (Vertex u = 0; u < n; ++u)
              for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
          },
          [&](const CompleteBipartiteFamily& f) {
            require(f.v >= 1 && f.w >= 1, "complete bipartite graph needs v >= 1 and w >= 1");
            n = static_cast<std::size_t>(f.v + f.w);
            for (int a = 0; a < f.v; ++a)
              for (int b = 0; b < f.w; ++b)
                edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(f.v + b));
          },
          [&](const CycleFamily& f) {
            require(f.v >= 3, "cycle graph needs v >= 3");
            n = static_cast<std::size_t>(f.v);
            for (Vertex i = 0; i < n; ++i) edges.emplace_back(i, static_cast<Vertex>((i + 1) % n));
          },
          [&](const FriendshipFamily& f) {
            require(f.k >= 1, "friendship graph needs k >= 1");
            n = static_cast<std::size_t>(2 * f.k + 1);
            for (int j = 0; j < f.k; ++j) {
              auto a = static_cast<Vertex>(2 * j + 1);
              auto b = static_cast<Vertex>(2 * j + 2);
              edges.emplace_back(0, a);
              edges.emplace_back(0, b);
              edges.emplace_back(a, b);
            }
          },
      },
      family);
  return Graph::from_edges(n, edges);
}

std::string describe(const GraphFamily& family) {
  return std::visit(
      overloaded{
          [](const CompleteFamily& f) { return "complete(v=" + std::to_string(f.v) + ")"; },
          [](const CompleteBipartiteFamily& f) {
            return "bipartite(v=" + std::to_string(f.v) + ",w=" + std::to_string(f.w) + ")";
          },
          [](const CycleFamily& f) { return "cycle(v=" + std::to_string(f.v) + ")"; },
          [](const FriendshipFamily& f) { return "friendship(k=" + std::to_string(f.k) + ")"; },
      },
      family);
}

Graph parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::size_t max_id = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    std::string token;
    std::vector<long long> ids;
    while (fields >> token) {
      long long value = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": non-integer token '" + token + "'");
      }
      if (value < 0) {
        throw ParseError("line " + std::to_string(line_no) + ": negative vertex id " + token);
      }
      if (value > std::numeric_limits<Vertex>::max() / 2) {
        throw ParseError("line " + std::to_string(line_no) + ": vertex id " + token + " too large");
      }
      ids.push_back(value);
    }
    if (ids.size() != 2) {
      throw ParseError("line " + std::to_string(line_no) + ": expected two vertex ids, found " +
                       std::to_string(ids.size()));
    }
    if (ids[0] == ids[1]) {
      throw ParseError("line " + std::to_string(line_no) + ": self-loop at vertex " +
                       std::to_string(ids[0]));
    }
    edges.emplace_back(static_cast<Vertex>(ids[0]), static_cast<Vertex>(ids[1]));
    max_id = std::max<std::size_t>(max_id, static_cast<std::size_t>(std::max(ids[0], ids[1])));
  }
  if (edges.empty()) throw ParseError("edge list contains no edges");
  return Graph::from_edges(max_id + 1, edges);
}

Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

std::string serialize_edge_list(const Graph& g) {
  std::string out;
  for (const auto& [u, v] : g.edges()) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source) {
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
  std::queue<Vertex> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    Vertex u = frontier.front();
    frontier.pop();
    for (Vertex x : g.neighbors(u)) {
      if (dist[x] == kUnreached) {
        dist[x] = dist[u] + 1;
        frontier.push(x);
      }
    }
  }
  return dist;
}

DistanceTable all_pairs_distances(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> d(n * n);
  for (Vertex s = 0; s < n; ++s) {
    auto row = bfs_distances(g, s);
    std::copy(row.begin(), row.end(), d.begin() + static_cast<std::ptrdiff_t>(s * n));
  }
  return DistanceTable(n, std::move(d));
}

}  // namespace tipsy
