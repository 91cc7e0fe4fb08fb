#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace tipsy {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Simple undirected connected graph. Adjacency lists are sorted, symmetric and
// free of loops and duplicates; every vertex has at least one neighbor.
// Instances are immutable once built.
class Graph {
 public:
  // Validates the edge set; throws ParseError naming the violated invariant.
  static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges);

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  bool adjacent(Vertex u, Vertex v) const;

  // Edges as (u, v) with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  bool operator==(const Graph&) const = default;

 private:
  Graph() = default;

  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
};

struct CompleteFamily {
  int v;
};
struct CompleteBipartiteFamily {
  int v;
  int w;
};
struct CycleFamily {
  int v;
};
struct FriendshipFamily {
  int k;
};

using GraphFamily =
    std::variant<CompleteFamily, CompleteBipartiteFamily, CycleFamily, FriendshipFamily>;

// Canonical labelings:
//   complete        0..v-1
//   bipartite       part V = 0..v-1, part W = v..v+w-1
//   cycle           i ~ i+1 (mod v)
//   friendship      center 0, triangle j = {0, 2j+1, 2j+2}
// Throws InvalidFamilyError when parameters are out of bounds.
Graph generate(const GraphFamily& family);

// Short descriptor such as "cycle(v=5)"; used in output metadata.
std::string describe(const GraphFamily& family);

Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(std::string_view text);

// One "u v" line per edge, u < v, lexicographic order, newline-terminated.
std::string serialize_edge_list(const Graph& g);

class DistanceTable {
 public:
  DistanceTable() = default;
  DistanceTable(std::size_t n, std::vector<std::uint32_t> d) : n_(n), d_(std::move(d)) {}

  std::size_t size() const { return n_; }
  std::uint32_t operator()(Vertex u, Vertex v) const { return d_[u * n_ + v]; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> d_;
};

std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source);
DistanceTable all_pairs_distances(const Graph& g);

}  // namespace tipsy
