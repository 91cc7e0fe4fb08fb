#include "tipsy/placement.hpp"

#include <algorithm>
#include <string>

#include "tipsy/errors.hpp"

namespace tipsy {

Placement complete_placement(int v) {
  if (v < 2) throw InvalidFamilyError("complete graph needs v >= 2");
  return {0, 1};
}

Placement bipartite_placement(int v, int w, BipartitePosition pos) {
  bipartite_position(v, w, static_cast<int>(pos));
  const auto first_w = static_cast<Vertex>(v);
  switch (pos) {
    case BipartitePosition::CopVRobberW:
      return {0, first_w};
    case BipartitePosition::BothInV:
      return {0, 1};
    case BipartitePosition::CopWRobberV:
      return {first_w, 0};
    case BipartitePosition::BothInW:
      return {first_w, first_w + 1};
  }
  throw InvalidPositionError("unknown bipartite position");
}

Placement cycle_placement(int v, int distance) {
  if (v < 3) throw InvalidFamilyError("cycle graph needs v >= 3");
  if (distance < 1 || distance > v / 2) {
    throw InvalidPositionError("cycle distance must be 1.." + std::to_string(v / 2));
  }
  return {0, static_cast<Vertex>(distance)};
}

Placement friendship_placement(int k, FriendshipPosition pos) {
  friendship_position(k, static_cast<int>(pos));
  switch (pos) {
    case FriendshipPosition::SameTriangle:
      return {1, 2};
    case FriendshipPosition::DifferentTriangles:
      return {1, 3};
    case FriendshipPosition::RobberAtCenter:
      return {1, 0};
    case FriendshipPosition::CopAtCenter:
      return {0, 1};
  }
  throw InvalidPositionError("unknown friendship position");
}

int bipartite_class(int v, Vertex cop, Vertex robber) {
  const bool cop_in_v = cop < static_cast<Vertex>(v);
  const bool robber_in_v = robber < static_cast<Vertex>(v);
  if (cop_in_v) return robber_in_v ? 2 : 1;
  return robber_in_v ? 3 : 4;
}

int cycle_distance(int v, Vertex a, Vertex b) {
  const int d = a > b ? static_cast<int>(a - b) : static_cast<int>(b - a);
  return std::min(d, v - d);
}

std::optional<int> friendship_class(Vertex cop, Vertex robber) {
  if (cop == robber) return std::nullopt;
  if (robber == 0) return 3;
  if (cop == 0) return 4;
  // Outer vertices 2j+1 and 2j+2 share triangle j.
  return (cop - 1) / 2 == (robber - 1) / 2 ? 1 : 2;
}

StateClassifier friendship_classifier() {
  return [](const GameState& s) { return friendship_class(s.cop, s.robber); };
}

}  // namespace tipsy
