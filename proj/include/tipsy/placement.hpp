#pragma once

#include <optional>

#include "tipsy/chain.hpp"
#include "tipsy/closed_forms.hpp"
#include "tipsy/friendship.hpp"
#include "tipsy/graph.hpp"

// Maps the named positions of each family onto canonical vertex ids, and back.
namespace tipsy {

struct Placement {
  Vertex cop;
  Vertex robber;

  GameState state(Mover mover) const { return {cop, robber, mover}; }
  bool operator==(const Placement&) const = default;
};

Placement complete_placement(int v);
Placement bipartite_placement(int v, int w, BipartitePosition pos);
Placement cycle_placement(int v, int distance);
Placement friendship_placement(int k, FriendshipPosition pos);

int bipartite_class(int v, Vertex cop, Vertex robber);
int cycle_distance(int v, Vertex a, Vertex b);
std::optional<int> friendship_class(Vertex cop, Vertex robber);

// Position classes of live states on F_k (mover ignored).
StateClassifier friendship_classifier();

}  // namespace tipsy
