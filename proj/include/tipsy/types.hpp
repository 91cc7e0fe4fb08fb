#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "tipsy/graph.hpp"

namespace tipsy {

enum class Mover : std::uint8_t { Robber, Cop };

// Moves count single relocations; a round is two consecutive moves starting
// with the first mover, so round n ends at move 2n.
enum class Unit : std::uint8_t { Moves, Rounds };

constexpr Mover other(Mover m) { return m == Mover::Robber ? Mover::Cop : Mover::Robber; }

constexpr std::string_view to_string(Mover m) { return m == Mover::Robber ? "robber" : "cop"; }
constexpr std::string_view to_string(Unit u) { return u == Unit::Moves ? "moves" : "rounds"; }

struct GameState {
  Vertex cop;
  Vertex robber;
  Mover mover;

  bool live() const { return cop != robber; }
  bool operator==(const GameState&) const = default;
};

// P_0..P_M: probability the robber is still free after m moves (or n rounds).
template <class T>
struct BasicSurvivalCurve {
  Unit unit = Unit::Moves;
  std::vector<T> values;

  std::size_t horizon() const { return values.empty() ? 0 : values.size() - 1; }
  const T& operator[](std::size_t i) const { return values[i]; }
};

using SurvivalCurve = BasicSurvivalCurve<double>;

struct ExpectedTime {
  double value = 0.0;
  Unit unit = Unit::Moves;
};

}  // namespace tipsy
