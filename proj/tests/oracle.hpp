#pragma once

// Reference evaluator for the tipsy cop / drunken robber game, written
// directly from the game rules with exact rationals. Shares no code with the
// library beyond GMP, so agreement is evidence rather than tautology.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Adjacency = std::vector<std::vector<int>>;

inline Adjacency complete(int v) {
  Adjacency a(v);
  for (int i = 0; i < v; ++i)
    for (int j = 0; j < v; ++j)
      if (i != j) a[i].push_back(j);
  return a;
}

inline Adjacency bipartite(int v, int w) {
  Adjacency a(v + w);
  for (int i = 0; i < v; ++i)
    for (int j = v; j < v + w; ++j) {
      a[i].push_back(j);
      a[j].push_back(i);
    }
  return a;
}

inline Adjacency cycle(int v) {
  Adjacency a(v);
  for (int i = 0; i < v; ++i) {
    a[i].push_back((i + 1) % v);
    a[i].push_back((i + v - 1) % v);
  }
  return a;
}

inline Adjacency friendship(int k) {
  Adjacency a(2 * k + 1);
  auto link = [&](int x, int y) {
    a[x].push_back(y);
    a[y].push_back(x);
  };
  for (int j = 0; j < k; ++j) {
    link(0, 2 * j + 1);
    link(0, 2 * j + 2);
    link(2 * j + 1, 2 * j + 2);
  }
  return a;
}

inline std::vector<std::vector<int>> distances(const Adjacency& a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    std::deque<int> q{s};
    d[s][s] = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : a[x])
        if (d[s][y] < 0) {
          d[s][y] = d[s][x] + 1;
          q.push_back(y);
        }
    }
  }
  return d;
}

// (cop, robber, robber_to_move)
using State = std::tuple<int, int, bool>;
using Distribution = std::map<State, Q>;

struct Game {
  Adjacency adj;
  std::vector<std::vector<int>> dist;
  Q theta;

  Game(Adjacency a, Q t) : adj(std::move(a)), dist(distances(adj)), theta(std::move(t)) {}

  // Successor distribution of one live state; capture mass is dropped.
  std::vector<std::pair<State, Q>> step(const State& s) const {
    auto [c, r, robber_moves] = s;
    std::vector<std::pair<State, Q>> out;
    if (robber_moves) {
      Q p(1, adj[r].size());
      for (int y : adj[r])
        if (y != c) out.push_back({{c, y, false}, p});
      return out;
    }
    int best = 1 << 30;
    for (int x : adj[c]) best = std::min(best, dist[x][r]);
    std::vector<int> close;
    for (int x : adj[c])
      if (dist[x][r] == best) close.push_back(x);
    for (int x : adj[c]) {
      if (x == r) continue;
      Q p = theta / Q(static_cast<long>(adj[c].size()));
      if (std::find(close.begin(), close.end(), x) != close.end())
        p += (Q(1) - theta) / Q(static_cast<long>(close.size()));
      if (p != 0) out.push_back({{x, r, true}, p});
    }
    return out;
  }

  Distribution advance(const Distribution& d) const {
    Distribution next;
    for (const auto& [s, p] : d)
      for (const auto& [t, q] : step(s)) next[t] += p * q;
    return next;
  }

  // Survival P_0..P_moves.
  std::vector<Q> survival(int cop, int robber, bool robber_first, int moves) const {
    Distribution d{{{cop, robber, robber_first}, Q(1)}};
    std::vector<Q> out{Q(1)};
    for (int m = 1; m <= moves; ++m) {
      d = advance(d);
      Q total = 0;
      for (const auto& [s, p] : d) total += p;
      out.push_back(total);
    }
    return out;
  }

  // Expected number of moves (or rounds) to capture: t = r + Q t over the
  // states reachable from the start, solved by Gauss-Jordan elimination.
  Q expected(int cop, int robber, bool robber_first, bool rounds) const {
    std::map<State, int> index;
    std::vector<State> order;
    std::deque<State> frontier{{cop, robber, robber_first}};
    index[frontier.front()] = 0;
    order.push_back(frontier.front());
    while (!frontier.empty()) {
      State s = frontier.front();
      frontier.pop_front();
      for (const auto& [t, p] : step(s))
        if (!index.count(t)) {
          index[t] = static_cast<int>(order.size());
          order.push_back(t);
          frontier.push_back(t);
        }
    }
    const int n = static_cast<int>(order.size());
    std::vector<std::vector<Q>> a(n, std::vector<Q>(n + 1, Q(0)));
    for (int i = 0; i < n; ++i) {
      a[i][i] = 1;
      for (const auto& [t, p] : step(order[i])) a[i][index[t]] -= p;
      const bool counts = !rounds || std::get<2>(order[i]) == robber_first;
      a[i][n] = counts ? 1 : 0;
    }
    for (int col = 0; col < n; ++col) {
      int piv = col;
      while (piv < n && a[piv][col] == 0) ++piv;
      if (piv == n) throw std::runtime_error("oracle: singular system");
      std::swap(a[col], a[piv]);
      Q inv = 1 / a[col][col];
      for (int j = col; j <= n; ++j) a[col][j] *= inv;
      for (int i = 0; i < n; ++i) {
        if (i == col || a[i][col] == 0) continue;
        Q f = a[i][col];
        for (int j = col; j <= n; ++j) a[i][j] -= f * a[col][j];
      }
    }
    return a[0][n];
  }
};

}  // namespace oracle
