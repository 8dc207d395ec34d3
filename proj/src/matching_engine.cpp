#include "fairdiv/matching_engine.hpp"

#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "fairdiv/errors.hpp"

namespace fairdiv {

Matching max_cardinality_matching(const BipartiteGraph& g) {
  const int nx = g.x_count();
  const int ny = g.y_count();
  const int kInf = std::numeric_limits<int>::max();
  std::vector<int> match_x(nx, -1), match_y(ny, -1), dist(nx, 0);

  auto bfs = [&]() -> bool {
    std::queue<int> q;
    for (int x = 0; x < nx; ++x) {
      if (match_x[x] == -1) {
        dist[x] = 0;
        q.push(x);
      } else {
        dist[x] = kInf;
      }
    }
    bool reachable_free_y = false;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y : g.neighbors_of(x)) {
        int nxt = match_y[y];
        if (nxt == -1) {
          reachable_free_y = true;
        } else if (dist[nxt] == kInf) {
          dist[nxt] = dist[x] + 1;
          q.push(nxt);
        }
      }
    }
    return reachable_free_y;
  };

  std::function<bool(int)> dfs = [&](int x) -> bool {
    for (int y : g.neighbors_of(x)) {
      int nxt = match_y[y];
      if (nxt == -1 || (dist[nxt] == dist[x] + 1 && dfs(nxt))) {
        match_x[x] = y;
        match_y[y] = x;
        return true;
      }
    }
    dist[x] = kInf;
    return false;
  };

  while (bfs()) {
    for (int x = 0; x < nx; ++x) {
      if (match_x[x] == -1) dfs(x);
    }
  }

  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < nx; ++x) {
    if (match_x[x] != -1) pairs.emplace_back(x, match_x[x]);
  }
  return Matching(std::move(pairs));
}

namespace {

// Exact cost with a secondary tie-break component, ordered lexicographically.
struct Cost {
  Rational primary;
  Rational tie;

  Cost() = default;
  Cost(Rational p, Rational t) : primary(std::move(p)), tie(std::move(t)) {}

  Cost& operator+=(const Cost& o) {
    primary += o.primary;
    tie += o.tie;
    return *this;
  }
  Cost& operator-=(const Cost& o) {
    primary -= o.primary;
    tie -= o.tie;
    return *this;
  }
  friend Cost operator+(Cost a, const Cost& b) { a += b; return a; }
  friend Cost operator-(Cost a, const Cost& b) { a -= b; return a; }
  friend bool operator<(const Cost& a, const Cost& b) {
    if (a.primary != b.primary) return a.primary < b.primary;
    return a.tie < b.tie;
  }
};

}  // namespace

Matching extreme_weight_max_cardinality_matching(const WeightedBipartiteGraph& wg,
                                                 Objective objective) {
  const BipartiteGraph& g = wg.graph();
  const int nx = g.x_count();
  const int ny = g.y_count();

  // Edge costs. Maximization is reduced to minimization by flipping weights
  // against the largest one; all maximum-cardinality matchings have the same
  // size, so the flip preserves their relative order. The tie component
  // 1 - 2^-(rank+1) (rank = position in ascending (x, y) edge order) is
  // non-negative and gives every edge subset a distinct total, so exactly one
  // optimum exists: the lexicographically smallest pair list.
  Rational w_max;
  if (objective == Objective::kMaximize) {
    for (int x = 0; x < nx; ++x) {
      for (int y : g.neighbors_of(x)) {
        if (w_max < wg.weight(x, y)) w_max = wg.weight(x, y);
      }
    }
  }
  std::vector<std::vector<Cost>> cost(nx);
  {
    long rank = 0;
    for (int x = 0; x < nx; ++x) {
      const auto& nbrs = g.neighbors_of(x);
      cost[x].reserve(nbrs.size());
      for (int y : nbrs) {
        Rational primary = (objective == Objective::kMinimize) ? wg.weight(x, y)
                                                               : w_max - wg.weight(x, y);
        cost[x].emplace_back(std::move(primary), Rational(1) - Rational::pow2(-(rank + 1)));
        ++rank;
      }
    }
  }

  std::vector<int> match_x(nx, -1), match_y(ny, -1);
  // Node potentials; reduced cost of arc u->v is cost + pot(u) - pot(v) and
  // stays non-negative throughout.
  std::vector<Cost> pot_x(nx), pot_y(ny);
  std::vector<Cost> dist_x(nx), dist_y(ny);
  std::vector<bool> reached_x(nx), reached_y(ny), done_x(nx), done_y(ny);
  std::vector<int> parent_y(ny, -1);

  while (true) {
    std::fill(reached_x.begin(), reached_x.end(), false);
    std::fill(reached_y.begin(), reached_y.end(), false);
    std::fill(done_x.begin(), done_x.end(), false);
    std::fill(done_y.begin(), done_y.end(), false);
    std::fill(parent_y.begin(), parent_y.end(), -1);
    for (int x = 0; x < nx; ++x) {
      if (match_x[x] == -1) {
        reached_x[x] = true;
        dist_x[x] = Cost();
      }
    }

    // Dense Dijkstra over both sides; x-nodes win index ties before y-nodes.
    while (true) {
      int best_x = -1, best_y = -1;
      for (int x = 0; x < nx; ++x) {
        if (reached_x[x] && !done_x[x] && (best_x == -1 || dist_x[x] < dist_x[best_x])) {
          best_x = x;
        }
      }
      for (int y = 0; y < ny; ++y) {
        if (reached_y[y] && !done_y[y] && (best_y == -1 || dist_y[y] < dist_y[best_y])) {
          best_y = y;
        }
      }
      if (best_x == -1 && best_y == -1) break;
      bool take_x = best_y == -1 || (best_x != -1 && !(dist_y[best_y] < dist_x[best_x]));
      if (take_x) {
        int x = best_x;
        done_x[x] = true;
        const auto& nbrs = g.neighbors_of(x);
        for (size_t k = 0; k < nbrs.size(); ++k) {
          int y = nbrs[k];
          if (y == match_x[x]) continue;
          Cost nd = dist_x[x] + cost[x][k] + pot_x[x] - pot_y[y];
          if (!reached_y[y] || nd < dist_y[y]) {
            reached_y[y] = true;
            dist_y[y] = nd;
            parent_y[y] = x;
          }
        }
      } else {
        int y = best_y;
        done_y[y] = true;
        int x = match_y[y];
        if (x != -1) {
          const auto& nbrs = g.neighbors_of(x);
          size_t k = std::lower_bound(nbrs.begin(), nbrs.end(), y) - nbrs.begin();
          Cost nd = dist_y[y] - cost[x][k] + pot_y[y] - pot_x[x];
          if (!reached_x[x] || nd < dist_x[x]) {
            reached_x[x] = true;
            dist_x[x] = nd;
          }
        }
      }
    }

    // Shortest augmenting path target: the free y with minimum distance.
    // Free-y potentials drift uniformly across phases, so the minimum reduced
    // distance is also the minimum true distance.
    int target = -1;
    for (int y = 0; y < ny; ++y) {
      if (match_y[y] == -1 && reached_y[y] && (target == -1 || dist_y[y] < dist_y[target])) {
        target = y;
      }
    }
    if (target == -1) break;  // No augmenting path: matching is maximum.

    const Cost limit = dist_y[target];
    for (int x = 0; x < nx; ++x) {
      if (reached_x[x]) pot_x[x] += (dist_x[x] < limit) ? dist_x[x] : limit;
    }
    for (int y = 0; y < ny; ++y) {
      if (reached_y[y]) pot_y[y] += (dist_y[y] < limit) ? dist_y[y] : limit;
    }

    int y = target;
    while (true) {
      int x = parent_y[y];
      require_internal(x != -1, "augmenting path reconstruction lost its parent");
      int prev_y = match_x[x];
      match_x[x] = y;
      match_y[y] = x;
      if (prev_y == -1) break;
      y = prev_y;
    }
  }

  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < nx; ++x) {
    if (match_x[x] != -1) pairs.emplace_back(x, match_x[x]);
  }
  return Matching(std::move(pairs));
}

}  // namespace fairdiv
