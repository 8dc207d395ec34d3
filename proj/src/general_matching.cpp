#include "fairdiv/general_matching.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "fairdiv/errors.hpp"

namespace fairdiv {

GeneralGraph::GeneralGraph(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
  require_input(vertex_count >= 0, "negative vertex count");
  adj_.assign(vertex_count, {});
  for (const auto& [u, v] : edges) {
    require_input(u >= 0 && u < vertex_count && v >= 0 && v < vertex_count,
                  "edge endpoint out of range");
    require_input(u != v, "self-loop");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    for (size_t i = 1; i < list.size(); ++i) {
      require_input(list[i] != list[i - 1], "duplicate edge in graph");
    }
  }
}

const std::vector<int>& GeneralGraph::neighbors_of(int v) const {
  require_input(v >= 0 && v < vertex_count(), "vertex out of range");
  return adj_[v];
}

bool GeneralGraph::has_edge(int u, int v) const {
  if (u < 0 || u >= vertex_count()) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<std::pair<int, int>> GeneralGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < vertex_count(); ++u) {
    for (int v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

namespace {

// Edmonds' blossom-shrinking maximum matching. Searches for an augmenting
// path from each free vertex in ascending order, contracting odd cycles as
// they are discovered.
class BlossomMatcher {
 public:
  explicit BlossomMatcher(const GeneralGraph& g)
      : g_(g), n_(g.vertex_count()), match_(n_, -1), parent_(n_, -1), base_(n_, 0) {}

  std::vector<int> run() {
    for (int v = 0; v < n_; ++v) {
      if (match_[v] != -1) continue;
      int tail = find_augmenting_path(v);
      while (tail != -1) {
        int pv = parent_[tail];
        int next = match_[pv];
        match_[tail] = pv;
        match_[pv] = tail;
        tail = next;
      }
    }
    return match_;
  }

 private:
  int lowest_common_base(int a, int b) {
    std::vector<bool> seen(n_, false);
    for (int cur = a;;) {
      cur = base_[cur];
      seen[cur] = true;
      if (match_[cur] == -1) break;
      cur = parent_[match_[cur]];
    }
    for (int cur = b;;) {
      cur = base_[cur];
      if (seen[cur]) return cur;
      cur = parent_[match_[cur]];
    }
  }

  void mark_blossom_path(int v, int stop_base, int child, std::vector<bool>& in_blossom) {
    while (base_[v] != stop_base) {
      in_blossom[base_[v]] = true;
      in_blossom[base_[match_[v]]] = true;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  int find_augmenting_path(int root) {
    std::vector<bool> used(n_, false);
    std::fill(parent_.begin(), parent_.end(), -1);
    for (int i = 0; i < n_; ++i) base_[i] = i;
    used[root] = true;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int to : g_.neighbors_of(v)) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
          // Even-to-even edge: contract the blossom around the common base.
          int stop = lowest_common_base(v, to);
          std::vector<bool> in_blossom(n_, false);
          mark_blossom_path(v, stop, to, in_blossom);
          mark_blossom_path(to, stop, v, in_blossom);
          for (int i = 0; i < n_; ++i) {
            if (in_blossom[base_[i]]) {
              base_[i] = stop;
              if (!used[i]) {
                used[i] = true;
                q.push(i);
              }
            }
          }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (match_[to] == -1) return to;  // augmenting path found
          used[match_[to]] = true;
          q.push(match_[to]);
        }
      }
    }
    return -1;
  }

  const GeneralGraph& g_;
  int n_;
  std::vector<int> match_, parent_, base_;
};

std::vector<std::pair<int, int>> pairs_from(const std::vector<int>& match) {
  std::vector<std::pair<int, int>> out;
  for (int v = 0; v < static_cast<int>(match.size()); ++v) {
    if (match[v] > v) out.emplace_back(v, match[v]);
  }
  return out;
}

// Exhaustive minimum-weight perfect matching on a small vertex set given by
// `members` (global indices). Tie-break: lexicographically smallest pair list.
struct ExhaustivePerfectMatcher {
  const GeneralGraph& g;
  const std::map<std::pair<int, int>, Rational>& weight;
  std::vector<int> members;

  std::vector<bool> taken;
  std::vector<std::pair<int, int>> current, best;
  Rational current_weight, best_weight;
  bool found = false;

  std::vector<std::pair<int, int>> solve() {
    taken.assign(members.size(), false);
    search();
    require_internal(found, "component marked perfectly matchable has no perfect matching");
    return best;
  }

  void search() {
    size_t u_local = members.size();
    for (size_t i = 0; i < members.size(); ++i) {
      if (!taken[i]) {
        u_local = i;
        break;
      }
    }
    if (u_local == members.size()) {
      if (!found || current_weight < best_weight ||
          (current_weight == best_weight && current < best)) {
        found = true;
        best = current;
        best_weight = current_weight;
      }
      return;
    }
    int u = members[u_local];
    taken[u_local] = true;
    for (size_t j = u_local + 1; j < members.size(); ++j) {
      int v = members[j];
      if (taken[j] || !g.has_edge(u, v)) continue;
      taken[j] = true;
      const Rational& w = weight.at({u, v});
      current.emplace_back(u, v);
      current_weight += w;
      search();
      current_weight -= w;
      current.pop_back();
      taken[j] = false;
    }
    taken[u_local] = false;
  }
};

}  // namespace

std::vector<std::pair<int, int>> general_max_matching(const GeneralGraph& g) {
  return pairs_from(BlossomMatcher(g).run());
}

std::vector<std::pair<int, int>> symmetric_efm(
    const GeneralGraph& g,
    const std::optional<std::vector<std::tuple<int, int, Rational>>>& weights) {
  const int n = g.vertex_count();

  std::map<std::pair<int, int>, Rational> weight_map;
  if (weights) {
    for (const auto& [u, v, w] : *weights) {
      require_input(g.has_edge(u, v), "weight given for non-edge");
      require_input(!w.is_negative(), "negative edge weight");
      auto key = std::minmax(u, v);
      require_input(weight_map.emplace(std::make_pair(key.first, key.second), w).second,
                    "duplicate weight for an edge");
    }
    require_input(weight_map.size() == g.edges().size(), "some edge has no weight");
  }

  std::vector<int> match = BlossomMatcher(g).run();

  // A maximum matching restricts to a maximum matching on every connected
  // component, so a component is perfectly matchable exactly when the global
  // matching saturates it.
  std::vector<int> component(n, -1);
  std::vector<std::pair<int, int>> result;
  for (int start = 0; start < n; ++start) {
    if (component[start] != -1) continue;
    std::vector<int> members;
    std::queue<int> q;
    q.push(start);
    component[start] = start;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      members.push_back(v);
      for (int to : g.neighbors_of(v)) {
        if (component[to] == -1) {
          component[to] = start;
          q.push(to);
        }
      }
    }
    std::sort(members.begin(), members.end());
    bool perfect = std::all_of(members.begin(), members.end(),
                               [&](int v) { return match[v] != -1; });
    if (!perfect) continue;

    if (weights) {
      require_input(members.size() <= 12,
                    "weighted component with " + std::to_string(members.size()) +
                        " vertices exceeds the exhaustive-search limit of 12");
      ExhaustivePerfectMatcher solver{g, weight_map, members, {}, {}, {}, Rational(0),
                                      Rational(0), false};
      auto pairs = solver.solve();
      result.insert(result.end(), pairs.begin(), pairs.end());
    } else {
      for (int v : members) {
        if (match[v] > v) result.emplace_back(v, match[v]);
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace fairdiv
