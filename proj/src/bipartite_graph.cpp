#include "fairdiv/bipartite_graph.hpp"

#include <algorithm>
#include <tuple>

#include "fairdiv/errors.hpp"

namespace fairdiv {

Matching::Matching(std::vector<std::pair<int, int>> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  for (size_t i = 1; i < pairs_.size(); ++i) {
    require_input(pairs_[i].first != pairs_[i - 1].first,
                  "matching repeats x-vertex " + std::to_string(pairs_[i].first));
  }
  std::vector<int> ys;
  ys.reserve(pairs_.size());
  for (const auto& [x, y] : pairs_) ys.push_back(y);
  std::sort(ys.begin(), ys.end());
  for (size_t i = 1; i < ys.size(); ++i) {
    require_input(ys[i] != ys[i - 1], "matching repeats y-vertex " + std::to_string(ys[i]));
  }
}

std::vector<int> Matching::x_to_y(int x_count) const {
  std::vector<int> map(x_count, -1);
  for (const auto& [x, y] : pairs_) {
    require_input(x >= 0 && x < x_count, "matching x-vertex out of range");
    map[x] = y;
  }
  return map;
}

std::vector<int> Matching::y_to_x(int y_count) const {
  std::vector<int> map(y_count, -1);
  for (const auto& [x, y] : pairs_) {
    require_input(y >= 0 && y < y_count, "matching y-vertex out of range");
    map[y] = x;
  }
  return map;
}

BipartiteGraph::BipartiteGraph(int x_count, int y_count,
                               const std::vector<std::pair<int, int>>& edges)
    : x_count_(x_count), y_count_(y_count) {
  require_input(x_count >= 0 && y_count >= 0, "negative vertex count");
  adj_.assign(x_count_, {});
  for (const auto& [x, y] : edges) {
    require_input(x >= 0 && x < x_count_,
                  "edge x-index " + std::to_string(x) + " out of range");
    require_input(y >= 0 && y < y_count_,
                  "edge y-index " + std::to_string(y) + " out of range");
    adj_[x].push_back(y);
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    for (size_t i = 1; i < list.size(); ++i) {
      require_input(list[i] != list[i - 1], "duplicate edge in graph");
    }
    edge_count_ += static_cast<int>(list.size());
  }
}

const std::vector<int>& BipartiteGraph::neighbors_of(int x) const {
  require_input(x >= 0 && x < x_count_, "x-index " + std::to_string(x) + " out of range");
  return adj_[x];
}

bool BipartiteGraph::has_edge(int x, int y) const {
  if (x < 0 || x >= x_count_) return false;
  return std::binary_search(adj_[x].begin(), adj_[x].end(), y);
}

std::vector<std::pair<int, int>> BipartiteGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (int x = 0; x < x_count_; ++x) {
    for (int y : adj_[x]) out.emplace_back(x, y);
  }
  return out;
}

void BipartiteGraph::validate_matching(const Matching& m) const {
  for (const auto& [x, y] : m.pairs()) {
    require_input(x >= 0 && x < x_count_ && y >= 0 && y < y_count_,
                  "matching pair out of range");
    require_input(has_edge(x, y), "matching pair (" + std::to_string(x) + "," +
                                      std::to_string(y) + ") is not an edge");
  }
}

WeightedBipartiteGraph::WeightedBipartiteGraph(
    BipartiteGraph graph, const std::vector<std::tuple<int, int, Rational>>& edge_weights)
    : graph_(std::move(graph)) {
  weights_.assign(graph_.x_count(), {});
  std::vector<std::vector<bool>> seen(graph_.x_count());
  for (int x = 0; x < graph_.x_count(); ++x) {
    weights_[x].assign(graph_.neighbors_of(x).size(), Rational(0));
    seen[x].assign(graph_.neighbors_of(x).size(), false);
  }
  for (const auto& [x, y, w] : edge_weights) {
    require_input(graph_.has_edge(x, y), "weight given for non-edge (" + std::to_string(x) +
                                             "," + std::to_string(y) + ")");
    require_input(!w.is_negative(), "negative edge weight on (" + std::to_string(x) + "," +
                                        std::to_string(y) + ")");
    const auto& list = graph_.neighbors_of(x);
    size_t k = std::lower_bound(list.begin(), list.end(), y) - list.begin();
    require_input(!seen[x][k], "duplicate weight for edge (" + std::to_string(x) + "," +
                                   std::to_string(y) + ")");
    seen[x][k] = true;
    weights_[x][k] = w;
  }
  for (int x = 0; x < graph_.x_count(); ++x) {
    for (size_t k = 0; k < seen[x].size(); ++k) {
      require_input(seen[x][k], "edge (" + std::to_string(x) + "," +
                                    std::to_string(graph_.neighbors_of(x)[k]) +
                                    ") has no weight");
    }
  }
}

const Rational& WeightedBipartiteGraph::weight(int x, int y) const {
  require_input(graph_.has_edge(x, y), "weight requested for non-edge");
  const auto& list = graph_.neighbors_of(x);
  size_t k = std::lower_bound(list.begin(), list.end(), y) - list.begin();
  return weights_[x][k];
}

Rational WeightedBipartiteGraph::total_weight(const Matching& m) const {
  Rational sum;
  for (const auto& [x, y] : m.pairs()) sum += weight(x, y);
  return sum;
}

std::vector<int> neighbors(const BipartiteGraph& g, const std::vector<int>& x_subset) {
  std::vector<bool> seen(g.y_count(), false);
  for (int x : x_subset) {
    for (int y : g.neighbors_of(x)) seen[y] = true;
  }
  std::vector<int> out;
  for (int y = 0; y < g.y_count(); ++y) {
    if (seen[y]) out.push_back(y);
  }
  return out;
}

bool is_envy_free(const BipartiteGraph& g, const Matching& m) {
  g.validate_matching(m);
  std::vector<bool> x_matched(g.x_count(), false);
  std::vector<bool> y_matched(g.y_count(), false);
  for (const auto& [x, y] : m.pairs()) {
    x_matched[x] = true;
    y_matched[y] = true;
  }
  for (int x = 0; x < g.x_count(); ++x) {
    if (x_matched[x]) continue;
    for (int y : g.neighbors_of(x)) {
      if (y_matched[y]) return false;
    }
  }
  return true;
}

}  // namespace fairdiv
