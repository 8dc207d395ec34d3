#ifndef FAIRDIV_BIPARTITE_GRAPH_HPP
#define FAIRDIV_BIPARTITE_GRAPH_HPP

#include <initializer_list>
#include <utility>
#include <vector>

#include "fairdiv/rational.hpp"

namespace fairdiv {

// A matching: a set of (x, y) pairs in which every x-index and every y-index
// appears at most once. Stored as a pair list sorted ascending by (x, y),
// which is also the canonical order used for deterministic output and for
// lexicographic tie-breaking between equal-weight matchings.
class Matching {
 public:
  Matching() = default;
  // Sorts and validates that no x or y repeats (throws input_error).
  explicit Matching(std::vector<std::pair<int, int>> pairs);
  Matching(std::initializer_list<std::pair<int, int>> pairs)
      : Matching(std::vector<std::pair<int, int>>(pairs)) {}

  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  bool empty() const { return pairs_.empty(); }

  // Partner maps: entry -1 means unmatched. Sized by the given side count.
  std::vector<int> x_to_y(int x_count) const;
  std::vector<int> y_to_x(int y_count) const;

  friend bool operator==(const Matching& a, const Matching& b) { return a.pairs_ == b.pairs_; }

 private:
  std::vector<std::pair<int, int>> pairs_;
};

// Simple bipartite graph over vertex sides X = {0..x_count-1} and
// Y = {0..y_count-1}. Adjacency lists are strictly increasing; duplicate or
// out-of-range edges are rejected at construction.
class BipartiteGraph {
 public:
  BipartiteGraph() : x_count_(0), y_count_(0) {}
  BipartiteGraph(int x_count, int y_count, const std::vector<std::pair<int, int>>& edges);

  int x_count() const { return x_count_; }
  int y_count() const { return y_count_; }
  int edge_count() const { return edge_count_; }
  const std::vector<int>& neighbors_of(int x) const;
  const std::vector<std::vector<int>>& adjacency() const { return adj_; }
  bool has_edge(int x, int y) const;

  // All edges in ascending (x, y) order.
  std::vector<std::pair<int, int>> edges() const;

  // Throws input_error unless m is a matching using only edges of this graph.
  void validate_matching(const Matching& m) const;

 private:
  int x_count_;
  int y_count_;
  int edge_count_ = 0;
  std::vector<std::vector<int>> adj_;
};

// A bipartite graph together with one exact non-negative rational weight per
// edge. Every edge must be assigned a weight exactly once.
class WeightedBipartiteGraph {
 public:
  WeightedBipartiteGraph() = default;
  WeightedBipartiteGraph(BipartiteGraph graph,
                         const std::vector<std::tuple<int, int, Rational>>& edge_weights);

  const BipartiteGraph& graph() const { return graph_; }
  const Rational& weight(int x, int y) const;
  Rational total_weight(const Matching& m) const;

 private:
  BipartiteGraph graph_;
  std::vector<std::vector<Rational>> weights_;  // parallel to graph_.adjacency()
};

// Union of the neighborhoods of the given x-vertices, as a sorted, duplicate-
// free list of y-indices. Out-of-range indices raise input_error.
std::vector<int> neighbors(const BipartiteGraph& g, const std::vector<int>& x_subset);

// True iff no unmatched x-vertex is adjacent to any matched y-vertex. The
// empty matching is vacuously envy-free. Throws input_error if m is not a
// valid matching in g.
bool is_envy_free(const BipartiteGraph& g, const Matching& m);

// True iff the only envy-free matching in g is the empty one, i.e. the graph
// decomposes with an empty "large" part. The empty graph qualifies; isolated
// x-vertices are permitted. Defined in decomposition.cpp.
bool is_y_path_saturated(const BipartiteGraph& g);

}  // namespace fairdiv

#endif  // FAIRDIV_BIPARTITE_GRAPH_HPP
