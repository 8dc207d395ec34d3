#ifndef FAIRDIV_GENERAL_MATCHING_HPP
#define FAIRDIV_GENERAL_MATCHING_HPP

#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "fairdiv/rational.hpp"

namespace fairdiv {

// Minimal undirected simple graph over vertices {0..vertex_count-1}.
class GeneralGraph {
 public:
  GeneralGraph() = default;
  GeneralGraph(int vertex_count, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  const std::vector<int>& neighbors_of(int v) const;
  bool has_edge(int u, int v) const;
  // All edges as (u, v) with u < v, ascending.
  std::vector<std::pair<int, int>> edges() const;

 private:
  std::vector<std::vector<int>> adj_;
};

// Maximum-cardinality matching in a general graph (blossom shrinking).
// Returns pairs (u, v) with u < v, sorted ascending.
std::vector<std::pair<int, int>> general_max_matching(const GeneralGraph& g);

// Matching under the symmetric notion of envy-freeness, where every vertex
// plays both roles: no unmatched vertex may be adjacent to any matched one.
// A connected graph admits a nonempty such matching iff it admits a perfect
// matching, so the answer is the union of per-component perfect matchings
// over exactly those components that have one.
//
// If weights are given (one non-negative rational per edge, each edge exactly
// once), each perfectly-matchable component contributes its minimum-weight
// perfect matching; ties break to the lexicographically smallest pair list.
// Weighted components are solved exhaustively and must have at most 12
// vertices (input_error beyond that).
std::vector<std::pair<int, int>> symmetric_efm(
    const GeneralGraph& g,
    const std::optional<std::vector<std::tuple<int, int, Rational>>>& weights = std::nullopt);

}  // namespace fairdiv

#endif  // FAIRDIV_GENERAL_MATCHING_HPP
