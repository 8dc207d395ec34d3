#ifndef FAIRDIV_MATCHING_ENGINE_HPP
#define FAIRDIV_MATCHING_ENGINE_HPP

#include "fairdiv/bipartite_graph.hpp"

namespace fairdiv {

enum class Objective { kMinimize, kMaximize };

// Maximum-cardinality bipartite matching via Hopcroft-Karp. BFS/DFS scan
// vertices and adjacency in ascending index order, so the result is a pure
// function of the graph.
Matching max_cardinality_matching(const BipartiteGraph& g);

// Among all maximum-cardinality matchings, returns the one of minimum (or
// maximum) total weight; among equal-weight optima, returns the one whose
// sorted pair list is lexicographically smallest. Implemented as successive
// shortest augmenting paths with potentials over exact rational costs; the
// tie-break is folded into a secondary cost component, which makes the
// optimum unique and the result deterministic.
Matching extreme_weight_max_cardinality_matching(const WeightedBipartiteGraph& wg,
                                                 Objective objective);

}  // namespace fairdiv

#endif  // FAIRDIV_MATCHING_ENGINE_HPP
