#ifndef FAIRDIV_DECOMPOSITION_HPP
#define FAIRDIV_DECOMPOSITION_HPP

#include <string>
#include <vector>

#include "fairdiv/bipartite_graph.hpp"

namespace fairdiv {

// Canonical partition of a bipartite graph into a "small" part (X_S, Y_S)
// that admits no nonempty envy-free matching and a "large" part (X_L, Y_L)
// in which every envy-free matching lives. The partition is unique: it does
// not depend on which maximum matching it is computed from.
//
// It is built from the alternating layer sequence of a maximum matching M:
//   X_0 = unmatched x-vertices,
//   Y_i = vertices adjacent to X_{i-1} through non-matching edges, minus all
//         earlier Y-layers,
//   X_i = the M-partners of Y_i,
// stopping just before the first empty layer. X_S is the union of X-layers,
// Y_S the union of Y-layers; the complements form X_L and Y_L.
//
// Guarantees (checked internally where cheap):
//   - no edge joins X_S to Y_L;
//   - M restricted to X_L x Y_L saturates X_L, and that restriction is an
//     envy-free matching of maximum cardinality in the whole graph;
//   - every envy-free matching uses only X_L x Y_L edges.
struct EfmDecomposition {
  std::vector<int> x_s, x_l, y_s, y_l;        // each sorted ascending
  std::vector<std::vector<int>> x_layers;     // X_0, X_1, ..., X_k
  std::vector<std::vector<int>> y_layers;     // Y_1, ..., Y_k
  Matching base_matching;                     // the maximum matching used
};

EfmDecomposition decompose(const BipartiteGraph& g);

// Same, but from a caller-supplied maximum matching (useful to confirm the
// partition does not depend on the choice). Throws input_error if base is
// not a maximum matching of g.
EfmDecomposition decompose_from_matching(const BipartiteGraph& g, const Matching& base);

// Maximum-cardinality envy-free matching: the base matching restricted to
// X_L x Y_L. May be empty.
Matching max_cardinality_efm(const BipartiteGraph& g);

// Minimum/maximum total weight among maximum-cardinality envy-free matchings,
// computed by running the weighted solver inside the large part.
Matching min_weight_efm(const WeightedBipartiteGraph& wg);
Matching max_weight_efm(const WeightedBipartiteGraph& wg);

// Which certificate explains the existence answer. The first two are simple
// sufficient conditions, reported when they fire; the "not saturated"
// certificate is the exact criterion on (X united with N(X), E).
enum class NonemptyReason {
  kNeighborhoodAtLeastX,   // |N(X)| >= |X| >= 1
  kNoNeighborhoodSaturatingMatching,  // no matching saturates N(X)
  kNotYPathSaturated,      // exact criterion fired, simpler ones did not
  kYPathSaturated,         // no nonempty envy-free matching exists
};

std::string reason_label(NonemptyReason reason);

struct NonemptyEfmAnswer {
  bool nonempty = false;
  NonemptyReason reason = NonemptyReason::kYPathSaturated;
};

// Does g admit a nonempty envy-free matching? The reason is informative only.
NonemptyEfmAnswer has_nonempty_efm(const BipartiteGraph& g);

// An envy-free family of disjoint r-stars: each star pairs one x-vertex
// (center) with r distinct adjacent y-vertices, no vertex repeats anywhere,
// and no center outside the family is adjacent to a used leaf.
struct Star {
  int center = -1;
  std::vector<int> leaves;  // sorted ascending
};

struct StarMatching {
  int r = 1;
  std::vector<Star> stars;  // sorted ascending by center
};

// Maximum-size envy-free r-star family, computed by solving the envy-free
// matching problem in the graph where every x-vertex is split into r copies.
// Any envy-free matching there saturates each copy group entirely or not at
// all, so the copies collapse back into stars.
StarMatching max_r_star_efm(const BipartiteGraph& g, int r);

}  // namespace fairdiv

#endif  // FAIRDIV_DECOMPOSITION_HPP
