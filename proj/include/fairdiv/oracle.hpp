#ifndef FAIRDIV_ORACLE_HPP
#define FAIRDIV_ORACLE_HPP

#include <string>
#include <vector>

#include "fairdiv/bipartite_graph.hpp"
#include "fairdiv/cake.hpp"
#include "fairdiv/mms.hpp"
#include "fairdiv/rational.hpp"

// Brute-force reference implementations and allocation verifiers. Everything
// here works straight from the definitions and shares no algorithmic code
// with the solvers it checks, so agreement is meaningful evidence. All of it
// is desk-scale by design.
namespace fairdiv::oracle {

inline constexpr int kDefaultMaxVertices = 14;
inline constexpr int kDefaultMaxObjects = 12;

// Every envy-free matching of the graph (including the empty one), built by
// recursive edge inclusion in ascending edge order and filtered by the
// definition: no unmatched left vertex may neighbor a matched right vertex.
// Sorted lexicographically by pair list.
std::vector<Matching> enumerate_efms(const BipartiteGraph& graph,
                                     int max_vertices = kDefaultMaxVertices);

// Exact maximin share by plain enumeration of every partition of the objects
// into at most d piles, taking for each the least total value of a union of
// l piles (piles may be empty).
Rational brute_mms(const std::vector<Rational>& values, int l, int d,
                   int max_objects = kDefaultMaxObjects);

// Largest number of stars over all envy-free r-star matchings: every chosen
// center owns exactly r of its neighbors, leaves are disjoint, and no
// centerless left vertex neighbors any used leaf. Exhaustive.
int max_envy_free_r_star_size(const BipartiteGraph& graph, int r,
                              int max_vertices = kDefaultMaxVertices);

struct CakeVerification {
  bool ok = true;
  std::vector<std::string> violations;  // deterministic order
  // Per agent: n * V_i(piece_i) - V_i(whole cake); proportionality holds
  // exactly when every margin is non-negative.
  std::vector<Rational> margins;
};

// Checks that the pieces exactly partition [0,1) and that every agent's
// piece is worth at least a 1/n share of the whole cake to them.
CakeVerification verify_proportional_allocation(
    const std::vector<PiecewiseConstantValuation>& valuations,
    const CakeAllocation& allocation);

struct MmsVerification {
  bool ok = true;
  std::vector<std::string> violations;
  std::vector<Rational> guarantees;  // per agent: threshold * brute maximin share
  std::vector<Rational> margins;     // per agent: bundle value - guarantee
};

// Checks that the bundles partition the objects and that each agent's bundle
// value reaches their variant's guarantee, with the maximin share recomputed
// from scratch by brute_mms.
MmsVerification verify_mms_allocation(const MmsInstance& instance,
                                      const std::vector<MmsVariant>& variants,
                                      const ObjectAllocation& allocation,
                                      int max_objects = kDefaultMaxObjects);

struct RelaxedEnvyReport {
  bool envy_free = true;  // no unmatched left vertex neighbors a matched right vertex
  // Smallest alpha for which the matching is alpha-fraction envy-free:
  // |N(x) ∩ matched| <= alpha * |N(x)| for every unmatched x.
  Rational min_alpha;
  // Smallest c for which it is c-additive envy-free: |N(x) ∩ matched| <= c.
  int min_c = 0;
};

RelaxedEnvyReport relaxed_envy_report(const BipartiteGraph& graph, const Matching& matching);

}  // namespace fairdiv::oracle

#endif  // FAIRDIV_ORACLE_HPP
