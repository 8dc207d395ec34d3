#ifndef FAIRDIV_CAKE_HPP
#define FAIRDIV_CAKE_HPP

#include <initializer_list>
#include <vector>

#include "fairdiv/rational.hpp"

namespace fairdiv {

// Half-open interval [lo, hi) inside the unit cake [0, 1).
struct Interval {
  Rational lo, hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// A finite union of disjoint half-open intervals within [0, 1), kept in
// normal form: sorted, empty intervals dropped, touching intervals merged.
class Piece {
 public:
  Piece() = default;
  explicit Piece(std::vector<Interval> intervals);
  Piece(std::initializer_list<Interval> intervals)
      : Piece(std::vector<Interval>(intervals)) {}
  static Piece whole_cake();  // [0, 1)

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }

  // Intersection with [lo, hi).
  Piece restrict_to(const Rational& lo, const Rational& hi) const;

  // Union of pairwise-disjoint pieces (overlap raises input_error).
  static Piece union_of(const std::vector<Piece>& pieces);

  friend bool operator==(const Piece&, const Piece&) = default;

 private:
  std::vector<Interval> intervals_;
};

// Value density over [0, 1): constant on each [breakpoints[j], breakpoints[j+1])
// with non-negative rational density densities[j]. Breakpoints are strictly
// increasing, starting at 0 and ending at 1.
class PiecewiseConstantValuation {
 public:
  PiecewiseConstantValuation(std::vector<Rational> breakpoints, std::vector<Rational> densities);

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Rational>& densities() const { return densities_; }
  const Rational& total() const { return total_; }  // value of the whole cake

 private:
  std::vector<Rational> breakpoints_;
  std::vector<Rational> densities_;
  Rational total_;
};

// Exact value of a piece under a valuation: the integral of the density.
Rational eval(const PiecewiseConstantValuation& v, const Piece& piece);

// The parts-1 cut points that split `piece` into `parts` consecutive
// sub-pieces of exactly equal value under v. Each cut point is the leftmost
// position where the running value reaches the corresponding fraction, so
// cuts never wander into zero-density plateaus. Requires eval(v, piece) > 0.
std::vector<Rational> mark_equal_partition(const PiecewiseConstantValuation& v,
                                           const Piece& piece, int parts);

// Splits a piece at ascending cut points: result[i] is the part of `piece`
// lying in [marks[i-1], marks[i]) (with outer bounds 0 and 1). The results
// partition `piece` exactly.
std::vector<Piece> split_at_marks(const Piece& piece, const std::vector<Rational>& marks);

// Index of the lexicographically smallest mark vector (ties: lowest index).
// All vectors must have equal length.
int select_lexicographic_min(const std::vector<std::vector<Rational>>& mark_vectors);

// Edge weight used by the symmetric protocol: 2^(agent_count * agent_weight
// + piece_weight). Distinct (agent weight, piece weight) pairs give distinct
// powers, so no two edge subsets ever weigh the same.
Rational symmetric_edge_weight(int agent_count, int agent_weight, int piece_weight);

struct CakeAllocation {
  std::vector<Piece> pieces;  // one per agent, indexed as the input
};

// Proportional division: each of the n agents receives a piece worth at
// least 1/n of the whole cake by their own valuation, and the pieces
// partition [0, 1) exactly. Round structure: the lowest-indexed remaining
// agent cuts the remaining cake into equal parts by their own measure, a
// maximum envy-free matching over the "worth enough" bipartite graph hands
// pieces out, matched agents leave, and the rest of the cake is re-cut.
CakeAllocation lone_divider(const std::vector<PiecewiseConstantValuation>& valuations);

// Anonymous proportional division: permuting the agents' valuations permutes
// the allocated values identically (same-cut ties are resolved by position,
// which never affects values). Each level cuts at the lexicographically
// smallest equal-partition mark vector, matches agents to acceptable pieces
// by a minimum-weight envy-free matching with power-of-two weights, hands
// pieces directly to agents that accept every piece, and recurses on
// same-weight groups and on the unmatched remainder.
CakeAllocation symmetric_divide(const std::vector<PiecewiseConstantValuation>& valuations,
                                const Piece& cake);
CakeAllocation symmetric_divide(const std::vector<PiecewiseConstantValuation>& valuations);

}  // namespace fairdiv

#endif  // FAIRDIV_CAKE_HPP
