#include "fairdiv/cake.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "fairdiv/bipartite_graph.hpp"
#include "fairdiv/decomposition.hpp"
#include "fairdiv/errors.hpp"

namespace fairdiv {

Piece::Piece(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  for (const auto& iv : intervals_) {
    require_input(iv.lo <= iv.hi, "interval with negative length");
    require_input(!iv.lo.is_negative() && iv.hi <= Rational(1),
                  "interval outside the unit cake");
  }
  std::erase_if(intervals_, [](const Interval& iv) { return iv.lo == iv.hi; });
  std::sort(intervals_.begin(), intervals_.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const auto& iv : intervals_) {
    if (!merged.empty()) {
      require_input(merged.back().hi <= iv.lo, "overlapping intervals in piece");
      if (merged.back().hi == iv.lo) {
        merged.back().hi = iv.hi;
        continue;
      }
    }
    merged.push_back(iv);
  }
  intervals_ = std::move(merged);
}

Piece Piece::whole_cake() { return Piece({Interval{Rational(0), Rational(1)}}); }

Piece Piece::restrict_to(const Rational& lo, const Rational& hi) const {
  std::vector<Interval> out;
  for (const auto& iv : intervals_) {
    Rational a = std::max(iv.lo, lo);
    Rational b = std::min(iv.hi, hi);
    if (a < b) out.push_back(Interval{a, b});
  }
  return Piece(std::move(out));
}

Piece Piece::union_of(const std::vector<Piece>& pieces) {
  std::vector<Interval> all;
  for (const auto& p : pieces) {
    all.insert(all.end(), p.intervals().begin(), p.intervals().end());
  }
  return Piece(std::move(all));
}

PiecewiseConstantValuation::PiecewiseConstantValuation(std::vector<Rational> breakpoints,
                                                       std::vector<Rational> densities)
    : breakpoints_(std::move(breakpoints)), densities_(std::move(densities)) {
  require_input(breakpoints_.size() >= 2, "valuation needs at least two breakpoints");
  require_input(breakpoints_.size() == densities_.size() + 1,
                "valuation needs exactly one density per breakpoint gap");
  require_input(breakpoints_.front() == Rational(0), "first breakpoint must be 0");
  require_input(breakpoints_.back() == Rational(1), "last breakpoint must be 1");
  for (size_t i = 1; i < breakpoints_.size(); ++i) {
    require_input(breakpoints_[i - 1] < breakpoints_[i],
                  "breakpoints must be strictly increasing");
  }
  for (const auto& d : densities_) {
    require_input(!d.is_negative(), "negative density");
  }
  for (size_t j = 0; j < densities_.size(); ++j) {
    total_ += densities_[j] * (breakpoints_[j + 1] - breakpoints_[j]);
  }
}

Rational eval(const PiecewiseConstantValuation& v, const Piece& piece) {
  Rational sum;
  const auto& bp = v.breakpoints();
  const auto& den = v.densities();
  for (const auto& iv : piece.intervals()) {
    for (size_t j = 0; j < den.size(); ++j) {
      if (den[j].is_zero()) continue;
      Rational a = std::max(iv.lo, bp[j]);
      Rational b = std::min(iv.hi, bp[j + 1]);
      if (a < b) sum += den[j] * (b - a);
    }
  }
  return sum;
}

namespace {

struct SubSegment {
  Rational lo, hi, density;
};

// The segments of `piece` refined against the valuation's density segments,
// ascending. Their values add up to eval(v, piece).
std::vector<SubSegment> refine(const PiecewiseConstantValuation& v, const Piece& piece) {
  std::vector<SubSegment> out;
  const auto& bp = v.breakpoints();
  const auto& den = v.densities();
  for (const auto& iv : piece.intervals()) {
    for (size_t j = 0; j < den.size(); ++j) {
      Rational a = std::max(iv.lo, bp[j]);
      Rational b = std::min(iv.hi, bp[j + 1]);
      if (a < b) out.push_back(SubSegment{a, b, den[j]});
    }
  }
  return out;
}

}  // namespace

std::vector<Rational> mark_equal_partition(const PiecewiseConstantValuation& v,
                                           const Piece& piece, int parts) {
  require_input(parts >= 1, "cannot split into fewer than one part");
  Rational total = eval(v, piece);
  require_input(total.sign() > 0, "cannot mark an equal partition of a zero-value piece");

  std::vector<SubSegment> segs = refine(v, piece);
  std::vector<Rational> marks;
  size_t s = 0;
  Rational before;  // value strictly before segs[s]
  for (int i = 1; i < parts; ++i) {
    Rational target = total * Rational(i, parts);
    while (true) {
      require_internal(s < segs.size(), "ran out of cake before reaching an equal-split target");
      Rational len = segs[s].hi - segs[s].lo;
      Rational seg_value = segs[s].density * len;
      if (segs[s].density.sign() > 0 && before + seg_value >= target) {
        marks.push_back(segs[s].lo + (target - before) / segs[s].density);
        break;  // next target may land in this same segment
      }
      before += seg_value;
      ++s;
    }
  }
  return marks;
}

std::vector<Piece> split_at_marks(const Piece& piece, const std::vector<Rational>& marks) {
  for (size_t i = 1; i < marks.size(); ++i) {
    require_input(marks[i - 1] <= marks[i], "cut points must be ascending");
  }
  std::vector<Piece> out;
  Rational lo(0);
  for (const auto& m : marks) {
    out.push_back(piece.restrict_to(lo, m));
    lo = m;
  }
  out.push_back(piece.restrict_to(lo, Rational(1)));
  return out;
}

int select_lexicographic_min(const std::vector<std::vector<Rational>>& mark_vectors) {
  require_input(!mark_vectors.empty(), "no mark vectors to choose from");
  int best = 0;
  for (size_t i = 1; i < mark_vectors.size(); ++i) {
    require_input(mark_vectors[i].size() == mark_vectors[best].size(),
                  "mark vectors differ in length");
    if (std::lexicographical_compare(mark_vectors[i].begin(), mark_vectors[i].end(),
                                     mark_vectors[best].begin(), mark_vectors[best].end())) {
      best = static_cast<int>(i);
    }
  }
  return best;
}

Rational symmetric_edge_weight(int agent_count, int agent_weight, int piece_weight) {
  require_input(agent_count >= 1, "agent count must be positive");
  require_input(agent_weight >= 0 && agent_weight < agent_count, "agent weight out of range");
  require_input(piece_weight >= 0 && piece_weight < agent_count, "piece weight out of range");
  return Rational::pow2(static_cast<long>(agent_count) * agent_weight + piece_weight);
}

CakeAllocation lone_divider(const std::vector<PiecewiseConstantValuation>& valuations) {
  const int n = static_cast<int>(valuations.size());
  require_input(n >= 1, "at least one agent required");
  std::vector<Rational> totals(n);
  for (int i = 0; i < n; ++i) {
    totals[i] = valuations[i].total();
    require_input(totals[i].sign() > 0,
                  "agent " + std::to_string(i) + " values the whole cake at zero");
  }

  CakeAllocation alloc;
  alloc.pieces.assign(n, Piece());
  std::vector<int> active(n);
  std::iota(active.begin(), active.end(), 0);
  Piece remaining = Piece::whole_cake();

  while (!active.empty()) {
    const int k = static_cast<int>(active.size());
    // Re-established invariant: every remaining agent still values the
    // remaining cake at no less than k/n of their whole-cake value.
    for (int agent : active) {
      require_internal(eval(valuations[agent], remaining) * Rational(n) >=
                           totals[agent] * Rational(k),
                       "remaining cake became too small for a remaining agent");
    }

    const int divider = active.front();
    std::vector<Rational> marks = mark_equal_partition(valuations[divider], remaining, k);
    std::vector<Piece> pieces = split_at_marks(remaining, marks);

    // Acceptability graph: a piece is acceptable if it is worth at least 1/n
    // of the agent's whole cake.
    std::vector<std::pair<int, int>> edges;
    for (int pos = 0; pos < k; ++pos) {
      for (int j = 0; j < k; ++j) {
        if (eval(valuations[active[pos]], pieces[j]) * Rational(n) >= totals[active[pos]]) {
          edges.emplace_back(pos, j);
        }
      }
    }
    BipartiteGraph g(k, k, edges);
    require_internal(static_cast<int>(g.neighbors_of(0).size()) == k,
                     "divider must accept every piece they cut");
    Matching m = max_cardinality_efm(g);
    require_internal(!m.empty(), "round assigned no piece");

    std::vector<bool> pos_matched(k, false), piece_matched(k, false);
    for (const auto& [pos, j] : m.pairs()) {
      alloc.pieces[active[pos]] = pieces[j];
      pos_matched[pos] = true;
      piece_matched[j] = true;
    }
    std::vector<int> still_active;
    for (int pos = 0; pos < k; ++pos) {
      if (!pos_matched[pos]) still_active.push_back(active[pos]);
    }
    std::vector<Piece> leftover;
    for (int j = 0; j < k; ++j) {
      if (!piece_matched[j]) leftover.push_back(pieces[j]);
    }
    require_internal(!still_active.empty() || leftover.empty(),
                     "pieces left over after the final round");
    active = std::move(still_active);
    remaining = Piece::union_of(leftover);
  }
  return alloc;
}

namespace {

struct SymmetricDivider {
  const std::vector<PiecewiseConstantValuation>& valuations;
  CakeAllocation& alloc;

  void divide(const std::vector<int>& agents, const Piece& cake) {
    const int k = static_cast<int>(agents.size());
    if (k == 0) {
      require_internal(cake.empty(), "leftover cake with no agents to serve");
      return;
    }
    if (k == 1) {
      alloc.pieces[agents[0]] = cake;
      return;
    }

    std::vector<Rational> totals(k);
    std::vector<std::vector<Rational>> mark_vectors(k);
    for (int pos = 0; pos < k; ++pos) {
      totals[pos] = eval(valuations[agents[pos]], cake);
      require_internal(totals[pos].sign() > 0,
                       "recursion handed an agent a worthless sub-cake");
      mark_vectors[pos] = mark_equal_partition(valuations[agents[pos]], cake, k);
    }
    const int divider_pos = select_lexicographic_min(mark_vectors);
    std::vector<Piece> pieces = split_at_marks(cake, mark_vectors[divider_pos]);

    // Acceptability: worth at least 1/k of this sub-cake to the agent.
    std::vector<std::vector<int>> accept(k);
    std::vector<std::pair<int, int>> edges;
    for (int pos = 0; pos < k; ++pos) {
      for (int j = 0; j < k; ++j) {
        if (eval(valuations[agents[pos]], pieces[j]) * Rational(k) >= totals[pos]) {
          accept[pos].push_back(j);
          edges.emplace_back(pos, j);
        }
      }
    }

    // Positions with identical acceptance sets must be interchangeable, so
    // they share one weight; weights order the distinct acceptance sets
    // lexicographically. Pieces weigh their own left-to-right index.
    std::vector<std::vector<int>> distinct = accept;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> agent_weight(k);
    for (int pos = 0; pos < k; ++pos) {
      agent_weight[pos] = static_cast<int>(
          std::lower_bound(distinct.begin(), distinct.end(), accept[pos]) - distinct.begin());
    }

    std::vector<std::tuple<int, int, Rational>> weights;
    weights.reserve(edges.size());
    for (const auto& [pos, j] : edges) {
      weights.emplace_back(pos, j, symmetric_edge_weight(k, agent_weight[pos], j));
    }
    BipartiteGraph g(k, k, edges);
    WeightedBipartiteGraph wg(g, weights);
    Matching m = min_weight_efm(wg);
    require_internal(!m.empty(), "level matched no agent");

    std::vector<int> piece_of(k, -1);
    std::vector<bool> piece_matched(k, false);
    for (const auto& [pos, j] : m.pairs()) {
      piece_of[pos] = j;
      piece_matched[j] = true;
    }
    {
      // No two matched edges may share a weight exponent; piece indices are
      // distinct across the matching, which already separates the powers.
      std::vector<long> exponents;
      for (const auto& [pos, j] : m.pairs()) {
        exponents.push_back(static_cast<long>(k) * agent_weight[pos] + j);
      }
      std::sort(exponents.begin(), exponents.end());
      require_internal(std::adjacent_find(exponents.begin(), exponents.end()) ==
                           exponents.end(),
                       "two matched edges share a weight exponent");
    }

    // Agents that accept every piece are matched (anything else would leave
    // them envious) and are interchangeable: each values every piece at
    // exactly 1/k of the sub-cake. Hand their matched pieces out by index.
    std::vector<int> all_accepting, their_pieces;
    for (int pos = 0; pos < k; ++pos) {
      if (static_cast<int>(accept[pos].size()) == k) {
        require_internal(piece_of[pos] != -1, "an all-accepting agent went unmatched");
        all_accepting.push_back(pos);
        their_pieces.push_back(piece_of[pos]);
      }
    }
    require_internal(!all_accepting.empty(), "no agent accepts every piece");
    require_internal(std::find(all_accepting.begin(), all_accepting.end(), divider_pos) !=
                         all_accepting.end(),
                     "the cutting agent must accept every piece");
    std::sort(their_pieces.begin(), their_pieces.end());
    for (size_t t = 0; t < all_accepting.size(); ++t) {
      alloc.pieces[agents[all_accepting[t]]] = pieces[their_pieces[t]];
    }

    // Remaining matched agents recurse in groups of equal weight on the
    // union of the group's matched pieces.
    std::map<int, std::vector<int>> groups;  // weight -> positions
    for (int pos = 0; pos < k; ++pos) {
      if (piece_of[pos] != -1 && static_cast<int>(accept[pos].size()) != k) {
        groups[agent_weight[pos]].push_back(pos);
      }
    }
    for (const auto& [w, positions] : groups) {
      std::vector<int> sub_agents;
      std::vector<Piece> sub_pieces;
      for (int pos : positions) {
        sub_agents.push_back(agents[pos]);
        sub_pieces.push_back(pieces[piece_of[pos]]);
      }
      divide(sub_agents, Piece::union_of(sub_pieces));
    }

    // Unmatched agents recurse on the union of unmatched pieces.
    std::vector<int> unmatched_agents;
    for (int pos = 0; pos < k; ++pos) {
      if (piece_of[pos] == -1) unmatched_agents.push_back(agents[pos]);
    }
    std::vector<Piece> unmatched_pieces;
    for (int j = 0; j < k; ++j) {
      if (!piece_matched[j]) unmatched_pieces.push_back(pieces[j]);
    }
    require_internal(unmatched_agents.size() == unmatched_pieces.size(),
                     "unmatched agents and unmatched pieces fell out of step");
    divide(unmatched_agents, Piece::union_of(unmatched_pieces));
  }
};

}  // namespace

CakeAllocation symmetric_divide(const std::vector<PiecewiseConstantValuation>& valuations,
                                const Piece& cake) {
  const int n = static_cast<int>(valuations.size());
  require_input(n >= 1, "at least one agent required");
  for (int i = 0; i < n; ++i) {
    require_input(eval(valuations[i], cake).sign() > 0,
                  "agent " + std::to_string(i) + " values the cake at zero");
  }
  CakeAllocation alloc;
  alloc.pieces.assign(n, Piece());
  std::vector<int> agents(n);
  std::iota(agents.begin(), agents.end(), 0);
  SymmetricDivider{valuations, alloc}.divide(agents, cake);
  return alloc;
}

CakeAllocation symmetric_divide(const std::vector<PiecewiseConstantValuation>& valuations) {
  return symmetric_divide(valuations, Piece::whole_cake());
}

}  // namespace fairdiv
