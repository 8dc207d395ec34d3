#include "fairdiv/mms.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "fairdiv/bipartite_graph.hpp"
#include "fairdiv/decomposition.hpp"
#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

constexpr int kMaxExactObjects = 12;

// Branch-and-bound over canonical set partitions: object t may join pile j
// only if j <= number of piles used so far (and j < d). Objects are visited
// in descending value order, which tightens the bound early. `Int` is either
// int64_t (when the scaled values fit comfortably) or mpz_class.
template <typename Int>
class PartitionSearch {
 public:
  PartitionSearch(std::vector<Int> vals, int l, int d)
      : vals_(std::move(vals)),
        m_(static_cast<int>(vals_.size())),
        l_(l),
        d_(d),
        piles_(d, Int(0)),
        scratch_(d, Int(0)),
        assign_(vals_.size(), -1) {}

  void run() {
    Int remaining(0);
    for (const Int& v : vals_) remaining += v;
    recurse(0, 0, remaining);
    require_internal(have_best_, "partition search found no partition");
  }

  const Int& best_objective() const { return best_; }
  const std::vector<int>& best_assignment() const { return best_assign_; }

 private:
  Int l_smallest_sum() {
    scratch_ = piles_;
    std::nth_element(scratch_.begin(), scratch_.begin() + (l_ - 1), scratch_.end());
    Int sum(0);
    for (int j = 0; j < l_; ++j) sum += scratch_[j];
    return sum;
  }

  void recurse(int t, int used, const Int& remaining) {
    Int reach = l_smallest_sum();
    if (have_best_) {
      Int bound = reach + remaining;
      if (bound <= best_) return;
    }
    if (t == m_) {
      best_ = reach;
      best_assign_ = assign_;
      have_best_ = true;
      return;
    }
    int limit = std::min(used + 1, d_);
    Int next_remaining = remaining - vals_[t];
    for (int j = 0; j < limit; ++j) {
      piles_[j] += vals_[t];
      assign_[t] = j;
      recurse(t + 1, std::max(used, j + 1), next_remaining);
      piles_[j] -= vals_[t];
    }
    assign_[t] = -1;
  }

  std::vector<Int> vals_;
  int m_;
  int l_;
  int d_;
  std::vector<Int> piles_;
  std::vector<Int> scratch_;
  std::vector<int> assign_;
  std::vector<int> best_assign_;
  Int best_{0};
  bool have_best_ = false;
};

struct ScaledValues {
  mpz_class denominator;
  std::vector<mpz_class> numerators;
};

ScaledValues common_denominator(const std::vector<Rational>& values) {
  ScaledValues out;
  out.denominator = 1;
  for (const Rational& v : values) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), out.denominator.get_mpz_t(), v.den().get_mpz_t());
    out.denominator = out.denominator / g * v.den();
  }
  out.numerators.reserve(values.size());
  for (const Rational& v : values) {
    out.numerators.push_back(v.num() * (out.denominator / v.den()));
  }
  return out;
}

bool fits_int64_budget(const ScaledValues& scaled) {
  // The search only ever adds the numerators up, so the sum is the largest
  // magnitude encountered; leave generous headroom.
  mpz_class sum(0);
  for (const mpz_class& z : scaled.numerators) sum += z;
  return sum.fits_slong_p() && sum.get_si() < std::numeric_limits<int64_t>::max() / 4;
}

template <typename Int>
MmsResult run_partition_search(const std::vector<Int>& scaled_sorted,
                               const std::vector<int>& order, const mpz_class& denominator,
                               int l, int d, int object_count) {
  PartitionSearch<Int> search(scaled_sorted, l, d);
  search.run();
  MmsResult result;
  if constexpr (std::is_same_v<Int, int64_t>) {
    result.value = Rational(mpz_class(static_cast<long>(search.best_objective())), denominator);
  } else {
    result.value = Rational(search.best_objective(), denominator);
  }
  result.witness.assign(d, {});
  const std::vector<int>& assign = search.best_assignment();
  for (int t = 0; t < object_count; ++t) {
    result.witness[assign[t]].push_back(order[t]);
  }
  for (auto& pile : result.witness) std::sort(pile.begin(), pile.end());
  return result;
}

RegroupKind regroup_kind_for(const MmsVariant& variant) {
  switch (variant.kind) {
    case MmsVariant::Kind::kTwoNMinusTwo:
      return RegroupKind::kUnit;
    case MmsVariant::Kind::kLOut:
      return RegroupKind::kLMinusOne;
    case MmsVariant::Kind::kTwoThirds:
      return RegroupKind::kTwoThirds;
  }
  throw internal_error("unknown variant kind");
}

void validate_variant(const MmsVariant& variant) {
  if (variant.kind == MmsVariant::Kind::kLOut) {
    require_input(variant.l >= 2, "l-out variant needs l >= 2");
  }
}

void validate_reference_partition(const std::vector<std::vector<int>>& piles, int pile_count,
                                  int object_count) {
  require_input(static_cast<int>(piles.size()) == pile_count,
                "reference partition must have exactly " + std::to_string(pile_count) +
                    " piles, got " + std::to_string(piles.size()));
  std::vector<bool> seen(object_count, false);
  for (const auto& pile : piles) {
    for (int o : pile) {
      require_input(o >= 0 && o < object_count,
                    "reference partition mentions unknown object " + std::to_string(o));
      require_input(!seen[o],
                    "reference partition repeats object " + std::to_string(o));
      seen[o] = true;
    }
  }
  for (int o = 0; o < object_count; ++o) {
    require_input(seen[o], "reference partition misses object " + std::to_string(o));
  }
}

}  // namespace

int MmsVariant::pile_count(int agent_count) const {
  require_input(agent_count >= 2, "need at least two agents");
  switch (kind) {
    case Kind::kTwoNMinusTwo:
      return 2 * agent_count - 2;
    case Kind::kLOut:
      require_input(l >= 2, "l-out variant needs l >= 2");
      return l * agent_count - 2;
    case Kind::kTwoThirds:
      return agent_count;
  }
  throw internal_error("unknown variant kind");
}

Rational MmsVariant::threshold() const {
  switch (kind) {
    case Kind::kTwoNMinusTwo:
      return Rational(1);
    case Kind::kLOut:
      require_input(l >= 2, "l-out variant needs l >= 2");
      return Rational(l - 1);
    case Kind::kTwoThirds:
      return Rational(2, 3);
  }
  throw internal_error("unknown variant kind");
}

MmsResult mms_value(const std::vector<Rational>& values, int l, int d) {
  require_input(l >= 1, "need l >= 1");
  require_input(d >= 1, "need at least one pile");
  require_input(l <= d, "cannot take more piles than the partition has");
  const int m = static_cast<int>(values.size());
  require_input(m <= kMaxExactObjects,
                "exact maximin-share search is limited to " +
                    std::to_string(kMaxExactObjects) +
                    " objects; supply a reference partition instead");
  for (const Rational& v : values) {
    require_input(!v.is_negative(), "object values must be non-negative");
  }

  // Visit objects in descending value order (stable on index) so the bound
  // bites early; remember the order to emit the witness in original indices.
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[b] < values[a]; });
  std::vector<Rational> sorted_values;
  sorted_values.reserve(m);
  for (int t : order) sorted_values.push_back(values[t]);

  ScaledValues scaled = common_denominator(sorted_values);
  if (fits_int64_budget(scaled)) {
    std::vector<int64_t> vals;
    vals.reserve(m);
    for (const mpz_class& z : scaled.numerators) vals.push_back(z.get_si());
    return run_partition_search<int64_t>(vals, order, scaled.denominator, l, d, m);
  }
  return run_partition_search<mpz_class>(scaled.numerators, order, scaled.denominator, l, d, m);
}

std::vector<std::vector<int>> regroup_piles(const std::vector<Rational>& v,
                                            const std::vector<Rational>& s, RegroupKind kind,
                                            const RegroupParams& params) {
  const int n = static_cast<int>(v.size());
  require_input(s.size() == v.size(), "need one removed value per pile");
  require_input(params.k >= 0, "removal budget multiplier must be non-negative");
  Rational removed_total(0);
  for (int j = 0; j < n; ++j) {
    require_input(Rational(1) <= v[j], "every pile must start with value at least 1");
    require_input(!s[j].is_negative() && s[j] <= v[j],
                  "removed value must lie between 0 and the pile value");
    removed_total += s[j];
  }

  std::vector<std::vector<int>> groups;
  Rational threshold;
  long promised = 0;
  switch (kind) {
    case RegroupKind::kUnit: {
      require_input(removed_total <= Rational(params.k),
                    "total removed value exceeds the budget k");
      threshold = Rational(1);
      // Greedy over t_j = (v_j - s_j) / v_j: every group's t-sum reaches 1,
      // hence its remaining value does too, and each group stays below 2.
      std::vector<int> current;
      Rational current_sum(0);
      for (int j = 0; j < n; ++j) {
        current.push_back(j);
        current_sum += (v[j] - s[j]) / v[j];
        if (Rational(1) <= current_sum) {
          groups.push_back(current);
          current.clear();
          current_sum = Rational(0);
        }
      }
      promised = (static_cast<long>(n) - params.k + 1) / 2;
      break;
    }
    case RegroupKind::kLMinusOne: {
      require_input(params.l >= 2, "pile regrouping to l-1 needs l >= 2");
      const long l = params.l;
      require_input(removed_total <= Rational((l - 1) * static_cast<long>(params.k)),
                    "total removed value exceeds the budget (l-1)k");
      threshold = Rational(l - 1);
      std::vector<int> current;
      Rational current_sum(0);
      for (int j = 0; j < n; ++j) {
        current.push_back(j);
        current_sum += (v[j] - s[j]) / v[j];
        if (Rational(l - 1) <= current_sum) {
          groups.push_back(current);
          current.clear();
          current_sum = Rational(0);
        }
      }
      long slack = static_cast<long>(n) - (l - 1) * static_cast<long>(params.k) + 1;
      promised = slack >= 0 ? slack / l : 0;
      break;
    }
    case RegroupKind::kTwoThirds: {
      require_input(removed_total <= Rational(2 * static_cast<long>(params.k), 3),
                    "total removed value exceeds the budget 2k/3");
      threshold = Rational(2, 3);
      // Piles with at most a third removed still hold 2/3 alone; piles with
      // between a third and two thirds removed hold at least 1/3 each, so
      // consecutive pairs of them reach 2/3. Heavier-hit piles are left out.
      std::vector<int> pair_queue;
      for (int j = 0; j < n; ++j) {
        Rational ratio = s[j] / v[j];
        if (ratio <= Rational(1, 3)) {
          groups.push_back({j});
        } else if (ratio <= Rational(2, 3)) {
          pair_queue.push_back(j);
        }
      }
      for (std::size_t p = 0; p + 1 < pair_queue.size(); p += 2) {
        groups.push_back({pair_queue[p], pair_queue[p + 1]});
      }
      promised = static_cast<long>(n) - params.k;
      break;
    }
  }

  for (const auto& group : groups) {
    Rational value(0);
    for (int j : group) value += v[j] - s[j];
    require_internal(threshold <= value, "regrouped pile set misses its threshold");
  }
  require_internal(static_cast<long>(groups.size()) >= std::max<long>(promised, 0),
                   "regrouping produced fewer groups than guaranteed");
  return groups;
}

std::vector<std::vector<int>> divider_partition(const PileState& state, int parts,
                                                const Rational& threshold) {
  require_input(parts >= 1, "need at least one part");
  const int d = static_cast<int>(state.piles.size());
  const int m = static_cast<int>(state.values.size());
  require_input(static_cast<int>(state.removed.size()) == m,
                "need one removed flag per object");
  require_input(state.agent_count >= parts, "more parts than agents");

  std::vector<Rational> v(d, Rational(0));
  std::vector<Rational> s(d, Rational(0));
  for (int j = 0; j < d; ++j) {
    for (int o : state.piles[j]) {
      require_input(o >= 0 && o < m, "pile mentions unknown object");
      v[j] += state.values[o];
      if (state.removed[o]) s[j] += state.values[o];
    }
  }

  RegroupParams params;
  params.k = state.agent_count - parts;
  params.l = state.variant.l;
  std::vector<std::vector<int>> groups =
      regroup_piles(v, s, regroup_kind_for(state.variant), params);
  require_internal(static_cast<int>(groups.size()) >= parts,
                   "pile regrouping cannot serve every remaining agent");

  std::vector<bool> pile_in_early_group(d, false);
  std::vector<std::vector<int>> bundles(parts);
  for (int b = 0; b + 1 < parts; ++b) {
    for (int j : groups[b]) {
      pile_in_early_group[j] = true;
      for (int o : state.piles[j]) {
        if (!state.removed[o]) bundles[b].push_back(o);
      }
    }
  }
  // Everything else — later groups, ungrouped piles — lands in the last
  // bundle, so the bundles cover every remaining object.
  for (int j = 0; j < d; ++j) {
    if (pile_in_early_group[j]) continue;
    for (int o : state.piles[j]) {
      if (!state.removed[o]) bundles[parts - 1].push_back(o);
    }
  }
  for (auto& bundle : bundles) std::sort(bundle.begin(), bundle.end());

  for (const auto& bundle : bundles) {
    Rational value(0);
    for (int o : bundle) value += state.values[o];
    require_internal(threshold <= value, "divider bundle misses the threshold");
  }
  return bundles;
}

MmsAllocateResult allocate(
    const MmsInstance& instance, const std::vector<MmsVariant>& per_agent_variants,
    const std::optional<std::vector<std::vector<std::vector<int>>>>& reference_partitions) {
  const int n = instance.agent_count();
  require_input(n >= 2, "need at least two agents");
  const int m = instance.object_count();
  for (const auto& row : instance.values) {
    require_input(static_cast<int>(row.size()) == m, "every agent must value every object");
    for (const Rational& value : row) {
      require_input(!value.is_negative(), "object values must be non-negative");
    }
  }
  require_input(static_cast<int>(per_agent_variants.size()) == n,
                "need one variant per agent");
  for (const MmsVariant& variant : per_agent_variants) validate_variant(variant);
  if (reference_partitions) {
    require_input(static_cast<int>(reference_partitions->size()) == n,
                  "need one reference partition per agent");
  }

  MmsAllocateResult result;
  result.allocation.bundles.assign(n, {});
  result.share_bases.assign(n, Rational(0));

  std::vector<PileState> states(n);
  std::vector<int> active;
  for (int i = 0; i < n; ++i) {
    const int d = per_agent_variants[i].pile_count(n);
    std::vector<std::vector<int>> piles;
    if (reference_partitions) {
      piles = (*reference_partitions)[i];
      validate_reference_partition(piles, d, m);
    } else {
      piles = mms_value(instance.values[i], 1, d).witness;
    }
    Rational base;
    bool first = true;
    for (const auto& pile : piles) {
      Rational value(0);
      for (int o : pile) value += instance.values[i][o];
      if (first || value < base) base = value;
      first = false;
    }
    result.share_bases[i] = base;
    if (base.is_zero()) continue;  // an empty bundle already meets a zero share

    PileState state;
    state.agent_count = n;
    state.variant = per_agent_variants[i];
    state.values.reserve(m);
    for (const Rational& value : instance.values[i]) state.values.push_back(value / base);
    state.piles = std::move(piles);
    state.removed.assign(m, false);
    states[i] = std::move(state);
    active.push_back(i);
  }

  if (active.empty()) {
    // Nobody can tell the objects apart from nothing, so any assignment
    // meets every guarantee; hand everything to the first agent.
    result.allocation.bundles[0].resize(m);
    std::iota(result.allocation.bundles[0].begin(), result.allocation.bundles[0].end(), 0);
    return result;
  }

  while (!active.empty()) {
    const int parts = static_cast<int>(active.size());
    const int divider = active.front();
    std::vector<std::vector<int>> bundles =
        divider_partition(states[divider], parts, per_agent_variants[divider].threshold());

    std::vector<std::pair<int, int>> edges;
    for (int pos = 0; pos < parts; ++pos) {
      const int agent = active[pos];
      const Rational threshold = per_agent_variants[agent].threshold();
      for (int b = 0; b < parts; ++b) {
        Rational value(0);
        for (int o : bundles[b]) value += states[agent].values[o];
        if (threshold <= value) edges.emplace_back(pos, b);
      }
    }
    BipartiteGraph graph(parts, parts, edges);
    for (int b = 0; b < parts; ++b) {
      require_internal(graph.has_edge(0, b), "divider must accept every bundle they cut");
    }

    Matching matched = max_cardinality_efm(graph);
    require_internal(!matched.empty(), "a round must serve at least one agent");

    std::vector<bool> still_active(parts, true);
    for (const auto& [pos, b] : matched.pairs()) {
      const int agent = active[pos];
      result.allocation.bundles[agent] = bundles[b];
      still_active[pos] = false;
      for (int o : bundles[b]) {
        for (int other : active) states[other].removed[o] = true;
      }
    }
    std::vector<int> next_active;
    for (int pos = 0; pos < parts; ++pos) {
      if (still_active[pos]) next_active.push_back(active[pos]);
    }
    active = std::move(next_active);
  }

  std::vector<bool> assigned(m, false);
  for (const auto& bundle : result.allocation.bundles) {
    for (int o : bundle) {
      require_internal(o >= 0 && o < m && !assigned[o], "allocation must be a partition");
      assigned[o] = true;
    }
  }
  for (int o = 0; o < m; ++o) {
    require_internal(assigned[o], "allocation must cover every object");
  }
  return result;
}

MmsAllocateResult allocate(const MmsInstance& instance, const MmsVariant& variant) {
  return allocate(instance, std::vector<MmsVariant>(instance.agent_count(), variant),
                  std::nullopt);
}

}  // namespace fairdiv
