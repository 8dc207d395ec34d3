#include "fairdiv/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>

#include "fairdiv/errors.hpp"

namespace fairdiv::oracle {

namespace {

bool envy_free_by_definition(const BipartiteGraph& graph, const std::vector<bool>& x_matched,
                             const std::vector<bool>& y_matched) {
  for (int x = 0; x < graph.x_count(); ++x) {
    if (x_matched[x]) continue;
    for (int y : graph.neighbors_of(x)) {
      if (y_matched[y]) return false;
    }
  }
  return true;
}

void check_vertex_bound(const BipartiteGraph& graph, int max_vertices) {
  require_input(max_vertices >= 0, "vertex bound must be non-negative");
  require_input(graph.x_count() + graph.y_count() <= max_vertices,
                "graph has " + std::to_string(graph.x_count() + graph.y_count()) +
                    " vertices, above the brute-force bound of " +
                    std::to_string(max_vertices));
}

}  // namespace

std::vector<Matching> enumerate_efms(const BipartiteGraph& graph, int max_vertices) {
  check_vertex_bound(graph, max_vertices);
  const std::vector<std::pair<int, int>> edges = graph.edges();
  std::vector<bool> x_matched(graph.x_count(), false);
  std::vector<bool> y_matched(graph.y_count(), false);
  std::vector<std::pair<int, int>> chosen;
  std::vector<Matching> found;

  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == edges.size()) {
      if (envy_free_by_definition(graph, x_matched, y_matched)) {
        found.emplace_back(chosen);
      }
      return;
    }
    self(self, i + 1);
    const auto [x, y] = edges[i];
    if (!x_matched[x] && !y_matched[y]) {
      x_matched[x] = y_matched[y] = true;
      chosen.push_back(edges[i]);
      self(self, i + 1);
      chosen.pop_back();
      x_matched[x] = y_matched[y] = false;
    }
  };
  recurse(recurse, 0);

  std::sort(found.begin(), found.end(),
            [](const Matching& a, const Matching& b) { return a.pairs() < b.pairs(); });
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

namespace {

// Plain enumeration of set partitions via restricted-growth assignment:
// object t may only join pile j if some earlier object sits in pile j-1 or
// lower. `Int` is int64_t when the scaled values fit, mpz_class otherwise.
template <typename Int>
class BruteMmsSearch {
 public:
  BruteMmsSearch(std::vector<Int> values, int l, int d)
      : values_(std::move(values)), l_(l), d_(d), piles_(d, Int(0)) {}

  Int run() {
    descend(0, 0);
    return best_;
  }

 private:
  // Least total value of a union of l piles, straight from the definition.
  void combo_min(int next_pile, int taken, const Int& sum, Int& best) {
    if (taken == l_) {
      if (sum < best) best = sum;
      return;
    }
    for (int j = next_pile; j <= d_ - (l_ - taken); ++j) {
      combo_min(j + 1, taken + 1, sum + piles_[j], best);
    }
  }

  void descend(std::size_t t, int used) {
    if (t == values_.size()) {
      Int objective = std::numeric_limits<Int>::max();
      if constexpr (std::is_same_v<Int, mpz_class>) {
        objective = 1;
        for (const Int& p : piles_) objective += p;
      }
      combo_min(0, 0, Int(0), objective);
      if (!have_best_ || best_ < objective) {
        best_ = objective;
        have_best_ = true;
      }
      return;
    }
    const int limit = std::min(used + 1, d_);
    for (int j = 0; j < limit; ++j) {
      piles_[j] += values_[t];
      descend(t + 1, std::max(used, j + 1));
      piles_[j] -= values_[t];
    }
  }

  std::vector<Int> values_;
  int l_;
  int d_;
  std::vector<Int> piles_;
  Int best_{0};
  bool have_best_ = false;
};

}  // namespace

Rational brute_mms(const std::vector<Rational>& values, int l, int d, int max_objects) {
  require_input(l >= 1, "need l >= 1");
  require_input(d >= 1, "need at least one pile");
  require_input(l <= d, "cannot take more piles than the partition has");
  require_input(max_objects >= 0, "object bound must be non-negative");
  const int m = static_cast<int>(values.size());
  require_input(m <= max_objects, "instance has " + std::to_string(m) +
                                      " objects, above the brute-force bound of " +
                                      std::to_string(max_objects));
  for (const Rational& v : values) {
    require_input(!v.is_negative(), "object values must be non-negative");
  }

  mpz_class denominator(1);
  for (const Rational& v : values) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), denominator.get_mpz_t(), v.den().get_mpz_t());
    denominator = denominator / g * v.den();
  }
  std::vector<mpz_class> numerators;
  numerators.reserve(values.size());
  mpz_class total(0);
  for (const Rational& v : values) {
    numerators.push_back(v.num() * (denominator / v.den()));
    total += numerators.back();
  }

  if (total.fits_slong_p() && total.get_si() < std::numeric_limits<int64_t>::max() / 4) {
    std::vector<int64_t> scaled;
    scaled.reserve(numerators.size());
    for (const mpz_class& z : numerators) scaled.push_back(z.get_si());
    BruteMmsSearch<int64_t> search(std::move(scaled), l, d);
    return Rational(mpz_class(static_cast<long>(search.run())), denominator);
  }
  BruteMmsSearch<mpz_class> search(std::move(numerators), l, d);
  return Rational(search.run(), denominator);
}

namespace {

class StarSearch {
 public:
  StarSearch(const BipartiteGraph& graph, int r) : graph_(graph), r_(r) {
    y_used_.assign(graph.y_count(), false);
    center_.assign(graph.x_count(), false);
  }

  int run() {
    place_center(0, 0);
    return best_;
  }

 private:
  bool envy_free_now() const {
    for (int x = 0; x < graph_.x_count(); ++x) {
      if (center_[x]) continue;
      for (int y : graph_.neighbors_of(x)) {
        if (y_used_[y]) return false;
      }
    }
    return true;
  }

  void place_center(int x, int stars) {
    if (x == graph_.x_count()) {
      if (stars > best_ && envy_free_now()) best_ = stars;
      return;
    }
    place_center(x + 1, stars);  // x stays centerless
    center_[x] = true;
    pick_leaves(x, 0, 0, stars);
    center_[x] = false;
  }

  // Choose r distinct unused neighbors of x, in ascending order.
  void pick_leaves(int x, std::size_t from, int taken, int stars) {
    if (taken == r_) {
      place_center(x + 1, stars + 1);
      return;
    }
    const std::vector<int>& nbrs = graph_.neighbors_of(x);
    for (std::size_t i = from; i < nbrs.size(); ++i) {
      const int y = nbrs[i];
      if (y_used_[y]) continue;
      y_used_[y] = true;
      pick_leaves(x, i + 1, taken + 1, stars);
      y_used_[y] = false;
    }
  }

  const BipartiteGraph& graph_;
  int r_;
  std::vector<bool> y_used_;
  std::vector<bool> center_;
  int best_ = 0;
};

}  // namespace

int max_envy_free_r_star_size(const BipartiteGraph& graph, int r, int max_vertices) {
  require_input(r >= 1, "need at least one leaf per star");
  check_vertex_bound(graph, max_vertices);
  return StarSearch(graph, r).run();
}

CakeVerification verify_proportional_allocation(
    const std::vector<PiecewiseConstantValuation>& valuations, const CakeAllocation& allocation) {
  const std::size_t n = valuations.size();
  require_input(n >= 1, "need at least one agent");
  require_input(allocation.pieces.size() == n, "need exactly one piece per agent");

  CakeVerification report;

  // Partition check straight from the interval endpoints: sorted by left
  // endpoint, the intervals must tile [0,1) with no gap or overlap.
  std::vector<Interval> intervals;
  for (const Piece& piece : allocation.pieces) {
    for (const Interval& interval : piece.intervals()) intervals.push_back(interval);
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  Rational cursor(0);
  bool tiles = true;
  for (const Interval& interval : intervals) {
    if (!(interval.lo == cursor)) {
      tiles = false;
      break;
    }
    cursor = interval.hi;
  }
  if (!tiles || !(cursor == Rational(1))) {
    report.ok = false;
    report.violations.push_back("pieces do not exactly partition [0,1)");
  }

  const Rational agents(static_cast<long>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Rational whole = eval(valuations[i], Piece::whole_cake());
    const Rational own = eval(valuations[i], allocation.pieces[i]);
    const Rational margin = agents * own - whole;
    report.margins.push_back(margin);
    if (margin.is_negative()) {
      report.ok = false;
      report.violations.push_back("agent " + std::to_string(i) +
                                  " falls short of a proportional share by " +
                                  (-margin).str() + "/" + std::to_string(n));
    }
  }
  return report;
}

MmsVerification verify_mms_allocation(const MmsInstance& instance,
                                      const std::vector<MmsVariant>& variants,
                                      const ObjectAllocation& allocation, int max_objects) {
  const int n = instance.agent_count();
  const int m = instance.object_count();
  require_input(n >= 2, "need at least two agents");
  require_input(static_cast<int>(variants.size()) == n, "need one variant per agent");
  require_input(static_cast<int>(allocation.bundles.size()) == n,
                "need exactly one bundle per agent");
  for (const auto& row : instance.values) {
    require_input(static_cast<int>(row.size()) == m, "every agent must value every object");
  }

  MmsVerification report;

  std::vector<int> owner(m, -1);
  for (int i = 0; i < n; ++i) {
    for (int o : allocation.bundles[i]) {
      require_input(o >= 0 && o < m, "bundle mentions unknown object " + std::to_string(o));
      if (owner[o] != -1) {
        report.ok = false;
        report.violations.push_back("object " + std::to_string(o) + " is allocated twice");
      }
      owner[o] = i;
    }
  }
  for (int o = 0; o < m; ++o) {
    if (owner[o] == -1) {
      report.ok = false;
      report.violations.push_back("object " + std::to_string(o) + " is never allocated");
    }
  }

  for (int i = 0; i < n; ++i) {
    const int d = variants[i].pile_count(n);
    const Rational share = brute_mms(instance.values[i], 1, d, max_objects);
    const Rational guarantee = variants[i].threshold() * share;
    Rational value(0);
    for (int o : allocation.bundles[i]) value += instance.values[i][o];
    report.guarantees.push_back(guarantee);
    report.margins.push_back(value - guarantee);
    if (value < guarantee) {
      report.ok = false;
      report.violations.push_back("agent " + std::to_string(i) + " receives " + value.str() +
                                  ", below the guarantee " + guarantee.str());
    }
  }
  return report;
}

RelaxedEnvyReport relaxed_envy_report(const BipartiteGraph& graph, const Matching& matching) {
  graph.validate_matching(matching);
  std::vector<bool> x_matched(graph.x_count(), false);
  std::vector<bool> y_matched(graph.y_count(), false);
  for (const auto& [x, y] : matching.pairs()) {
    x_matched[x] = true;
    y_matched[y] = true;
  }

  RelaxedEnvyReport report;
  report.min_alpha = Rational(0);
  for (int x = 0; x < graph.x_count(); ++x) {
    if (x_matched[x]) continue;
    const std::vector<int>& nbrs = graph.neighbors_of(x);
    if (nbrs.empty()) continue;
    int taken = 0;
    for (int y : nbrs) {
      if (y_matched[y]) ++taken;
    }
    if (taken > 0) report.envy_free = false;
    report.min_c = std::max(report.min_c, taken);
    Rational fraction(taken, static_cast<long>(nbrs.size()));
    if (report.min_alpha < fraction) report.min_alpha = fraction;
  }
  return report;
}

}  // namespace fairdiv::oracle
