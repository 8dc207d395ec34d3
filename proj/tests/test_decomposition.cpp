#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "fairdiv/bipartite_graph.hpp"
#include "fairdiv/decomposition.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/matching_engine.hpp"
#include "fairdiv/oracle.hpp"
#include "test_util.hpp"

using namespace fairdiv;

namespace {

// Checks every structural promise of a decomposition against the graph it
// came from, using only definitions (no solver internals).
void check_structure(const BipartiteGraph& g, const EfmDecomposition& dec) {
  // The side partitions cover each side exactly once, sorted ascending.
  std::vector<int> xs = dec.x_s;
  xs.insert(xs.end(), dec.x_l.begin(), dec.x_l.end());
  std::sort(xs.begin(), xs.end());
  std::vector<int> all_x(g.x_count());
  std::iota(all_x.begin(), all_x.end(), 0);
  REQUIRE(xs == all_x);
  REQUIRE(std::is_sorted(dec.x_s.begin(), dec.x_s.end()));
  REQUIRE(std::is_sorted(dec.x_l.begin(), dec.x_l.end()));

  std::vector<int> ys = dec.y_s;
  ys.insert(ys.end(), dec.y_l.begin(), dec.y_l.end());
  std::sort(ys.begin(), ys.end());
  std::vector<int> all_y(g.y_count());
  std::iota(all_y.begin(), all_y.end(), 0);
  REQUIRE(ys == all_y);
  REQUIRE(std::is_sorted(dec.y_s.begin(), dec.y_s.end()));
  REQUIRE(std::is_sorted(dec.y_l.begin(), dec.y_l.end()));

  // Layers are pairwise disjoint and union to the small parts.
  std::set<int> layer_x, layer_y;
  for (const auto& layer : dec.x_layers) {
    for (int x : layer) REQUIRE(layer_x.insert(x).second);
  }
  for (const auto& layer : dec.y_layers) {
    for (int y : layer) REQUIRE(layer_y.insert(y).second);
  }
  REQUIRE(layer_x == std::set<int>(dec.x_s.begin(), dec.x_s.end()));
  REQUIRE(layer_y == std::set<int>(dec.y_s.begin(), dec.y_s.end()));
  if (dec.x_layers.empty()) {
    REQUIRE(dec.y_layers.empty());
  } else {
    REQUIRE(dec.y_layers.size() == dec.x_layers.size() - 1);
    // The first layer is exactly the set of x-vertices the base matching
    // leaves unmatched.
    std::vector<int> unmatched;
    std::vector<int> match_x = dec.base_matching.x_to_y(g.x_count());
    for (int x = 0; x < g.x_count(); ++x) {
      if (match_x[x] == -1) unmatched.push_back(x);
    }
    REQUIRE(dec.x_layers.front() == unmatched);
  }

  // No edge joins the small X part to the large Y part.
  std::vector<bool> y_large(g.y_count(), false);
  for (int y : dec.y_l) y_large[y] = true;
  for (int x : dec.x_s) {
    for (int y : g.neighbors_of(x)) REQUIRE_FALSE(y_large[y]);
  }

  // The base matching is a maximum matching, and its restriction to the large
  // parts saturates the large X side and is envy-free.
  g.validate_matching(dec.base_matching);
  REQUIRE(dec.base_matching.size() == testutil::brute_max_matching_size(g));
  std::vector<bool> x_large(g.x_count(), false);
  for (int x : dec.x_l) x_large[x] = true;
  std::vector<std::pair<int, int>> restricted;
  for (const auto& [x, y] : dec.base_matching.pairs()) {
    if (x_large[x]) {
      REQUIRE(y_large[y]);
      restricted.emplace_back(x, y);
    }
  }
  REQUIRE(restricted.size() == dec.x_l.size());
  REQUIRE(is_envy_free(g, Matching(restricted)));
}

BipartiteGraph complete(int nx, int ny) {
  std::vector<std::pair<int, int>> edges;
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) edges.emplace_back(x, y);
  }
  return BipartiteGraph(nx, ny, edges);
}

// Largest size among all envy-free matchings, straight from the oracle.
int oracle_max_efm_size(const BipartiteGraph& g) {
  int best = 0;
  for (const Matching& m : oracle::enumerate_efms(g)) best = std::max(best, m.size());
  return best;
}

}  // namespace

TEST_CASE("decompose: X-saturated graph puts every vertex in the large part") {
  const BipartiteGraph g = complete(2, 3);
  const EfmDecomposition dec = decompose(g);
  CHECK(dec.x_s.empty());
  CHECK(dec.y_s.empty());
  CHECK(dec.x_l == std::vector<int>{0, 1});
  CHECK(dec.y_l == std::vector<int>{0, 1, 2});
  CHECK(dec.x_layers.empty());
  CHECK(dec.y_layers.empty());
  check_structure(g, dec);
}

TEST_CASE("decompose: three-vertex path has empty large part") {
  const BipartiteGraph g(2, 1, {{0, 0}, {1, 0}});
  const EfmDecomposition dec = decompose(g);
  CHECK(dec.x_l.empty());
  CHECK(dec.y_l.empty());
  CHECK(dec.x_s == std::vector<int>{0, 1});
  CHECK(dec.y_s == std::vector<int>{0});
  CHECK(dec.x_layers.size() == 2);
  CHECK(dec.y_layers.size() == 1);
  CHECK(dec.y_layers[0] == std::vector<int>{0});
  check_structure(g, dec);
}

TEST_CASE("decompose: shared-y funnel isolates the private pair") {
  // x0, x1, x2 all see y0 but only x2 also sees y1: the contested y0 drags
  // x0, x1 (and y0's partner) into the small part, leaving the private pair
  // (x2, y1) as the whole large part.
  const BipartiteGraph g(3, 2, {{0, 0}, {1, 0}, {2, 0}, {2, 1}});
  const EfmDecomposition dec = decompose(g);
  CHECK(dec.x_s == std::vector<int>{0, 1});
  CHECK(dec.x_l == std::vector<int>{2});
  CHECK(dec.y_s == std::vector<int>{0});
  CHECK(dec.y_l == std::vector<int>{1});
  CHECK(max_cardinality_efm(g) == Matching({{2, 1}}));
  check_structure(g, dec);
}

TEST_CASE("decompose: empty and edgeless graphs") {
  const BipartiteGraph empty(0, 0, {});
  const EfmDecomposition dec = decompose(empty);
  CHECK(dec.x_s.empty());
  CHECK(dec.x_l.empty());
  CHECK(dec.y_s.empty());
  CHECK(dec.y_l.empty());

  // Isolated vertices: the x side lands in the small part (it is the
  // unmatched first layer), the edgeless y side stays in the large part.
  const BipartiteGraph isolated(2, 3, {});
  const EfmDecomposition dec2 = decompose(isolated);
  CHECK(dec2.x_s == std::vector<int>{0, 1});
  CHECK(dec2.x_l.empty());
  CHECK(dec2.y_s.empty());
  CHECK(dec2.y_l == std::vector<int>{0, 1, 2});
  check_structure(isolated, dec2);
}

TEST_CASE("decompose: random graphs satisfy all structural promises") {
  std::mt19937_64 rng(20240801);
  for (int trial = 0; trial < 1000; ++trial) {
    const int nx = 1 + static_cast<int>(testutil::draw_below(rng, 8));
    const int ny = 1 + static_cast<int>(testutil::draw_below(rng, 8));
    const int percent = 10 + static_cast<int>(testutil::draw_below(rng, 81));
    const BipartiteGraph g(nx, ny, testutil::random_edges(rng, nx, ny, percent));
    check_structure(g, decompose(g));
  }
}

TEST_CASE("decompose: partition commutes with vertex relabeling") {
  std::mt19937_64 rng(20240802);
  for (int trial = 0; trial < 200; ++trial) {
    const int nx = 2 + static_cast<int>(testutil::draw_below(rng, 5));
    const int ny = 2 + static_cast<int>(testutil::draw_below(rng, 5));
    const auto edges = testutil::random_edges(rng, nx, ny, 45);
    const BipartiteGraph g(nx, ny, edges);

    std::vector<int> perm_x(nx), perm_y(ny);
    std::iota(perm_x.begin(), perm_x.end(), 0);
    std::iota(perm_y.begin(), perm_y.end(), 0);
    for (int i = nx - 1; i > 0; --i) {
      std::swap(perm_x[i], perm_x[testutil::draw_below(rng, i + 1)]);
    }
    for (int i = ny - 1; i > 0; --i) {
      std::swap(perm_y[i], perm_y[testutil::draw_below(rng, i + 1)]);
    }
    std::vector<std::pair<int, int>> mapped_edges;
    for (const auto& [x, y] : edges) mapped_edges.emplace_back(perm_x[x], perm_y[y]);
    const BipartiteGraph h(nx, ny, mapped_edges);

    auto map_sorted = [](const std::vector<int>& v, const std::vector<int>& perm) {
      std::vector<int> out;
      for (int i : v) out.push_back(perm[i]);
      std::sort(out.begin(), out.end());
      return out;
    };
    const EfmDecomposition dg = decompose(g);
    const EfmDecomposition dh = decompose(h);
    CHECK(map_sorted(dg.x_s, perm_x) == dh.x_s);
    CHECK(map_sorted(dg.x_l, perm_x) == dh.x_l);
    CHECK(map_sorted(dg.y_s, perm_y) == dh.y_s);
    CHECK(map_sorted(dg.y_l, perm_y) == dh.y_l);
  }
}

TEST_CASE("decompose_from_matching: partition is independent of the base matching") {
  std::mt19937_64 rng(20240803);
  int graphs_with_choice = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int nx = 2 + static_cast<int>(testutil::draw_below(rng, 3));
    const int ny = 2 + static_cast<int>(testutil::draw_below(rng, 3));
    const BipartiteGraph g(nx, ny, testutil::random_edges(rng, nx, ny, 50));

    int max_size = 0;
    for (const auto& pairs : testutil::enumerate_all_matchings(g)) {
      max_size = std::max(max_size, static_cast<int>(pairs.size()));
    }
    const EfmDecomposition reference = decompose(g);
    int used = 0;
    for (const auto& pairs : testutil::enumerate_all_matchings(g)) {
      if (static_cast<int>(pairs.size()) != max_size) continue;
      ++used;
      const EfmDecomposition dec = decompose_from_matching(g, Matching(pairs));
      CHECK(dec.x_s == reference.x_s);
      CHECK(dec.x_l == reference.x_l);
      CHECK(dec.y_s == reference.y_s);
      CHECK(dec.y_l == reference.y_l);
      check_structure(g, dec);
    }
    if (used > 1) ++graphs_with_choice;
  }
  // The sweep must actually exercise graphs with several maximum matchings.
  CHECK(graphs_with_choice > 30);
}

TEST_CASE("decompose_from_matching: rejects non-maximum or invalid bases") {
  const BipartiteGraph g = complete(2, 2);
  CHECK_THROWS_AS(decompose_from_matching(g, Matching()), input_error);
  CHECK_THROWS_AS(decompose_from_matching(g, Matching({{0, 0}})), input_error);
  const BipartiteGraph path(2, 1, {{0, 0}, {1, 0}});
  CHECK_THROWS_AS(decompose_from_matching(path, Matching({{0, 0}, {1, 1}})), input_error);
  CHECK(decompose_from_matching(path, Matching({{1, 0}})).x_l.empty());
}

TEST_CASE("max_cardinality_efm: fixed examples") {
  CHECK(max_cardinality_efm(complete(2, 2)).size() == 2);
  CHECK(max_cardinality_efm(BipartiteGraph(2, 1, {{0, 0}, {1, 0}})).empty());

  const BipartiteGraph ladder(3, 3, {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}});
  const Matching m = max_cardinality_efm(ladder);
  CHECK(m.size() == oracle_max_efm_size(ladder));
  CHECK(m.size() == 3);
  CHECK(is_envy_free(ladder, m));
}

TEST_CASE("max_cardinality_efm: agrees with enumeration on every 3x3 graph") {
  for (std::uint64_t mask = 0; mask < (1u << 9); ++mask) {
    const BipartiteGraph g(3, 3, testutil::edges_from_mask(3, 3, mask));
    const Matching m = max_cardinality_efm(g);
    CHECK(is_envy_free(g, m));
    CHECK(m.size() == oracle_max_efm_size(g));
  }
}

TEST_CASE("max_cardinality_efm: every enumerated envy-free matching stays in the large part") {
  std::mt19937_64 rng(20240804);
  for (int trial = 0; trial < 300; ++trial) {
    const int nx = 1 + static_cast<int>(testutil::draw_below(rng, 5));
    const int ny = 1 + static_cast<int>(testutil::draw_below(rng, 5));
    const BipartiteGraph g(nx, ny, testutil::random_edges(rng, nx, ny, 50));
    const EfmDecomposition dec = decompose(g);
    std::vector<bool> x_large(nx, false), y_large(ny, false);
    for (int x : dec.x_l) x_large[x] = true;
    for (int y : dec.y_l) y_large[y] = true;
    for (const Matching& m : oracle::enumerate_efms(g)) {
      for (const auto& [x, y] : m.pairs()) {
        CHECK(x_large[x]);
        CHECK(y_large[y]);
      }
    }
  }
}

TEST_CASE("max_cardinality_efm: every envy-free matching extends to an X-saturating one") {
  // On graphs whose X side can be fully matched, any envy-free matching must
  // be completable to an X-saturating matching: removing its vertices leaves
  // a graph that still matches all remaining x-vertices.
  std::mt19937_64 rng(20240805);
  int saturated_graphs = 0;
  for (int trial = 0; trial < 400 && saturated_graphs < 150; ++trial) {
    const int nx = 1 + static_cast<int>(testutil::draw_below(rng, 4));
    const int ny = nx + static_cast<int>(testutil::draw_below(rng, 3));
    const BipartiteGraph g(nx, ny, testutil::random_edges(rng, nx, ny, 60));
    if (testutil::brute_max_matching_size(g) != nx) continue;
    ++saturated_graphs;
    for (const Matching& m : oracle::enumerate_efms(g)) {
      std::vector<bool> x_used(nx, false), y_used(ny, false);
      for (const auto& [x, y] : m.pairs()) x_used[x] = y_used[y] = true;
      // Remaining graph, with both sides renumbered compactly.
      std::vector<int> x_map(nx, -1), y_map(ny, -1);
      int rx = 0, ry = 0;
      for (int x = 0; x < nx; ++x) {
        if (!x_used[x]) x_map[x] = rx++;
      }
      for (int y = 0; y < ny; ++y) {
        if (!y_used[y]) y_map[y] = ry++;
      }
      std::vector<std::pair<int, int>> rest;
      for (const auto& [x, y] : g.edges()) {
        if (x_map[x] != -1 && y_map[y] != -1) rest.emplace_back(x_map[x], y_map[y]);
      }
      CHECK(testutil::brute_max_matching_size(BipartiteGraph(rx, ry, rest)) == rx);
    }
  }
  CHECK(saturated_graphs == 150);
}

TEST_CASE("min/max_weight_efm: two-by-two example") {
  const BipartiteGraph g = complete(2, 2);
  const WeightedBipartiteGraph wg(g, {{0, 0, Rational(1)},
                                      {0, 1, Rational(2)},
                                      {1, 0, Rational(2)},
                                      {1, 1, Rational(1)}});
  const Matching lo = min_weight_efm(wg);
  CHECK(lo.size() == 2);
  CHECK(wg.total_weight(lo) == Rational(2));
  const Matching hi = max_weight_efm(wg);
  CHECK(hi.size() == 2);
  CHECK(wg.total_weight(hi) == Rational(4));
}

TEST_CASE("min/max_weight_efm: empty large part yields the empty matching") {
  const BipartiteGraph path(2, 1, {{0, 0}, {1, 0}});
  const WeightedBipartiteGraph wg(path, {{0, 0, Rational(3)}, {1, 0, Rational(5)}});
  CHECK(min_weight_efm(wg).empty());
  CHECK(max_weight_efm(wg).empty());
  CHECK(wg.total_weight(min_weight_efm(wg)) == Rational(0));
}

TEST_CASE("min/max_weight_efm: random graphs match brute-force extremes") {
  std::mt19937_64 rng(20240806);
  for (int trial = 0; trial < 200; ++trial) {
    const int nx = 1 + static_cast<int>(testutil::draw_below(rng, 5));
    const int ny = 1 + static_cast<int>(testutil::draw_below(rng, 5));
    const BipartiteGraph g(nx, ny, testutil::random_edges(rng, nx, ny, 55));
    std::vector<std::tuple<int, int, Rational>> weights;
    for (const auto& [x, y] : g.edges()) {
      weights.emplace_back(x, y, testutil::random_rational(rng, 9, 4));
    }
    const WeightedBipartiteGraph wg(g, weights);

    int best_size = 0;
    for (const Matching& m : oracle::enumerate_efms(g)) best_size = std::max(best_size, m.size());
    bool first = true;
    Rational lo, hi;
    for (const Matching& m : oracle::enumerate_efms(g)) {
      if (m.size() != best_size) continue;
      const Rational w = wg.total_weight(m);
      if (first || w < lo) lo = w;
      if (first || hi < w) hi = w;
      first = false;
    }

    const Matching m_lo = min_weight_efm(wg);
    const Matching m_hi = max_weight_efm(wg);
    CHECK(m_lo.size() == best_size);
    CHECK(m_hi.size() == best_size);
    CHECK(is_envy_free(g, m_lo));
    CHECK(is_envy_free(g, m_hi));
    CHECK(wg.total_weight(m_lo) == lo);
    CHECK(wg.total_weight(m_hi) == hi);
  }
}

TEST_CASE("has_nonempty_efm: fixed certificates") {
  const NonemptyEfmAnswer one = has_nonempty_efm(complete(1, 1));
  CHECK(one.nonempty);
  CHECK(reason_label(one.reason) == "corollary-c");

  const NonemptyEfmAnswer path = has_nonempty_efm(BipartiteGraph(2, 1, {{0, 0}, {1, 0}}));
  CHECK_FALSE(path.nonempty);
  CHECK(reason_label(path.reason) == "y-path-saturated");

  // Three x-vertices but only two reachable y-vertices: the counting
  // condition fails, yet no matching saturates N(X) = {y0, y1}.
  const NonemptyEfmAnswer funnel = has_nonempty_efm(BipartiteGraph(3, 2, {{0, 0}, {0, 1}}));
  CHECK(funnel.nonempty);
  CHECK(reason_label(funnel.reason) == "corollary-b");

  // |N(X)| = 2 < 3 = |X| and the maximum matching saturates N(X), so only the
  // exact criterion explains the nonempty answer.
  const NonemptyEfmAnswer exact = has_nonempty_efm(BipartiteGraph(3, 2, {{0, 0}, {1, 0}, {2, 1}}));
  CHECK(exact.nonempty);
  CHECK(reason_label(exact.reason) == "corollary-a");

  const NonemptyEfmAnswer empty = has_nonempty_efm(BipartiteGraph(0, 0, {}));
  CHECK_FALSE(empty.nonempty);
}

TEST_CASE("has_nonempty_efm: boolean always agrees with the maximum solver") {
  std::mt19937_64 rng(20240807);
  for (int trial = 0; trial < 1000; ++trial) {
    const int nx = 1 + static_cast<int>(testutil::draw_below(rng, 7));
    const int ny = 1 + static_cast<int>(testutil::draw_below(rng, 7));
    const int percent = 5 + static_cast<int>(testutil::draw_below(rng, 90));
    const BipartiteGraph g(nx, ny, testutil::random_edges(rng, nx, ny, percent));
    const NonemptyEfmAnswer ans = has_nonempty_efm(g);
    CHECK(ans.nonempty == !max_cardinality_efm(g).empty());
    if (!ans.nonempty) CHECK(reason_label(ans.reason) == "y-path-saturated");
  }
}

TEST_CASE("has_nonempty_efm: counting certificate fires whenever it applies") {
  std::mt19937_64 rng(20240808);
  int seen = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const int nx = 1 + static_cast<int>(testutil::draw_below(rng, 5));
    const int ny = 1 + static_cast<int>(testutil::draw_below(rng, 6));
    const BipartiteGraph g(nx, ny, testutil::random_edges(rng, nx, ny, 60));
    std::vector<int> all_x(nx);
    std::iota(all_x.begin(), all_x.end(), 0);
    if (static_cast<int>(neighbors(g, all_x).size()) < nx) continue;
    ++seen;
    const NonemptyEfmAnswer ans = has_nonempty_efm(g);
    CHECK(ans.nonempty);
    CHECK(reason_label(ans.reason) == "corollary-c");
    CHECK_FALSE(max_cardinality_efm(g).empty());
  }
  CHECK(seen > 200);
}

namespace {

// Definition-level validity of an r-star family in g.
void check_star_family(const BipartiteGraph& g, const StarMatching& sm, int r) {
  REQUIRE(sm.r == r);
  std::vector<bool> is_center(g.x_count(), false);
  std::vector<bool> leaf_used(g.y_count(), false);
  int last_center = -1;
  for (const Star& star : sm.stars) {
    REQUIRE(star.center > last_center);
    last_center = star.center;
    is_center[star.center] = true;
    REQUIRE(static_cast<int>(star.leaves.size()) == r);
    REQUIRE(std::is_sorted(star.leaves.begin(), star.leaves.end()));
    for (int y : star.leaves) {
      REQUIRE(g.has_edge(star.center, y));
      REQUIRE_FALSE(leaf_used[y]);
      leaf_used[y] = true;
    }
  }
  // Envy-freeness: no centerless x-vertex may neighbor a used leaf.
  for (int x = 0; x < g.x_count(); ++x) {
    if (is_center[x]) continue;
    for (int y : g.neighbors_of(x)) REQUIRE_FALSE(leaf_used[y]);
  }
}

}  // namespace

TEST_CASE("max_r_star_efm: fixed examples and errors") {
  const BipartiteGraph k12 = complete(1, 2);
  const StarMatching sm = max_r_star_efm(k12, 2);
  REQUIRE(sm.stars.size() == 1);
  CHECK(sm.stars[0].center == 0);
  CHECK(sm.stars[0].leaves == std::vector<int>{0, 1});
  check_star_family(k12, sm, 2);

  // Not enough distinct leaves for two stars of size two.
  const BipartiteGraph tight(2, 3, {{0, 0}, {0, 1}, {1, 1}, {1, 2}});
  CHECK(max_r_star_efm(tight, 2).stars.empty());

  CHECK_THROWS_AS(max_r_star_efm(k12, 0), input_error);
  CHECK_THROWS_AS(max_r_star_efm(k12, -3), input_error);
}

TEST_CASE("max_r_star_efm: r=1 coincides with the maximum envy-free matching") {
  std::mt19937_64 rng(20240809);
  for (int trial = 0; trial < 300; ++trial) {
    const int nx = 1 + static_cast<int>(testutil::draw_below(rng, 6));
    const int ny = 1 + static_cast<int>(testutil::draw_below(rng, 6));
    const BipartiteGraph g(nx, ny, testutil::random_edges(rng, nx, ny, 45));
    const StarMatching sm = max_r_star_efm(g, 1);
    check_star_family(g, sm, 1);
    std::vector<std::pair<int, int>> pairs;
    for (const Star& star : sm.stars) pairs.emplace_back(star.center, star.leaves[0]);
    CHECK(Matching(pairs) == max_cardinality_efm(g));
  }
}

TEST_CASE("max_r_star_efm: star count matches exhaustive search") {
  std::mt19937_64 rng(20240810);
  for (int trial = 0; trial < 150; ++trial) {
    const int nx = 1 + static_cast<int>(testutil::draw_below(rng, 4));
    const int ny = 2 + static_cast<int>(testutil::draw_below(rng, 5));
    const int r = 2 + static_cast<int>(testutil::draw_below(rng, 2));
    const BipartiteGraph g(nx, ny, testutil::random_edges(rng, nx, ny, 55));
    const StarMatching sm = max_r_star_efm(g, r);
    check_star_family(g, sm, r);
    CHECK(static_cast<int>(sm.stars.size()) == oracle::max_envy_free_r_star_size(g, r));
  }
}
