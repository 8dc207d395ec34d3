#ifndef FAIRDIV_TESTS_TEST_UTIL_HPP
#define FAIRDIV_TESTS_TEST_UTIL_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "fairdiv/bipartite_graph.hpp"
#include "fairdiv/cake.hpp"
#include "fairdiv/rational.hpp"

// Shared helpers for the test binaries. The brute-force routines here are
// deliberately naive and independent of the solver implementations.
namespace testutil {

// Unbiased draw from [0, bound); identical across standard libraries, unlike
// std::uniform_int_distribution.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t value = rng();
  while (value >= limit) value = rng();
  return value % bound;
}

inline std::vector<std::pair<int, int>> random_edges(std::mt19937_64& rng, int x_count,
                                                     int y_count, int percent) {
  std::vector<std::pair<int, int>> edges;
  for (int x = 0; x < x_count; ++x) {
    for (int y = 0; y < y_count; ++y) {
      if (draw_below(rng, 100) < static_cast<std::uint64_t>(percent)) edges.emplace_back(x, y);
    }
  }
  return edges;
}

// All x*y possible edges of an x-by-y grid, selected by the bits of `mask`
// (bit x*y_count+y), for exhaustive small-graph sweeps.
inline std::vector<std::pair<int, int>> edges_from_mask(int x_count, int y_count,
                                                        std::uint64_t mask) {
  std::vector<std::pair<int, int>> edges;
  for (int x = 0; x < x_count; ++x) {
    for (int y = 0; y < y_count; ++y) {
      if (mask >> (x * y_count + y) & 1u) edges.emplace_back(x, y);
    }
  }
  return edges;
}

inline fairdiv::Rational random_rational(std::mt19937_64& rng, int max_num, int max_den) {
  const long num = static_cast<long>(draw_below(rng, max_num + 1));
  const long den = static_cast<long>(draw_below(rng, max_den)) + 1;
  return fairdiv::Rational(num, den);
}

// Simple augmenting-path maximum matching, independent of the solver.
inline int brute_max_matching_size(const fairdiv::BipartiteGraph& g) {
  std::vector<int> match_y(g.y_count(), -1);
  auto augment = [&](auto&& self, int x, std::vector<bool>& visited) -> bool {
    for (int y : g.neighbors_of(x)) {
      if (visited[y]) continue;
      visited[y] = true;
      if (match_y[y] == -1 || self(self, match_y[y], visited)) {
        match_y[y] = x;
        return true;
      }
    }
    return false;
  };
  int size = 0;
  for (int x = 0; x < g.x_count(); ++x) {
    std::vector<bool> visited(g.y_count(), false);
    if (augment(augment, x, visited)) ++size;
  }
  return size;
}

// Every matching of the graph (all sizes), by recursive edge inclusion.
inline std::vector<std::vector<std::pair<int, int>>> enumerate_all_matchings(
    const fairdiv::BipartiteGraph& g) {
  const auto edges = g.edges();
  std::vector<bool> x_used(g.x_count(), false), y_used(g.y_count(), false);
  std::vector<std::pair<int, int>> chosen;
  std::vector<std::vector<std::pair<int, int>>> out;
  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == edges.size()) {
      out.push_back(chosen);
      return;
    }
    self(self, i + 1);
    const auto [x, y] = edges[i];
    if (!x_used[x] && !y_used[y]) {
      x_used[x] = y_used[y] = true;
      chosen.push_back(edges[i]);
      self(self, i + 1);
      chosen.pop_back();
      x_used[x] = y_used[y] = false;
    }
  };
  recurse(recurse, 0);
  return out;
}

// Random piecewise-constant valuation with breakpoints on a 1/60 grid and at
// least one positive density.
inline fairdiv::PiecewiseConstantValuation random_valuation(std::mt19937_64& rng, int segments) {
  constexpr long kGrid = 60;
  std::vector<long> interior;
  while (static_cast<int>(interior.size()) < segments - 1) {
    const long candidate = static_cast<long>(draw_below(rng, kGrid - 1)) + 1;
    if (std::find(interior.begin(), interior.end(), candidate) == interior.end()) {
      interior.push_back(candidate);
    }
  }
  std::sort(interior.begin(), interior.end());
  std::vector<fairdiv::Rational> breakpoints;
  breakpoints.emplace_back(0);
  for (long p : interior) breakpoints.emplace_back(p, kGrid);
  breakpoints.emplace_back(1);

  std::vector<fairdiv::Rational> densities;
  bool any_positive = false;
  while (!any_positive) {
    densities.clear();
    for (int s = 0; s < segments; ++s) {
      densities.push_back(random_rational(rng, 6, 3));
      if (!densities.back().is_zero()) any_positive = true;
    }
  }
  return fairdiv::PiecewiseConstantValuation(breakpoints, densities);
}

}  // namespace testutil

#endif  // FAIRDIV_TESTS_TEST_UTIL_HPP
