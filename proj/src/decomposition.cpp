#include "fairdiv/decomposition.hpp"

#include <algorithm>
#include <tuple>

#include "fairdiv/errors.hpp"
#include "fairdiv/matching_engine.hpp"

namespace fairdiv {

namespace {

EfmDecomposition build_from_maximum_matching(const BipartiteGraph& g, Matching base) {
  const int nx = g.x_count();
  const int ny = g.y_count();
  std::vector<int> match_x = base.x_to_y(nx);
  std::vector<int> match_y = base.y_to_x(ny);

  EfmDecomposition dec;
  dec.base_matching = std::move(base);

  std::vector<bool> in_x_s(nx, false), in_y_s(ny, false);
  std::vector<int> frontier;
  for (int x = 0; x < nx; ++x) {
    if (match_x[x] == -1) frontier.push_back(x);
  }
  if (!frontier.empty()) {
    for (int x : frontier) in_x_s[x] = true;
    dec.x_layers.push_back(frontier);
    while (true) {
      std::vector<int> next_y;
      for (int x : frontier) {
        for (int y : g.neighbors_of(x)) {
          if (y != match_x[x] && !in_y_s[y]) {
            in_y_s[y] = true;
            next_y.push_back(y);
          }
        }
      }
      std::sort(next_y.begin(), next_y.end());
      if (next_y.empty()) break;
      std::vector<int> next_x;
      for (int y : next_y) {
        // A maximum matching leaves no augmenting path, so every layer vertex
        // on the Y side must be matched.
        require_internal(match_y[y] != -1,
                         "alternating layer reached an unmatched y-vertex; "
                         "base matching is not maximum");
        next_x.push_back(match_y[y]);
      }
      std::sort(next_x.begin(), next_x.end());
      dec.y_layers.push_back(std::move(next_y));
      for (int x : next_x) in_x_s[x] = true;
      dec.x_layers.push_back(next_x);
      frontier = std::move(next_x);
    }
  }

  for (int x = 0; x < nx; ++x) (in_x_s[x] ? dec.x_s : dec.x_l).push_back(x);
  for (int y = 0; y < ny; ++y) (in_y_s[y] ? dec.y_s : dec.y_l).push_back(y);

  // Cheap structural guarantees: the small X side never touches the large Y
  // side, and the base matching pairs the large sides with each other.
  for (int x : dec.x_s) {
    for (int y : g.neighbors_of(x)) {
      require_internal(in_y_s[y], "edge crosses from the small X part to the large Y part");
    }
  }
  for (int x : dec.x_l) {
    require_internal(match_x[x] != -1, "large-part x-vertex left unmatched by base matching");
    require_internal(!in_y_s[match_x[x]],
                     "base matching pairs a large-part x-vertex into the small Y part");
  }
  return dec;
}

}  // namespace

EfmDecomposition decompose(const BipartiteGraph& g) {
  return build_from_maximum_matching(g, max_cardinality_matching(g));
}

EfmDecomposition decompose_from_matching(const BipartiteGraph& g, const Matching& base) {
  g.validate_matching(base);
  Matching maximum = max_cardinality_matching(g);
  require_input(base.size() == maximum.size(),
                "supplied matching is not maximum (size " + std::to_string(base.size()) +
                    ", maximum is " + std::to_string(maximum.size()) + ")");
  return build_from_maximum_matching(g, base);
}

bool is_y_path_saturated(const BipartiteGraph& g) {
  EfmDecomposition dec = decompose(g);
  return dec.x_l.empty() && dec.y_l.empty();
}

Matching max_cardinality_efm(const BipartiteGraph& g) {
  EfmDecomposition dec = decompose(g);
  std::vector<bool> in_x_l(g.x_count(), false);
  for (int x : dec.x_l) in_x_l[x] = true;
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [x, y] : dec.base_matching.pairs()) {
    if (in_x_l[x]) pairs.emplace_back(x, y);
  }
  Matching result(std::move(pairs));
  require_internal(result.size() == static_cast<int>(dec.x_l.size()),
                   "envy-free matching fails to saturate the large X part");
  require_internal(is_envy_free(g, result), "maximum envy-free matching candidate shows envy");
  return result;
}

namespace {

Matching extreme_weight_efm(const WeightedBipartiteGraph& wg, Objective objective) {
  const BipartiteGraph& g = wg.graph();
  EfmDecomposition dec = decompose(g);
  if (dec.x_l.empty()) return Matching();

  // Solve inside the large part only; every envy-free matching lives there.
  std::vector<int> x_local(g.x_count(), -1), y_local(g.y_count(), -1);
  for (size_t i = 0; i < dec.x_l.size(); ++i) x_local[dec.x_l[i]] = static_cast<int>(i);
  for (size_t j = 0; j < dec.y_l.size(); ++j) y_local[dec.y_l[j]] = static_cast<int>(j);

  std::vector<std::pair<int, int>> sub_edges;
  std::vector<std::tuple<int, int, Rational>> sub_weights;
  for (int x : dec.x_l) {
    for (int y : g.neighbors_of(x)) {
      if (y_local[y] == -1) continue;
      sub_edges.emplace_back(x_local[x], y_local[y]);
      sub_weights.emplace_back(x_local[x], y_local[y], wg.weight(x, y));
    }
  }
  BipartiteGraph sub(static_cast<int>(dec.x_l.size()), static_cast<int>(dec.y_l.size()),
                     sub_edges);
  WeightedBipartiteGraph wsub(sub, sub_weights);
  Matching local = extreme_weight_max_cardinality_matching(wsub, objective);
  require_internal(local.size() == static_cast<int>(dec.x_l.size()),
                   "weighted solver failed to saturate the large X part");

  std::vector<std::pair<int, int>> pairs;
  for (const auto& [lx, ly] : local.pairs()) {
    pairs.emplace_back(dec.x_l[lx], dec.y_l[ly]);
  }
  Matching result(std::move(pairs));
  require_internal(is_envy_free(g, result), "weighted envy-free matching candidate shows envy");
  return result;
}

}  // namespace

Matching min_weight_efm(const WeightedBipartiteGraph& wg) {
  return extreme_weight_efm(wg, Objective::kMinimize);
}

Matching max_weight_efm(const WeightedBipartiteGraph& wg) {
  return extreme_weight_efm(wg, Objective::kMaximize);
}

std::string reason_label(NonemptyReason reason) {
  switch (reason) {
    case NonemptyReason::kNeighborhoodAtLeastX:
      return "corollary-c";
    case NonemptyReason::kNoNeighborhoodSaturatingMatching:
      return "corollary-b";
    case NonemptyReason::kNotYPathSaturated:
      return "corollary-a";
    case NonemptyReason::kYPathSaturated:
      return "y-path-saturated";
  }
  throw internal_error("unknown reason label");
}

NonemptyEfmAnswer has_nonempty_efm(const BipartiteGraph& g) {
  EfmDecomposition dec = decompose(g);
  if (dec.x_l.empty()) return {false, NonemptyReason::kYPathSaturated};

  std::vector<int> all_x(g.x_count());
  for (int x = 0; x < g.x_count(); ++x) all_x[x] = x;
  std::vector<int> nb = neighbors(g, all_x);
  if (g.x_count() >= 1 && static_cast<int>(nb.size()) >= g.x_count()) {
    return {true, NonemptyReason::kNeighborhoodAtLeastX};
  }
  if (dec.base_matching.size() < static_cast<int>(nb.size())) {
    return {true, NonemptyReason::kNoNeighborhoodSaturatingMatching};
  }
  return {true, NonemptyReason::kNotYPathSaturated};
}

StarMatching max_r_star_efm(const BipartiteGraph& g, int r) {
  require_input(r >= 1, "star size must be at least 1");

  // Split every x-vertex into r copies sharing its neighborhood. An envy-free
  // matching in the split graph cannot leave one copy of a center envious of
  // a sibling copy, so per center it matches all r copies or none.
  std::vector<std::pair<int, int>> split_edges;
  for (int x = 0; x < g.x_count(); ++x) {
    for (int copy = 0; copy < r; ++copy) {
      for (int y : g.neighbors_of(x)) split_edges.emplace_back(x * r + copy, y);
    }
  }
  BipartiteGraph split(g.x_count() * r, g.y_count(), split_edges);
  Matching m = max_cardinality_efm(split);

  std::vector<std::vector<int>> leaves(g.x_count());
  for (const auto& [xc, y] : m.pairs()) leaves[xc / r].push_back(y);

  StarMatching out;
  out.r = r;
  for (int x = 0; x < g.x_count(); ++x) {
    if (leaves[x].empty()) continue;
    require_internal(static_cast<int>(leaves[x].size()) == r,
                     "envy-free matching saturated only part of a split copy group");
    std::sort(leaves[x].begin(), leaves[x].end());
    out.stars.push_back(Star{x, std::move(leaves[x])});
  }
  return out;
}

}  // namespace fairdiv
