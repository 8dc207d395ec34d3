#include "fairdiv/json_io.hpp"

#include <utility>

#include "fairdiv/errors.hpp"

namespace fairdiv::json_io {

namespace {

int get_int(const json& j, const std::string& what) {
  require_input(j.is_number_integer(), what + " must be an integer");
  return j.get<int>();
}

Rational get_rational(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  require_input(j.is_string(), what + " must be a rational string such as \"3/4\"");
  return Rational::parse(j.get<std::string>());
}

const json& get_field(const json& j, const char* key) {
  require_input(j.is_object(), std::string("expected an object with a \"") + key + "\" field");
  auto it = j.find(key);
  require_input(it != j.end(), std::string("missing \"") + key + "\" field");
  return *it;
}

std::vector<std::pair<int, int>> parse_index_pairs(const json& j, const std::string& what) {
  require_input(j.is_array(), what + " must be an array of [x, y] pairs");
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(j.size());
  for (const json& entry : j) {
    require_input(entry.is_array() && entry.size() == 2, what + " entries must be [x, y] pairs");
    pairs.emplace_back(get_int(entry[0], what + " x index"), get_int(entry[1], what + " y index"));
  }
  return pairs;
}

}  // namespace

GraphInstance parse_graph_instance(const json& j) {
  const int x_count = get_int(get_field(j, "x_count"), "\"x_count\"");
  const int y_count = get_int(get_field(j, "y_count"), "\"y_count\"");
  std::vector<std::pair<int, int>> edges = parse_index_pairs(get_field(j, "edges"), "\"edges\"");
  BipartiteGraph graph(x_count, y_count, edges);

  std::optional<WeightedBipartiteGraph> weighted;
  if (j.contains("weights")) {
    const json& jw = j.at("weights");
    require_input(jw.is_array(), "\"weights\" must be an array of [x, y, weight] triples");
    std::vector<std::tuple<int, int, Rational>> weights;
    weights.reserve(jw.size());
    for (const json& entry : jw) {
      require_input(entry.is_array() && entry.size() == 3,
                    "\"weights\" entries must be [x, y, weight] triples");
      weights.emplace_back(get_int(entry[0], "weight x index"),
                           get_int(entry[1], "weight y index"),
                           get_rational(entry[2], "edge weight"));
    }
    weighted.emplace(graph, weights);
  }
  return GraphInstance{std::move(graph), std::move(weighted)};
}

std::vector<PiecewiseConstantValuation> parse_cake_instance(const json& j) {
  const json& agents = get_field(j, "agents");
  require_input(agents.is_array() && !agents.empty(),
                "\"agents\" must be a non-empty array");
  std::vector<PiecewiseConstantValuation> valuations;
  valuations.reserve(agents.size());
  for (const json& agent : agents) {
    const json& jb = get_field(agent, "breakpoints");
    const json& jd = get_field(agent, "densities");
    require_input(jb.is_array(), "\"breakpoints\" must be an array of rationals");
    require_input(jd.is_array(), "\"densities\" must be an array of rationals");
    std::vector<Rational> breakpoints;
    breakpoints.reserve(jb.size());
    for (const json& v : jb) breakpoints.push_back(get_rational(v, "breakpoint"));
    std::vector<Rational> densities;
    densities.reserve(jd.size());
    for (const json& v : jd) densities.push_back(get_rational(v, "density"));
    valuations.emplace_back(std::move(breakpoints), std::move(densities));
  }
  return valuations;
}

MmsVariant parse_variant(const json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "2n-2") return MmsVariant::two_n_minus_two();
    if (name == "two-thirds") return MmsVariant::two_thirds();
    throw input_error("unknown variant \"" + name +
                      "\"; expected \"2n-2\", \"two-thirds\", or {\"l-out\": l}");
  }
  if (j.is_object() && j.size() == 1 && j.contains("l-out")) {
    const int l = get_int(j.at("l-out"), "\"l-out\"");
    require_input(l >= 2, "l-out variant needs l >= 2");
    return MmsVariant::l_out(l);
  }
  throw input_error("variant must be \"2n-2\", \"two-thirds\", or {\"l-out\": l}");
}

MmsVariant parse_variant_flag(const std::string& text) {
  if (text == "2n-2") return MmsVariant::two_n_minus_two();
  if (text == "two-thirds") return MmsVariant::two_thirds();
  if (text.rfind("l-out:", 0) == 0) {
    try {
      std::size_t used = 0;
      const int l = std::stoi(text.substr(6), &used);
      require_input(used == text.size() - 6 && l >= 2, "l-out variant needs an integer l >= 2");
      return MmsVariant::l_out(l);
    } catch (const input_error&) {
      throw;
    } catch (const std::exception&) {
      throw input_error("cannot read the l in \"" + text + "\"");
    }
  }
  throw input_error("unknown variant \"" + text +
                    "\"; expected \"2n-2\", \"two-thirds\", or \"l-out:L\"");
}

MmsJsonInstance parse_mms_instance(const json& j) {
  const json& jv = get_field(j, "values");
  require_input(jv.is_array() && !jv.empty(),
                "\"values\" must be a non-empty array of per-agent value rows");
  MmsJsonInstance out;
  for (const json& row : jv) {
    require_input(row.is_array(), "\"values\" rows must be arrays of rationals");
    std::vector<Rational> values;
    values.reserve(row.size());
    for (const json& v : row) values.push_back(get_rational(v, "object value"));
    out.instance.values.push_back(std::move(values));
  }

  if (j.contains("variant")) out.variant = parse_variant(j.at("variant"));
  if (j.contains("per_agent_variants")) {
    const json& jp = j.at("per_agent_variants");
    require_input(jp.is_array(), "\"per_agent_variants\" must be an array of variants");
    std::vector<MmsVariant> variants;
    variants.reserve(jp.size());
    for (const json& v : jp) variants.push_back(parse_variant(v));
    out.per_agent_variants = std::move(variants);
  }
  if (j.contains("reference_partitions")) {
    const json& jr = j.at("reference_partitions");
    require_input(jr.is_array(), "\"reference_partitions\" must be an array of partitions");
    std::vector<std::vector<std::vector<int>>> partitions;
    for (const json& jpiles : jr) {
      require_input(jpiles.is_array(), "a reference partition must be an array of piles");
      std::vector<std::vector<int>> piles;
      for (const json& jpile : jpiles) {
        require_input(jpile.is_array(), "a pile must be an array of object indices");
        std::vector<int> pile;
        pile.reserve(jpile.size());
        for (const json& o : jpile) pile.push_back(get_int(o, "object index"));
        piles.push_back(std::move(pile));
      }
      partitions.push_back(std::move(piles));
    }
    out.reference_partitions = std::move(partitions);
  }
  return out;
}

Matching parse_matching(const json& j) {
  return Matching(parse_index_pairs(j, "\"matching\""));
}

std::vector<Piece> parse_pieces(const json& j) {
  require_input(j.is_array(), "\"pieces\" must be an array of interval lists");
  std::vector<Piece> pieces;
  pieces.reserve(j.size());
  for (const json& jpiece : j) {
    require_input(jpiece.is_array(), "a piece must be an array of [lo, hi] intervals");
    std::vector<Interval> intervals;
    intervals.reserve(jpiece.size());
    for (const json& ji : jpiece) {
      require_input(ji.is_array() && ji.size() == 2,
                    "a piece interval must be a [lo, hi] pair");
      intervals.push_back(Interval{get_rational(ji[0], "interval endpoint"),
                                   get_rational(ji[1], "interval endpoint")});
    }
    pieces.emplace_back(intervals);
  }
  return pieces;
}

std::vector<std::vector<int>> parse_bundles(const json& j) {
  require_input(j.is_array(), "\"bundles\" must be an array of object-index lists");
  std::vector<std::vector<int>> bundles;
  bundles.reserve(j.size());
  for (const json& jb : j) {
    require_input(jb.is_array(), "a bundle must be an array of object indices");
    std::vector<int> bundle;
    bundle.reserve(jb.size());
    for (const json& o : jb) bundle.push_back(get_int(o, "object index"));
    bundles.push_back(std::move(bundle));
  }
  return bundles;
}

json matching_to_json(const Matching& matching) {
  json out = json::array();
  for (const auto& [x, y] : matching.pairs()) out.push_back(json::array({x, y}));
  return out;
}

json decomposition_to_json(const EfmDecomposition& decomposition) {
  json out;
  out["x_s"] = decomposition.x_s;
  out["x_l"] = decomposition.x_l;
  out["y_s"] = decomposition.y_s;
  out["y_l"] = decomposition.y_l;
  out["x_layers"] = decomposition.x_layers;
  out["y_layers"] = decomposition.y_layers;
  out["base_matching"] = matching_to_json(decomposition.base_matching);
  return out;
}

json stars_to_json(const StarMatching& stars) {
  json jstars = json::array();
  for (const Star& star : stars.stars) {
    jstars.push_back(json{{"center", star.center}, {"leaves", star.leaves}});
  }
  return json{{"r", stars.r}, {"count", stars.stars.size()}, {"stars", jstars}};
}

json piece_to_json(const Piece& piece) {
  json out = json::array();
  for (const Interval& interval : piece.intervals()) {
    out.push_back(json::array({interval.lo.str(), interval.hi.str()}));
  }
  return out;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace fairdiv::json_io
