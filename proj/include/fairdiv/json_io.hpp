#ifndef FAIRDIV_JSON_IO_HPP
#define FAIRDIV_JSON_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fairdiv/bipartite_graph.hpp"
#include "fairdiv/cake.hpp"
#include "fairdiv/decomposition.hpp"
#include "fairdiv/mms.hpp"

// JSON instance parsing and result serialization. Rationals cross the JSON
// boundary as strings ("p/q", decimals, or integers); no binary floating
// point. Every malformed shape raises input_error with a readable message.
namespace fairdiv::json_io {

using nlohmann::json;

// {"x_count": int, "y_count": int, "edges": [[x,y],...],
//  "weights": [[x,y,"p/q"],...] (optional)}
struct GraphInstance {
  BipartiteGraph graph;
  std::optional<WeightedBipartiteGraph> weighted;
};
GraphInstance parse_graph_instance(const json& j);

// {"agents": [{"breakpoints": ["0","1/2","1"], "densities": ["2","0"]}, ...]}
std::vector<PiecewiseConstantValuation> parse_cake_instance(const json& j);

// {"values": [["3","2","1"], ...],
//  "variant": "2n-2" | {"l-out": l} | "two-thirds" (optional),
//  "per_agent_variants": [variant, ...] (optional),
//  "reference_partitions": [[[obj,...], ...], ...] (optional)}
struct MmsJsonInstance {
  MmsInstance instance;
  std::optional<MmsVariant> variant;
  std::optional<std::vector<MmsVariant>> per_agent_variants;
  std::optional<std::vector<std::vector<std::vector<int>>>> reference_partitions;
};
MmsJsonInstance parse_mms_instance(const json& j);

MmsVariant parse_variant(const json& j);
// Same variants in flag form: "2n-2", "two-thirds", "l-out:3".
MmsVariant parse_variant_flag(const std::string& text);

Matching parse_matching(const json& j);                 // [[x,y], ...]
std::vector<Piece> parse_pieces(const json& j);         // [[["lo","hi"], ...], ...]
std::vector<std::vector<int>> parse_bundles(const json& j);

json matching_to_json(const Matching& matching);
json decomposition_to_json(const EfmDecomposition& decomposition);
json stars_to_json(const StarMatching& stars);
json piece_to_json(const Piece& piece);

// Parses text as JSON, translating parse failures into input_error with the
// parser's position-annotated message.
json parse_text(const std::string& text);

}  // namespace fairdiv::json_io

#endif  // FAIRDIV_JSON_IO_HPP
