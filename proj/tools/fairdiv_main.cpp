#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fairdiv/bipartite_graph.hpp"
#include "fairdiv/cake.hpp"
#include "fairdiv/decomposition.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/json_io.hpp"
#include "fairdiv/mms.hpp"
#include "fairdiv/oracle.hpp"
#include "fairdiv/rational.hpp"

namespace {

using fairdiv::BipartiteGraph;
using fairdiv::CakeAllocation;
using fairdiv::Matching;
using fairdiv::MmsAllocateResult;
using fairdiv::MmsInstance;
using fairdiv::MmsVariant;
using fairdiv::Piece;
using fairdiv::PiecewiseConstantValuation;
using fairdiv::Rational;
using fairdiv::StarMatching;
using fairdiv::WeightedBipartiteGraph;
using nlohmann::json;

std::string read_input(const std::string& path) {
  std::ostringstream buffer;
  if (path.empty() || path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream file(path, std::ios::binary);
    fairdiv::require_input(file.good(), "cannot open input file \"" + path + "\"");
    buffer << file.rdbuf();
  }
  return buffer.str();
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  std::ostringstream out;
  out << "fnv1a:" << std::hex << std::setw(16) << std::setfill('0') << hash;
  return out.str();
}

int env_bound(const char* name, int fallback) {
  const char* value = std::getenv(name);
  if (value == nullptr) return fallback;
  try {
    std::size_t used = 0;
    const int parsed = std::stoi(value, &used);
    fairdiv::require_input(used == std::string(value).size() && parsed >= 0,
                           std::string(name) + " must be a non-negative integer");
    return parsed;
  } catch (const fairdiv::input_error&) {
    throw;
  } catch (const std::exception&) {
    throw fairdiv::input_error(std::string(name) + " must be a non-negative integer");
  }
}

int oracle_vertex_bound() {
  return env_bound("FAIRDIV_ORACLE_MAX_VERTICES", fairdiv::oracle::kDefaultMaxVertices);
}

int oracle_object_bound() {
  return env_bound("FAIRDIV_ORACLE_MAX_OBJECTS", fairdiv::oracle::kDefaultMaxObjects);
}

// Result JSON goes to stdout, byte-identical across reruns; the run report
// (command echo, input digest, timing) goes to stderr.
class Reporter {
 public:
  Reporter(std::string command_echo)
      : command_(std::move(command_echo)), start_(std::chrono::steady_clock::now()) {}

  void set_digest(const std::string& input_text) { digest_ = fnv1a_hex(input_text); }

  void emit(const json& result) const {
    std::cout << result.dump() << "\n";
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    const double wall_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed).count();
    std::cerr << "command: " << command_ << "\n";
    std::cerr << "instance-digest: " << digest_ << "\n";
    std::cerr << "wall-ms: " << std::fixed << std::setprecision(3) << wall_ms << "\n";
  }

 private:
  std::string command_;
  std::string digest_ = "fnv1a:-";
  std::chrono::steady_clock::time_point start_;
};

void verification_failure(const std::string& what) {
  throw fairdiv::internal_error("verification failed: " + what);
}

// --verify support for the efm subcommands: compare the solver's answer with
// the brute-force enumeration (subject to the oracle's vertex bound).
std::vector<Matching> oracle_matchings(const BipartiteGraph& graph) {
  return fairdiv::oracle::enumerate_efms(graph, oracle_vertex_bound());
}

int max_size(const std::vector<Matching>& matchings) {
  int best = 0;
  for (const Matching& m : matchings) best = std::max(best, m.size());
  return best;
}

void verify_efm_max(const BipartiteGraph& graph, const Matching& result) {
  fairdiv::require_input(is_envy_free(graph, result), "result is not envy-free");
  const auto all = oracle_matchings(graph);
  if (result.size() != max_size(all)) {
    verification_failure("matching is not of maximum cardinality");
  }
}

void verify_efm_weight(const WeightedBipartiteGraph& weighted, const Matching& result,
                       bool minimize) {
  const BipartiteGraph& graph = weighted.graph();
  fairdiv::require_input(is_envy_free(graph, result), "result is not envy-free");
  const auto all = oracle_matchings(graph);
  const std::size_t target = max_size(all);
  if (result.size() != target) verification_failure("matching is not of maximum cardinality");
  const Rational weight = weighted.total_weight(result);
  for (const Matching& m : all) {
    if (m.size() != target) continue;
    const Rational other = weighted.total_weight(m);
    if ((minimize && other < weight) || (!minimize && weight < other)) {
      verification_failure("a maximum-cardinality envy-free matching with " +
                           std::string(minimize ? "smaller" : "larger") + " weight exists");
    }
  }
}

void verify_decomposition(const BipartiteGraph& graph,
                          const fairdiv::EfmDecomposition& decomposition) {
  std::vector<bool> in_x_s(graph.x_count(), false);
  std::vector<bool> in_y_l(graph.y_count(), true);
  for (int x : decomposition.x_s) in_x_s[x] = true;
  for (int y : decomposition.y_s) in_y_l[y] = false;
  for (const auto& [x, y] : graph.edges()) {
    if (in_x_s[x] && in_y_l[y]) {
      verification_failure("an edge joins the unmatched-reachable left side to the "
                           "envy-free-usable right side");
    }
  }
  std::vector<bool> in_x_l(graph.x_count(), true);
  for (int x : decomposition.x_s) in_x_l[x] = false;
  for (const Matching& m : oracle_matchings(graph)) {
    for (const auto& [x, y] : m.pairs()) {
      if (!in_x_l[x] || !in_y_l[y]) {
        verification_failure("an enumerated envy-free matching leaves the claimed region");
      }
    }
  }
}

void verify_exists(const BipartiteGraph& graph, bool claimed_nonempty) {
  bool actual = false;
  for (const Matching& m : oracle_matchings(graph)) actual = actual || !m.empty();
  if (actual != claimed_nonempty) verification_failure("nonemptiness answer is wrong");
}

void verify_stars(const BipartiteGraph& graph, const StarMatching& stars) {
  std::vector<bool> center(graph.x_count(), false);
  std::vector<bool> leaf(graph.y_count(), false);
  for (const auto& star : stars.stars) {
    fairdiv::require_internal(star.center >= 0 && star.center < graph.x_count() &&
                                  !center[star.center],
                              "verification failed: invalid or repeated star center");
    center[star.center] = true;
    fairdiv::require_internal(static_cast<int>(star.leaves.size()) == stars.r,
                              "verification failed: a star has the wrong number of leaves");
    for (int y : star.leaves) {
      fairdiv::require_internal(y >= 0 && y < graph.y_count() && !leaf[y] &&
                                    graph.has_edge(star.center, y),
                                "verification failed: invalid or repeated star leaf");
      leaf[y] = true;
    }
  }
  for (int x = 0; x < graph.x_count(); ++x) {
    if (center[x]) continue;
    for (int y : graph.neighbors_of(x)) {
      if (leaf[y]) verification_failure("an unmatched vertex neighbors a used leaf");
    }
  }
  const int best =
      fairdiv::oracle::max_envy_free_r_star_size(graph, stars.r, oracle_vertex_bound());
  if (static_cast<int>(stars.stars.size()) != best) {
    verification_failure("star matching is not of maximum size");
  }
}

json cake_result(const std::vector<PiecewiseConstantValuation>& valuations,
                 const CakeAllocation& allocation) {
  json pieces = json::array();
  json values = json::array();
  json totals = json::array();
  for (std::size_t i = 0; i < valuations.size(); ++i) {
    pieces.push_back(fairdiv::json_io::piece_to_json(allocation.pieces[i]));
    values.push_back(eval(valuations[i], allocation.pieces[i]).str());
    totals.push_back(eval(valuations[i], Piece::whole_cake()).str());
  }
  return json{{"pieces", pieces}, {"values", values}, {"totals", totals}};
}

void verify_cake(const std::vector<PiecewiseConstantValuation>& valuations,
                 const CakeAllocation& allocation) {
  const auto report = fairdiv::oracle::verify_proportional_allocation(valuations, allocation);
  if (!report.ok) verification_failure(report.violations.front());
}

std::vector<MmsVariant> resolve_variants(const fairdiv::json_io::MmsJsonInstance& parsed,
                                         const std::string& variant_flag) {
  const int n = parsed.instance.agent_count();
  if (parsed.per_agent_variants) {
    fairdiv::require_input(static_cast<int>(parsed.per_agent_variants->size()) == n,
                           "\"per_agent_variants\" must list one variant per agent");
    fairdiv::require_input(variant_flag.empty(),
                           "--variant cannot be combined with \"per_agent_variants\"");
    return *parsed.per_agent_variants;
  }
  if (!variant_flag.empty()) {
    return std::vector<MmsVariant>(n, fairdiv::json_io::parse_variant_flag(variant_flag));
  }
  fairdiv::require_input(parsed.variant.has_value(),
                         "no variant given: pass --variant or put \"variant\" or "
                         "\"per_agent_variants\" in the instance");
  return std::vector<MmsVariant>(n, *parsed.variant);
}

// Unbiased uniform draw from [0, bound); avoids std::uniform_int_distribution
// so that generated corpora are identical across standard libraries.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t value = rng();
  while (value >= limit) value = rng();
  return value % bound;
}

json gen_graph(std::uint64_t seed, int x_count, int y_count, int edge_percent, bool weighted) {
  fairdiv::require_input(x_count >= 0 && y_count >= 0, "vertex counts must be non-negative");
  fairdiv::require_input(edge_percent >= 0 && edge_percent <= 100,
                         "--edge-prob is a percentage between 0 and 100");
  std::mt19937_64 rng(seed);
  json edges = json::array();
  json weights = json::array();
  for (int x = 0; x < x_count; ++x) {
    for (int y = 0; y < y_count; ++y) {
      if (draw_below(rng, 100) < static_cast<std::uint64_t>(edge_percent)) {
        edges.push_back(json::array({x, y}));
        if (weighted) {
          const long num = static_cast<long>(draw_below(rng, 10));
          const long den = static_cast<long>(draw_below(rng, 4)) + 1;
          weights.push_back(json::array({x, y, Rational(num, den).str()}));
        }
      }
    }
  }
  json out{{"x_count", x_count}, {"y_count", y_count}, {"edges", edges}};
  if (weighted) out["weights"] = weights;
  return out;
}

json gen_cake(std::uint64_t seed, int agents, int segments) {
  fairdiv::require_input(agents >= 1, "need at least one agent");
  fairdiv::require_input(segments >= 1, "need at least one segment");
  std::mt19937_64 rng(seed);
  constexpr long kGrid = 60;
  json jagents = json::array();
  for (int i = 0; i < agents; ++i) {
    std::vector<long> interior;
    while (static_cast<int>(interior.size()) < segments - 1) {
      const long candidate = static_cast<long>(draw_below(rng, kGrid - 1)) + 1;
      if (std::find(interior.begin(), interior.end(), candidate) == interior.end()) {
        interior.push_back(candidate);
      }
    }
    std::sort(interior.begin(), interior.end());
    json breakpoints = json::array();
    breakpoints.push_back(Rational(0).str());
    for (long p : interior) breakpoints.push_back(Rational(p, kGrid).str());
    breakpoints.push_back(Rational(1).str());

    json densities = json::array();
    bool any_positive = false;
    while (!any_positive) {
      densities = json::array();
      for (int s = 0; s < segments; ++s) {
        const long num = static_cast<long>(draw_below(rng, 7));
        const long den = static_cast<long>(draw_below(rng, 3)) + 1;
        if (num > 0) any_positive = true;
        densities.push_back(Rational(num, den).str());
      }
    }
    jagents.push_back(json{{"breakpoints", breakpoints}, {"densities", densities}});
  }
  return json{{"agents", jagents}};
}

json gen_mms(std::uint64_t seed, int agents, int objects) {
  fairdiv::require_input(agents >= 1, "need at least one agent");
  fairdiv::require_input(objects >= 0, "object count must be non-negative");
  std::mt19937_64 rng(seed);
  json values = json::array();
  for (int i = 0; i < agents; ++i) {
    json row = json::array();
    for (int o = 0; o < objects; ++o) {
      const long num = static_cast<long>(draw_below(rng, 10));
      const long den = static_cast<long>(draw_below(rng, 3)) + 1;
      row.push_back(Rational(num, den).str());
    }
    values.push_back(row);
  }
  return json{{"values", values}};
}

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) out += ' ';
    out += argv[i];
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  Reporter reporter(join_args(argc, argv));

  CLI::App app{"Envy-free bipartite matchings and fair-division protocols"};
  app.require_subcommand(1);

  std::string input_path = "-";
  bool verify = false;
  int star_r = 1;
  std::string variant_flag;
  int oracle_l = 1;
  int oracle_d = 1;
  int oracle_agent = 0;
  std::uint64_t seed = 0;
  int gen_x = 4, gen_y = 4, gen_edge_percent = 50;
  bool gen_weighted = false;
  int gen_agents = 3, gen_segments = 3, gen_objects = 8;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("-i,--input", input_path, "Instance file, or - for stdin")
        ->capture_default_str();
  };
  auto add_verify = [&](CLI::App* sub) {
    sub->add_flag("--verify", verify,
                  "Cross-check the result against the brute-force oracle; "
                  "any violation fails the run");
  };

  auto load_graph = [&]() {
    const std::string text = read_input(input_path);
    reporter.set_digest(text);
    return fairdiv::json_io::parse_graph_instance(fairdiv::json_io::parse_text(text));
  };
  auto load_cake = [&]() {
    const std::string text = read_input(input_path);
    reporter.set_digest(text);
    return fairdiv::json_io::parse_cake_instance(fairdiv::json_io::parse_text(text));
  };
  auto load_mms = [&]() {
    const std::string text = read_input(input_path);
    reporter.set_digest(text);
    return fairdiv::json_io::parse_mms_instance(fairdiv::json_io::parse_text(text));
  };

  CLI::App* efm = app.add_subcommand("efm", "Envy-free matching solvers");
  efm->require_subcommand(1);

  CLI::App* efm_decompose =
      efm->add_subcommand("decompose", "Split the graph into the envy-free-usable part and the rest");
  add_input(efm_decompose);
  add_verify(efm_decompose);
  efm_decompose->callback([&] {
    const auto instance = load_graph();
    const auto decomposition = fairdiv::decompose(instance.graph);
    if (verify) verify_decomposition(instance.graph, decomposition);
    reporter.emit(fairdiv::json_io::decomposition_to_json(decomposition));
  });

  CLI::App* efm_max = efm->add_subcommand("max", "Maximum-cardinality envy-free matching");
  add_input(efm_max);
  add_verify(efm_max);
  efm_max->callback([&] {
    const auto instance = load_graph();
    const Matching result = fairdiv::max_cardinality_efm(instance.graph);
    if (verify) verify_efm_max(instance.graph, result);
    reporter.emit(json{{"matching", fairdiv::json_io::matching_to_json(result)},
                       {"size", result.size()}});
  });

  auto weight_command = [&](bool minimize) {
    const auto instance = load_graph();
    fairdiv::require_input(instance.weighted.has_value(),
                           "this command needs a \"weights\" field in the instance");
    const Matching result = minimize ? fairdiv::min_weight_efm(*instance.weighted)
                                     : fairdiv::max_weight_efm(*instance.weighted);
    if (verify) verify_efm_weight(*instance.weighted, result, minimize);
    reporter.emit(json{{"matching", fairdiv::json_io::matching_to_json(result)},
                       {"size", result.size()},
                       {"weight", instance.weighted->total_weight(result).str()}});
  };
  CLI::App* efm_min_weight = efm->add_subcommand(
      "min-weight", "Cheapest matching among maximum-cardinality envy-free matchings");
  add_input(efm_min_weight);
  add_verify(efm_min_weight);
  efm_min_weight->callback([&] { weight_command(true); });
  CLI::App* efm_max_weight = efm->add_subcommand(
      "max-weight", "Heaviest matching among maximum-cardinality envy-free matchings");
  add_input(efm_max_weight);
  add_verify(efm_max_weight);
  efm_max_weight->callback([&] { weight_command(false); });

  CLI::App* efm_star = efm->add_subcommand("star", "Maximum envy-free r-star matching");
  add_input(efm_star);
  add_verify(efm_star);
  efm_star->add_option("--r", star_r, "Leaves per star")->required()->check(CLI::PositiveNumber);
  efm_star->callback([&] {
    const auto instance = load_graph();
    const StarMatching result = fairdiv::max_r_star_efm(instance.graph, star_r);
    if (verify) verify_stars(instance.graph, result);
    reporter.emit(fairdiv::json_io::stars_to_json(result));
  });

  CLI::App* efm_exists =
      efm->add_subcommand("exists", "Does a nonempty envy-free matching exist, and why");
  add_input(efm_exists);
  add_verify(efm_exists);
  efm_exists->callback([&] {
    const auto instance = load_graph();
    const auto answer = fairdiv::has_nonempty_efm(instance.graph);
    if (verify) verify_exists(instance.graph, answer.nonempty);
    reporter.emit(json{{"nonempty", answer.nonempty},
                       {"reason", fairdiv::reason_label(answer.reason)}});
  });

  CLI::App* cake = app.add_subcommand("cake", "Proportional cake-cutting protocols");
  cake->require_subcommand(1);

  CLI::App* cake_lone =
      cake->add_subcommand("lone-divider", "Proportional division via a lone divider");
  add_input(cake_lone);
  add_verify(cake_lone);
  cake_lone->callback([&] {
    const auto valuations = load_cake();
    const CakeAllocation allocation = fairdiv::lone_divider(valuations);
    if (verify) verify_cake(valuations, allocation);
    reporter.emit(cake_result(valuations, allocation));
  });

  CLI::App* cake_symmetric = cake->add_subcommand(
      "symmetric", "Proportional division that ignores the agents' order");
  add_input(cake_symmetric);
  add_verify(cake_symmetric);
  cake_symmetric->callback([&] {
    const auto valuations = load_cake();
    const CakeAllocation allocation = fairdiv::symmetric_divide(valuations);
    if (verify) verify_cake(valuations, allocation);
    reporter.emit(cake_result(valuations, allocation));
  });

  CLI::App* mms = app.add_subcommand("mms", "Maximin-share object allocation");
  mms->require_subcommand(1);

  CLI::App* mms_allocate = mms->add_subcommand("allocate", "Allocate all objects fairly");
  add_input(mms_allocate);
  add_verify(mms_allocate);
  mms_allocate->add_option("--variant", variant_flag,
                           "Share guarantee: 2n-2, two-thirds, or l-out:L");
  mms_allocate->callback([&] {
    const auto parsed = load_mms();
    const std::vector<MmsVariant> variants = resolve_variants(parsed, variant_flag);
    const MmsAllocateResult result =
        fairdiv::allocate(parsed.instance, variants, parsed.reference_partitions);
    json values = json::array();
    json thresholds = json::array();
    for (int i = 0; i < parsed.instance.agent_count(); ++i) {
      Rational value(0);
      for (int o : result.allocation.bundles[i]) value += parsed.instance.values[i][o];
      values.push_back(value.str());
      thresholds.push_back((variants[i].threshold() * result.share_bases[i]).str());
    }
    if (verify) {
      const auto report = fairdiv::oracle::verify_mms_allocation(
          parsed.instance, variants, result.allocation, oracle_object_bound());
      if (!report.ok) verification_failure(report.violations.front());
    }
    reporter.emit(json{{"bundles", result.allocation.bundles},
                       {"values", values},
                       {"thresholds", thresholds}});
  });

  CLI::App* oracle = app.add_subcommand("oracle", "Brute-force references and verifiers");
  oracle->require_subcommand(1);

  CLI::App* oracle_enumerate =
      oracle->add_subcommand("enumerate", "All envy-free matchings of a small graph");
  add_input(oracle_enumerate);
  oracle_enumerate->callback([&] {
    const auto instance = load_graph();
    const auto matchings =
        fairdiv::oracle::enumerate_efms(instance.graph, oracle_vertex_bound());
    json jmatchings = json::array();
    for (const Matching& m : matchings) {
      jmatchings.push_back(fairdiv::json_io::matching_to_json(m));
    }
    reporter.emit(json{{"count", matchings.size()}, {"matchings", jmatchings}});
  });

  CLI::App* oracle_mms =
      oracle->add_subcommand("mms", "Brute-force maximin share of one agent");
  add_input(oracle_mms);
  oracle_mms->add_option("--l", oracle_l, "Piles the agent keeps")->required();
  oracle_mms->add_option("--d", oracle_d, "Piles in the partition")->required();
  oracle_mms->add_option("--agent", oracle_agent, "Agent row to use")->capture_default_str();
  oracle_mms->callback([&] {
    const auto parsed = load_mms();
    fairdiv::require_input(
        oracle_agent >= 0 && oracle_agent < parsed.instance.agent_count(),
        "--agent is out of range");
    const Rational value = fairdiv::oracle::brute_mms(
        parsed.instance.values[oracle_agent], oracle_l, oracle_d, oracle_object_bound());
    reporter.emit(json{{"value", value.str()}, {"l", oracle_l}, {"d", oracle_d}});
  });

  CLI::App* oracle_verify = oracle->add_subcommand("verify", "Check an allocation or matching");
  oracle_verify->require_subcommand(1);

  CLI::App* verify_cake_cmd = oracle_verify->add_subcommand(
      "cake", "Check a cake allocation: instance fields plus \"pieces\"");
  add_input(verify_cake_cmd);
  verify_cake_cmd->callback([&] {
    const std::string text = read_input(input_path);
    reporter.set_digest(text);
    const json j = fairdiv::json_io::parse_text(text);
    const auto valuations = fairdiv::json_io::parse_cake_instance(j);
    fairdiv::require_input(j.contains("pieces"), "missing \"pieces\" field");
    CakeAllocation allocation;
    allocation.pieces = fairdiv::json_io::parse_pieces(j.at("pieces"));
    const auto report = fairdiv::oracle::verify_proportional_allocation(valuations, allocation);
    json margins = json::array();
    for (const Rational& m : report.margins) margins.push_back(m.str());
    reporter.emit(json{{"ok", report.ok}, {"margins", margins},
                       {"violations", report.violations}});
    if (!report.ok) throw fairdiv::internal_error("allocation fails verification");
  });

  CLI::App* verify_mms_cmd = oracle_verify->add_subcommand(
      "mms", "Check an object allocation: instance fields plus \"bundles\"");
  add_input(verify_mms_cmd);
  verify_mms_cmd->add_option("--variant", variant_flag,
                             "Share guarantee: 2n-2, two-thirds, or l-out:L");
  verify_mms_cmd->callback([&] {
    const std::string text = read_input(input_path);
    reporter.set_digest(text);
    const json j = fairdiv::json_io::parse_text(text);
    const auto parsed = fairdiv::json_io::parse_mms_instance(j);
    fairdiv::require_input(j.contains("bundles"), "missing \"bundles\" field");
    fairdiv::ObjectAllocation allocation{fairdiv::json_io::parse_bundles(j.at("bundles"))};
    const auto variants = resolve_variants(parsed, variant_flag);
    const auto report = fairdiv::oracle::verify_mms_allocation(parsed.instance, variants,
                                                               allocation, oracle_object_bound());
    json guarantees = json::array();
    json margins = json::array();
    for (const Rational& g : report.guarantees) guarantees.push_back(g.str());
    for (const Rational& m : report.margins) margins.push_back(m.str());
    reporter.emit(json{{"ok", report.ok}, {"guarantees", guarantees}, {"margins", margins},
                       {"violations", report.violations}});
    if (!report.ok) throw fairdiv::internal_error("allocation fails verification");
  });

  CLI::App* verify_efm_cmd = oracle_verify->add_subcommand(
      "efm", "Check how envy-free a matching is: graph fields plus \"matching\"");
  add_input(verify_efm_cmd);
  verify_efm_cmd->callback([&] {
    const std::string text = read_input(input_path);
    reporter.set_digest(text);
    const json j = fairdiv::json_io::parse_text(text);
    const auto instance = fairdiv::json_io::parse_graph_instance(j);
    fairdiv::require_input(j.contains("matching"), "missing \"matching\" field");
    const Matching matching = fairdiv::json_io::parse_matching(j.at("matching"));
    const auto report = fairdiv::oracle::relaxed_envy_report(instance.graph, matching);
    reporter.emit(json{{"envy_free", report.envy_free},
                       {"min_alpha", report.min_alpha.str()},
                       {"min_c", report.min_c}});
  });

  CLI::App* gen = app.add_subcommand("gen", "Deterministic random instance generators");
  gen->require_subcommand(1);

  CLI::App* gen_graph_cmd = gen->add_subcommand("graph", "Random bipartite graph instance");
  gen_graph_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  gen_graph_cmd->add_option("--x", gen_x, "Left vertices")->capture_default_str();
  gen_graph_cmd->add_option("--y", gen_y, "Right vertices")->capture_default_str();
  gen_graph_cmd->add_option("--edge-prob", gen_edge_percent, "Edge probability in percent")
      ->capture_default_str();
  gen_graph_cmd->add_flag("--weighted", gen_weighted, "Attach rational edge weights");
  gen_graph_cmd->callback([&] {
    const json out = gen_graph(seed, gen_x, gen_y, gen_edge_percent, gen_weighted);
    reporter.set_digest(out.dump());
    reporter.emit(out);
  });

  CLI::App* gen_cake_cmd = gen->add_subcommand("cake", "Random piecewise-constant cake instance");
  gen_cake_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  gen_cake_cmd->add_option("--agents", gen_agents, "Number of agents")->capture_default_str();
  gen_cake_cmd->add_option("--segments", gen_segments, "Density segments per agent")
      ->capture_default_str();
  gen_cake_cmd->callback([&] {
    const json out = gen_cake(seed, gen_agents, gen_segments);
    reporter.set_digest(out.dump());
    reporter.emit(out);
  });

  CLI::App* gen_mms_cmd = gen->add_subcommand("mms", "Random object-values instance");
  gen_mms_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  gen_mms_cmd->add_option("--agents", gen_agents, "Number of agents")->capture_default_str();
  gen_mms_cmd->add_option("--objects", gen_objects, "Number of objects")->capture_default_str();
  gen_mms_cmd->callback([&] {
    const json out = gen_mms(seed, gen_agents, gen_objects);
    reporter.set_digest(out.dump());
    reporter.emit(out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const fairdiv::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const fairdiv::internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
