#include "bssd/cli.hpp"

#include "bssd/behavior_graph.hpp"
#include "bssd/builder.hpp"
#include "bssd/describe.hpp"
#include "bssd/error.hpp"
#include "bssd/fingerprint.hpp"
#include "bssd/geojson.hpp"
#include "bssd/router.hpp"
#include "bssd/scenery_map.hpp"
#include "bssd/validator.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace bssd::cli {

namespace {

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto log = std::make_shared<spdlog::logger>("bssd", sink);
  log->set_pattern("[%l] %v");
  const char* env = std::getenv("BSSD_LOG");
  const std::string level = env ? env : "quiet";
  if (level == "debug") {
    log->set_level(spdlog::level::debug);
  } else if (level == "info") {
    log->set_level(spdlog::level::info);
  } else {
    log->set_level(spdlog::level::off);
  }
  return log;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Error(ErrorCode::io, "cannot write " + path);
}

struct Loaded {
  SceneryMap map;
  BehaviorGraph graph;
};

Loaded load(const std::string& path, spdlog::logger& log) {
  auto result = load_map(path);
  log.info("loaded {}: {} lanelets, {} behavior spaces, {} diagnostics", path, result.map.lanes().size(),
           result.map.spaces().size(), result.diagnostics.size());
  for (const auto& d : result.diagnostics) log.debug("{} {}", d.rule, d.full_message());
  auto graph = build_graph(result.map);
  log.info("graph: {} vertices, {} edges", graph.vertices().size(), graph.edges().size());
  return {std::move(result.map), std::move(graph)};
}

OsmId resolve_space(const SceneryMap& map, const std::string& ref) {
  auto id = map.resolve_space(ref);
  if (!id) throw Error(ErrorCode::unknown_space, "no valid behavior space '" + ref + "'");
  return *id;
}

/// "<id|name>[:along|:against]"
VertexKey resolve_vertex(const SceneryMap& map, const std::string& ref) {
  VertexKey key;
  std::string space = ref;
  if (const auto colon = ref.rfind(':'); colon != std::string::npos) {
    if (auto d = parse_direction(std::string_view(ref).substr(colon + 1))) {
      key.direction = *d;
      space = ref.substr(0, colon);
    }
  }
  key.space = resolve_space(map, space);
  return key;
}

Direction direction_arg(const std::string& s) {
  auto d = parse_direction(s);
  if (!d) throw Error(ErrorCode::invalid_argument, "direction must be along or against");
  return *d;
}

std::vector<OsmId> parse_ids(const std::string& list) {
  std::vector<OsmId> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_argument, "bad lanelet id '" + item + "'");
    }
  }
  return out;
}

std::string compare_text(const AttributeDiff& diff) {
  std::string out = "direction: " + std::string(to_string(diff.direction)) + "\n";
  for (const auto& c : diff.attributes) {
    out += std::string(to_string(c.attribute)) + ": " + (c.equal ? "equal (" + c.a + ")" : "different (" + c.a + " | " + c.b + ")") + "\n";
  }
  auto names = [](const std::vector<Attribute>& attrs) {
    std::string s;
    for (auto a : attrs) s += (s.empty() ? "" : ", ") + std::string(to_string(a));
    return s.empty() ? std::string("-") : s;
  };
  out += "equal: " + names(diff.equal_attributes()) + "\n";
  out += "different: " + names(diff.different_attributes()) + "\n";
  return out;
}

std::string compare_json(const AttributeDiff& diff, OsmId a, OsmId b) {
  nlohmann::json j;
  j["a"] = a;
  j["b"] = b;
  j["direction"] = std::string(to_string(diff.direction));
  auto attrs = nlohmann::json::array();
  for (const auto& c : diff.attributes) {
    attrs.push_back({{"attribute", std::string(to_string(c.attribute))}, {"equal", c.equal}, {"a", c.a}, {"b", c.b}});
  }
  j["attributes"] = attrs;
  auto list = [](const std::vector<Attribute>& v) {
    auto arr = nlohmann::json::array();
    for (auto x : v) arr.push_back(std::string(to_string(x)));
    return arr;
  };
  j["equal"] = list(diff.equal_attributes());
  j["different"] = list(diff.different_attributes());
  return j.dump(2) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto log = make_logger(err);

  CLI::App app{"Behavior-semantic scenery description toolkit for Lanelet2-style OSM maps", "bssd"};
  app.require_subcommand(1);

  std::string map_path;
  bool json = false;

  auto* validate_cmd = app.add_subcommand("validate", "Run all validation rules");
  validate_cmd->add_option("map", map_path, "OSM map")->required();
  validate_cmd->add_flag("--json", json, "JSON array output");
  bool classes = false;
  validate_cmd->add_flag("--classes", classes, "Also list demand equivalence classes");

  std::string space_ref;
  std::string direction = "along";
  bool graph_dump = false;
  auto* inspect_cmd = app.add_subcommand("inspect", "Print the demand table of a space, or the graph");
  inspect_cmd->add_option("map", map_path, "OSM map")->required();
  auto* space_opt = inspect_cmd->add_option("--space", space_ref, "Space id or name");
  inspect_cmd->add_option("--direction", direction, "along or against");
  auto* graph_opt = inspect_cmd->add_flag("--graph", graph_dump, "Dump the behavior graph edge list");
  space_opt->excludes(graph_opt);

  std::string a_ref;
  std::string b_ref;
  std::string map_b;
  auto* compare_cmd = app.add_subcommand("compare", "Compare the demands of two spaces");
  compare_cmd->add_option("map", map_path, "OSM map")->required();
  compare_cmd->add_option("--a", a_ref, "First space")->required();
  compare_cmd->add_option("--b", b_ref, "Second space")->required();
  compare_cmd->add_option("--map-b", map_b, "Map holding the second space (default: same map)");
  compare_cmd->add_option("--direction", direction, "along or against");
  compare_cmd->add_flag("--json", json, "JSON output");

  std::string from_ref;
  std::string to_ref;
  std::string profile_path;
  std::string geojson_path;
  auto* route_cmd = app.add_subcommand("route", "Capability-filtered route between two spaces");
  route_cmd->add_option("map", map_path, "OSM map")->required();
  route_cmd->add_option("--from", from_ref, "Start space[:direction]")->required();
  route_cmd->add_option("--to", to_ref, "Target space[:direction]")->required();
  route_cmd->add_option("--profile", profile_path, "Capability profile file")->required();
  route_cmd->add_option("--geojson", geojson_path, "Also write the route as a GeoJSON LineString");

  auto* export_cmd = app.add_subcommand("export", "Write lanelets with their demands as GeoJSON");
  export_cmd->add_option("map", map_path, "OSM map")->required();
  export_cmd->add_option("--geojson", geojson_path, "Output file, '-' for stdout")->required();

  std::string lanelets_arg;
  std::string along_path;
  std::string against_path;
  std::string name;
  std::string out_path;
  auto* annotate_cmd = app.add_subcommand("annotate", "Add a behavior space from Behavior-spec files");
  annotate_cmd->add_option("map", map_path, "OSM map")->required();
  annotate_cmd->add_option("--lanelets", lanelets_arg, "Comma-separated lanelet chain")->required();
  annotate_cmd->add_option("--along", along_path, "Behavior-spec for along")->required();
  annotate_cmd->add_option("--against", against_path, "Behavior-spec for against");
  annotate_cmd->add_option("--name", name, "name tag of the new space");
  annotate_cmd->add_option("--out", out_path, "Output map, '-' for stdout")->required();

  OsmId derive_lanelet = 0;
  double zone = 50.0;
  auto* derive_cmd = app.add_subcommand("derive", "Print provisional Behavior-specs for a lanelet");
  derive_cmd->add_option("map", map_path, "OSM map")->required();
  derive_cmd->add_option("--lanelet", derive_lanelet, "Lanelet id")->required();
  derive_cmd->add_option("--zone", zone, "Zone speed in km/h");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitClean : kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) {
      const auto loaded = load(map_path, *log);
      const auto findings = validate(loaded.map, loaded.graph);
      if (json) {
        out << findings_json(findings);
      } else {
        out << findings_text(findings);
        const auto cov = coverage_report(loaded.map);
        out << "summary: " << count_errors(findings) << " errors, " << findings.size() - count_errors(findings)
            << " warnings, " << cov.annotated_lanelets << "/" << cov.regular_lanelets << " regular lanelets annotated\n";
        if (classes) {
          for (const auto& c : equivalence_classes(loaded.map)) {
            out << "class " << c.fingerprint.hex().substr(0, 16) << ":";
            for (OsmId s : c.spaces) out << " " << relation_ref(s).str();
            out << "\n";
          }
        }
      }
      return count_errors(findings) == 0 ? kExitClean : kExitFindings;
    }

    if (inspect_cmd->parsed()) {
      const auto loaded = load(map_path, *log);
      if (graph_dump) {
        out << loaded.graph.dump();
        return kExitClean;
      }
      if (space_ref.empty()) throw Error(ErrorCode::invalid_argument, "inspect needs --space or --graph");
      const OsmId id = resolve_space(loaded.map, space_ref);
      const Direction d = direction_arg(direction);
      const Behavior* b = loaded.map.find_space(id)->behavior(d);
      if (!b) {
        throw Error(ErrorCode::missing_direction,
                    "space " + std::to_string(id) + " has no " + std::string(to_string(d)) + " behavior");
      }
      out << "space: " << id << "\n" << "direction: " << to_string(d) << "\n" << demand_table(*b);
      return kExitClean;
    }

    if (compare_cmd->parsed()) {
      const auto loaded = load(map_path, *log);
      std::optional<Loaded> other;
      if (!map_b.empty()) other = load(map_b, *log);
      const SceneryMap& second = other ? other->map : loaded.map;
      const OsmId a = resolve_space(loaded.map, a_ref);
      const OsmId b = resolve_space(second, b_ref);
      const auto diff = compare_demands(*loaded.map.find_space(a), *second.find_space(b), direction_arg(direction));
      out << (json ? compare_json(diff, a, b) : compare_text(diff));
      return kExitClean;
    }

    if (route_cmd->parsed()) {
      const auto loaded = load(map_path, *log);
      const auto profile = parse_profile(read_file(profile_path));
      const auto from = resolve_vertex(loaded.map, from_ref);
      const auto to = resolve_vertex(loaded.map, to_ref);
      const auto result = plan_route(loaded.graph, from, to, profile);
      log->info("route {} -> {}: {} hops, {} blocked", from.str(), to.str(), result.hops(), result.blocked.size());
      out << route_json(result);
      if (!geojson_path.empty()) write_file(geojson_path, route_geojson(loaded.map, result), out);
      return kExitClean;
    }

    if (export_cmd->parsed()) {
      const auto loaded = load(map_path, *log);
      write_file(geojson_path, export_geojson(loaded.map), out);
      return kExitClean;
    }

    if (annotate_cmd->parsed()) {
      const auto loaded = load(map_path, *log);
      const auto along = parse_behavior_spec(read_file(along_path));
      std::optional<Behavior> against;
      if (!against_path.empty()) against = parse_behavior_spec(read_file(against_path));
      const auto result = annotate(loaded.map, parse_ids(lanelets_arg), along, against, name);
      log->info("created behavior_space {}", result.space);
      write_file(out_path, save_map(result.map), out);
      return kExitClean;
    }

    if (derive_cmd->parsed()) {
      const auto loaded = load(map_path, *log);
      const auto spec = derive_defaults(loaded.map, derive_lanelet, DeriveContext{zone});
      out << "# provisional: review before annotate\n# along\n" << format_behavior_spec(spec.along);
      if (spec.against) out << "# against\n" << format_behavior_spec(*spec.against);
      return kExitClean;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bssd::cli
