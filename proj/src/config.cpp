#include "imc/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "imc/coordination.hpp"
#include "imc/errors.hpp"
#include "imc/util.hpp"
#include "json_util.hpp"

namespace imc {

namespace {

using jsonu::as_int;
using jsonu::as_int_array;
using jsonu::as_number;
using jsonu::expect_keys;
using jsonu::njson;
using jsonu::require;

std::vector<int> sorted_unique(std::vector<int> v, const std::string& what) {
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
    throw ConfigError(what + " contains duplicates");
  }
  return v;
}

}  // namespace

ProblemConfig parse_config_text(const std::string& text) {
  njson root;
  try {
    root = njson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
  }
  expect_keys(root, "configuration", {"locations", "edges", "teams", "robots"});

  const njson& jlocs = require(root, "configuration", "locations");
  if (!jlocs.is_array()) throw ConfigError("\"locations\" must be an array");
  std::vector<Location> locations;
  for (const auto& jl : jlocs) {
    expect_keys(jl, "location", {"id", "coords"});
    Location loc;
    loc.id = as_int(require(jl, "location", "id"), "location id");
    const njson& jc = require(jl, "location", "coords");
    if (!jc.is_array() || jc.empty()) {
      throw ConfigError("location coords must be a non-empty array");
    }
    for (const auto& c : jc) loc.coords.push_back(as_number(c, "coordinate"));
    locations.push_back(std::move(loc));
  }

  const njson& jedges = require(root, "configuration", "edges");
  if (!jedges.is_array()) throw ConfigError("\"edges\" must be an array");
  std::vector<EdgeSpec> edges;
  for (const auto& je : jedges) {
    expect_keys(je, "edge", {"i", "j", "weight"});
    EdgeSpec e;
    e.i = as_int(require(je, "edge", "i"), "edge endpoint");
    e.j = as_int(require(je, "edge", "j"), "edge endpoint");
    if (je.contains("weight")) e.weight = as_number(je.at("weight"), "edge weight");
    edges.push_back(e);
  }

  const njson& jteams = require(root, "configuration", "teams");
  if (!jteams.is_array()) throw ConfigError("\"teams\" must be an array");
  TeamStructure teams;
  for (const auto& jt : jteams) {
    expect_keys(jt, "team", {"members", "comm_points"});
    teams.members.push_back(
        sorted_unique(as_int_array(require(jt, "team", "members"), "team members"),
                      "team members"));
    teams.comm_points.push_back(sorted_unique(
        as_int_array(require(jt, "team", "comm_points"), "team comm_points"),
        "team comm_points"));
  }

  const njson& jrobots = require(root, "configuration", "robots");
  if (!jrobots.is_array()) throw ConfigError("\"robots\" must be an array");
  for (const auto& jr : jrobots) {
    expect_keys(jr, "robot", {"start", "speed"});
    teams.robot_start.push_back(as_int(require(jr, "robot", "start"), "robot start"));
    teams.robot_speed.push_back(
        jr.contains("speed") ? as_number(jr.at("speed"), "robot speed") : 1.0);
  }

  ProblemConfig cfg;
  cfg.graph = MobilityGraph(std::move(locations), edges);
  cfg.teams = std::move(teams);
  return cfg;
}

ProblemConfig load_config(const std::string& path) {
  return parse_config_text(read_file(path));
}

std::string config_to_text(const MobilityGraph& graph, const TeamStructure& teams) {
  njson root;
  root["locations"] = njson::array();
  for (const Location& loc : graph.locations()) {
    njson jl;
    jl["id"] = loc.id;
    jl["coords"] = loc.coords;
    root["locations"].push_back(std::move(jl));
  }
  root["edges"] = njson::array();
  for (const Location& loc : graph.locations()) {
    for (const auto& [nb, w] : graph.neighbors(loc.id)) {
      if (nb < loc.id) continue;  // emit each undirected edge once
      njson je;
      je["i"] = loc.id;
      je["j"] = nb;
      je["weight"] = w;
      root["edges"].push_back(std::move(je));
    }
  }
  root["teams"] = njson::array();
  for (int t = 0; t < teams.team_count(); ++t) {
    njson jt;
    jt["members"] = teams.members[static_cast<std::size_t>(t)];
    jt["comm_points"] = teams.comm_points[static_cast<std::size_t>(t)];
    root["teams"].push_back(std::move(jt));
  }
  root["robots"] = njson::array();
  for (int r = 0; r < teams.robot_count(); ++r) {
    njson jr;
    jr["start"] = teams.robot_start[static_cast<std::size_t>(r)];
    jr["speed"] = teams.robot_speed[static_cast<std::size_t>(r)];
    root["robots"].push_back(std::move(jr));
  }
  return root.dump(2) + "\n";
}

void save_config(const std::string& path, const MobilityGraph& graph,
                 const TeamStructure& teams) {
  write_file(path, config_to_text(graph, teams));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw ConfigError("cannot read file: " + path);
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open file for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw ConfigError("cannot write file: " + path);
}

ProblemConfig generate_instance(const GenSpec& spec) {
  const int n = spec.robots;
  const int m = spec.teams;
  const int l = spec.locations;
  if (n < 1 || m < 1 || l < 1) {
    throw DomainError("SizeInfeasible", "robots, teams, and locations must all be >= 1");
  }
  if (l < m) {
    throw DomainError("SizeInfeasible",
                      "every team needs a communication point: locations >= teams");
  }
  if (spec.area <= 0.0) {
    throw DomainError("SizeInfeasible", "the coordinate area must be positive");
  }

  Rng rng(spec.seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    TeamStructure teams;
    teams.members.assign(static_cast<std::size_t>(m), {});

    // Team memberships: a random tree over the teams is covered by robots
    // taking one or two of its edges each; leftover robots join one team.
    std::vector<std::pair<int, int>> tree;
    for (int t = 2; t <= m; ++t) tree.push_back({rng.between(1, t - 1), t});
    std::vector<std::set<int>> robot_teams(static_cast<std::size_t>(n));
    if (m == 1) {
      for (int r = 1; r <= n; ++r) robot_teams[static_cast<std::size_t>(r - 1)].insert(1);
    } else {
      int r = 0;
      for (std::size_t e = 0; e < tree.size(); ++e) {
        robot_teams[static_cast<std::size_t>(r)].insert(tree[e].first);
        robot_teams[static_cast<std::size_t>(r)].insert(tree[e].second);
        // two edges per robot; the last robot absorbs any remainder
        if (e % 2 == 1 && r + 1 < n) ++r;
      }
      for (int rr = 0; rr < n; ++rr) {
        if (robot_teams[static_cast<std::size_t>(rr)].empty()) {
          robot_teams[static_cast<std::size_t>(rr)].insert(rng.between(1, m));
        }
      }
    }
    for (int r = 1; r <= n; ++r) {
      for (int t : robot_teams[static_cast<std::size_t>(r - 1)]) {
        teams.members[static_cast<std::size_t>(t - 1)].push_back(r);
      }
    }

    // Communication sets: contiguous id blocks of size 1..4 per team,
    // leftover ids become plain waypoints.
    std::vector<int> comm_size(static_cast<std::size_t>(m), 1);
    int spare = l - m;
    while (spare > 0) {
      std::vector<int> open;
      for (int t = 1; t <= m; ++t) {
        if (comm_size[static_cast<std::size_t>(t - 1)] < 4) open.push_back(t);
      }
      if (open.empty()) break;
      const int t = open[static_cast<std::size_t>(rng.below(static_cast<int>(open.size())))];
      ++comm_size[static_cast<std::size_t>(t - 1)];
      --spare;
    }
    int next_id = 1;
    teams.comm_points.clear();
    for (int t = 1; t <= m; ++t) {
      std::vector<LocationId> cps;
      for (int k = 0; k < comm_size[static_cast<std::size_t>(t - 1)]; ++k) {
        cps.push_back(next_id++);
      }
      teams.comm_points.push_back(std::move(cps));
    }

    // Coordinates: one cluster center per team, communication points near
    // their cluster, leftover waypoints anywhere.
    std::vector<Location> locations;
    std::vector<std::pair<double, double>> centers;
    for (int t = 1; t <= m; ++t) {
      centers.push_back({rng.range(0.0, spec.area), rng.range(0.0, spec.area)});
    }
    const double cluster_radius = spec.area / 25.0;
    for (int t = 1; t <= m; ++t) {
      for (LocationId id : teams.comm_points[static_cast<std::size_t>(t - 1)]) {
        Location loc;
        loc.id = id;
        loc.coords = {centers[static_cast<std::size_t>(t - 1)].first +
                          rng.range(-cluster_radius, cluster_radius),
                      centers[static_cast<std::size_t>(t - 1)].second +
                          rng.range(-cluster_radius, cluster_radius)};
        locations.push_back(std::move(loc));
      }
    }
    for (int id = next_id; id <= l; ++id) {
      Location loc;
      loc.id = id;
      loc.coords = {rng.range(0.0, spec.area), rng.range(0.0, spec.area)};
      locations.push_back(std::move(loc));
    }
    std::sort(locations.begin(), locations.end(),
              [](const Location& a, const Location& b) { return a.id < b.id; });

    // Mobility graph: random spanning tree plus extra random edges.
    std::set<std::pair<int, int>> edge_set;
    std::vector<int> order;
    for (int id = 1; id <= l; ++id) order.push_back(id);
    rng.shuffle(order);
    for (std::size_t k = 1; k < order.size(); ++k) {
      const int a = order[k];
      const int b = order[static_cast<std::size_t>(rng.below(static_cast<int>(k)))];
      edge_set.insert({std::min(a, b), std::max(a, b)});
    }
    const int extras = l;
    for (int k = 0; k < extras && l >= 2; ++k) {
      const int a = rng.between(1, l);
      int b = rng.between(1, l);
      if (a == b) continue;
      edge_set.insert({std::min(a, b), std::max(a, b)});
    }
    std::vector<EdgeSpec> edges;
    for (const auto& [a, b] : edge_set) edges.push_back({a, b, std::nullopt});

    // Speeds, then starts at the placement the planner assumes.
    teams.robot_start.assign(static_cast<std::size_t>(n), 1);
    for (int r = 1; r <= n; ++r) teams.robot_speed.push_back(rng.range(0.5, 1.5));
    const TeamGraph tg = build_team_graph(teams);
    if (!tg.connected()) continue;  // resample
    const NodeSequence seq = build_sequence(tg, teams.comm_points);
    for (int r = 1; r <= n; ++r) {
      const auto& st = tg.robot_teams[static_cast<std::size_t>(r - 1)];
      int best = st.front();
      for (int t : st) {
        if (seq.first_visit_index[static_cast<std::size_t>(t - 1)] <
            seq.first_visit_index[static_cast<std::size_t>(best - 1)]) {
          best = t;
        }
      }
      teams.robot_start[static_cast<std::size_t>(r - 1)] =
          seq.stops[seq.first_visit_index[static_cast<std::size_t>(best - 1)]].rep_point;
    }

    MobilityGraph graph(locations, edges);
    ValidationResult vr = validate_network(graph, teams);
    if (!vr.ok()) continue;  // resample with the evolved generator state
    ProblemConfig cfg;
    cfg.graph = std::move(graph);
    cfg.teams = std::move(teams);
    return cfg;
  }
  throw DomainError("SizeInfeasible",
                    "could not draw a valid instance for the requested sizes");
}

}  // namespace imc
