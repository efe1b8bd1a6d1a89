#pragma once
// Shared fixtures for the test suite.
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "imc/config.hpp"
#include "imc/network.hpp"

namespace th {

inline std::string source_dir() { return IMC_SOURCE_DIR; }
inline std::string cli_path() { return IMC_CLI_PATH; }
inline std::string golden_path() { return source_dir() + "/configs/golden.json"; }

// Validates or throws; keeps test bodies focused on behaviour.
inline imc::ValidatedNetwork make_net(const imc::MobilityGraph& graph,
                                      const imc::TeamStructure& teams,
                                      imc::ValidationOptions options = {}) {
  imc::ValidationResult res = imc::validate_network(graph, teams, options);
  if (!res.ok()) {
    std::string msg = "fixture failed validation:";
    for (const auto& d : res.diagnostics) msg += " [" + d.code + "] " + d.message;
    throw std::runtime_error(msg);
  }
  return *res.network;
}

inline const imc::ValidatedNetwork& golden_net() {
  static const imc::ValidatedNetwork net = [] {
    imc::ProblemConfig cfg = imc::load_config(golden_path());
    return make_net(cfg.graph, cfg.teams);
  }();
  return net;
}

// Path graph 1-2-...-n, consecutive nodes `spacing` apart on the x axis.
inline imc::MobilityGraph line_graph(int n, double spacing = 1.0) {
  std::vector<imc::Location> locs;
  std::vector<imc::EdgeSpec> edges;
  for (int i = 1; i <= n; ++i) {
    locs.push_back({i, {spacing * (i - 1), 0.0}});
    if (i > 1) edges.push_back({i - 1, i, {}});
  }
  return imc::MobilityGraph(std::move(locs), edges);
}

// Complete graph over n nodes on a unit-spaced line.
inline imc::MobilityGraph complete_line_graph(int n, double spacing = 1.0) {
  std::vector<imc::Location> locs;
  std::vector<imc::EdgeSpec> edges;
  for (int i = 1; i <= n; ++i) {
    locs.push_back({i, {spacing * (i - 1), 0.0}});
    for (int j = 1; j < i; ++j) edges.push_back({j, i, {}});
  }
  return imc::MobilityGraph(std::move(locs), edges);
}

inline bool has_code(const std::vector<imc::Diagnostic>& ds, const std::string& code) {
  for (const auto& d : ds) {
    if (d.code == code) return true;
  }
  return false;
}

}  // namespace th
