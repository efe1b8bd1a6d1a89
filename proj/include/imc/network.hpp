#ifndef IMC_NETWORK_HPP
#define IMC_NETWORK_HPP

#include <optional>
#include <string>
#include <vector>

#include "imc/errors.hpp"

namespace imc {

using LocationId = int;  // 1-based, contiguous

struct Location {
  LocationId id = 0;
  std::vector<double> coords;
};

double euclidean(const Location& a, const Location& b);

struct EdgeSpec {
  LocationId i = 0;
  LocationId j = 0;
  std::optional<double> weight;  // default: Euclidean distance
};

// Undirected weighted graph over located nodes. Construction resolves
// default weights; structural validity (connectivity, positivity) is
// checked by validate_network.
class MobilityGraph {
 public:
  MobilityGraph() = default;
  MobilityGraph(std::vector<Location> locations, const std::vector<EdgeSpec>& edges);

  int location_count() const { return static_cast<int>(locations_.size()); }
  const std::vector<Location>& locations() const { return locations_; }
  const Location& location(LocationId id) const;
  bool has_location(LocationId id) const;
  // sorted by neighbor id
  const std::vector<std::pair<LocationId, double>>& neighbors(LocationId id) const;
  int edge_count() const { return edge_count_; }

 private:
  std::vector<Location> locations_;  // index id-1
  std::vector<std::vector<std::pair<LocationId, double>>> adj_;
  int edge_count_ = 0;
};

struct TeamStructure {
  std::vector<std::vector<int>> members;           // per team (1-based robot ids), sorted
  std::vector<std::vector<LocationId>> comm_points;  // per team, sorted
  std::vector<LocationId> robot_start;             // per robot
  std::vector<double> robot_speed;                 // per robot, > 0

  int team_count() const { return static_cast<int>(members.size()); }
  int robot_count() const { return static_cast<int>(robot_start.size()); }
};

// Derived team graph: node per team, edge (m,n) iff the teams share a robot.
struct TeamGraph {
  int team_count = 0;
  std::vector<std::vector<int>> neighbors;        // per team, sorted team ids
  std::vector<int> degree;                        // per team
  std::vector<std::vector<int>> robot_teams;      // S_i: per robot, sorted team ids
  std::vector<std::vector<int>> robot_neighbors;  // N_i: per robot, sorted robot ids

  bool has_edge(int m, int n) const;
  bool connected() const;
};

TeamGraph build_team_graph(const TeamStructure& teams);

struct GeodesicResult {
  double length = 0.0;
  std::vector<LocationId> path;  // inclusive endpoints
};

// All-pairs shortest paths over the mobility graph, precomputed once.
// Ties broken canonically: shorter length, then fewer hops, then smaller
// predecessor id, so returned node paths are stable across platforms.
class GeodesicTable {
 public:
  GeodesicTable() = default;
  explicit GeodesicTable(const MobilityGraph& graph);

  double length(LocationId a, LocationId b) const;
  GeodesicResult query(LocationId a, LocationId b) const;

 private:
  int n_ = 0;
  std::vector<std::vector<double>> dist_;
  std::vector<std::vector<int>> parent_;  // parent_[src][v] on the canonical tree
};

struct Diagnostic {
  enum class Severity { Error, Warning, Info };
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
};

struct ValidationOptions {
  bool relax_single_path_assumption = false;  // widen every robot's state set to all comm points
};

class ValidatedNetwork {
 public:
  ValidatedNetwork(MobilityGraph graph, TeamStructure teams, TeamGraph team_graph,
                   GeodesicTable geodesics, ValidationOptions options)
      : graph_(std::move(graph)),
        teams_(std::move(teams)),
        team_graph_(std::move(team_graph)),
        geodesics_(std::move(geodesics)),
        options_(options) {}

  const MobilityGraph& graph() const { return graph_; }
  const TeamStructure& teams() const { return teams_; }
  const TeamGraph& team_graph() const { return team_graph_; }
  const GeodesicTable& geodesics() const { return geodesics_; }
  const ValidationOptions& options() const { return options_; }

  // union of comm points over the robot's teams (or all comm points when relaxed), sorted
  std::vector<LocationId> robot_state_set(int robot) const;
  std::vector<LocationId> all_comm_points() const;

 private:
  MobilityGraph graph_;
  TeamStructure teams_;
  TeamGraph team_graph_;
  GeodesicTable geodesics_;
  ValidationOptions options_;
};

struct ValidationResult {
  std::optional<ValidatedNetwork> network;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return network.has_value(); }
  std::vector<Diagnostic> errors() const;
  std::vector<Diagnostic> warnings() const;
};

// Full structural validation: location ids contiguous, coordinate dimensions
// consistent, edge endpoints valid, weights positive, mobility graph and team
// graph connected, teams/comm sets nonempty, every robot in some team, starts
// and speeds valid. Also certifies (or warns about) the assumption that
// geodesics between a robot's states avoid other teams' communication points.
ValidationResult validate_network(MobilityGraph graph, TeamStructure teams,
                                  ValidationOptions options = {});

}  // namespace imc

#endif
