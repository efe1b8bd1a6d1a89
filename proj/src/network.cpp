#include "imc/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <tuple>

namespace imc {

double euclidean(const Location& a, const Location& b) {
  double s = 0.0;
  for (std::size_t d = 0; d < a.coords.size(); ++d) {
    const double diff = a.coords[d] - b.coords[d];
    s += diff * diff;
  }
  return std::sqrt(s);
}

MobilityGraph::MobilityGraph(std::vector<Location> locations, const std::vector<EdgeSpec>& edges)
    : locations_(std::move(locations)) {
  std::sort(locations_.begin(), locations_.end(),
            [](const Location& a, const Location& b) { return a.id < b.id; });
  for (std::size_t k = 1; k < locations_.size(); ++k) {
    if (locations_[k].id == locations_[k - 1].id) {
      throw ConfigError("duplicate location id " + std::to_string(locations_[k].id));
    }
  }
  adj_.assign(locations_.size(), {});
  for (const EdgeSpec& e : edges) {
    if (!has_location(e.i) || !has_location(e.j)) {
      throw ConfigError("edge references unknown location (" + std::to_string(e.i) + "," +
                        std::to_string(e.j) + ")");
    }
    const double w = e.weight ? *e.weight : euclidean(location(e.i), location(e.j));
    adj_[static_cast<std::size_t>(e.i - 1)].push_back({e.j, w});
    adj_[static_cast<std::size_t>(e.j - 1)].push_back({e.i, w});
    ++edge_count_;
  }
  for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

const Location& MobilityGraph::location(LocationId id) const {
  if (!has_location(id)) throw InternalError("location id out of range: " + std::to_string(id));
  return locations_[static_cast<std::size_t>(id - 1)];
}

bool MobilityGraph::has_location(LocationId id) const {
  return id >= 1 && id <= location_count() &&
         locations_[static_cast<std::size_t>(id - 1)].id == id;
}

const std::vector<std::pair<LocationId, double>>& MobilityGraph::neighbors(LocationId id) const {
  if (!has_location(id)) throw InternalError("location id out of range: " + std::to_string(id));
  return adj_[static_cast<std::size_t>(id - 1)];
}

bool TeamGraph::has_edge(int m, int n) const {
  if (m < 1 || m > team_count) return false;
  const auto& nb = neighbors[static_cast<std::size_t>(m - 1)];
  return std::binary_search(nb.begin(), nb.end(), n);
}

bool TeamGraph::connected() const {
  if (team_count == 0) return false;
  std::vector<char> seen(static_cast<std::size_t>(team_count) + 1, 0);
  std::vector<int> stack{1};
  seen[1] = 1;
  int count = 0;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    ++count;
    for (int v : neighbors[static_cast<std::size_t>(u - 1)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        stack.push_back(v);
      }
    }
  }
  return count == team_count;
}

TeamGraph build_team_graph(const TeamStructure& teams) {
  TeamGraph tg;
  tg.team_count = teams.team_count();
  tg.neighbors.assign(static_cast<std::size_t>(tg.team_count), {});
  tg.degree.assign(static_cast<std::size_t>(tg.team_count), 0);

  std::vector<std::set<int>> member_sets;
  member_sets.reserve(static_cast<std::size_t>(tg.team_count));
  for (const auto& m : teams.members) member_sets.emplace_back(m.begin(), m.end());

  for (int m = 1; m <= tg.team_count; ++m) {
    for (int n = m + 1; n <= tg.team_count; ++n) {
      const auto& a = member_sets[static_cast<std::size_t>(m - 1)];
      const auto& b = member_sets[static_cast<std::size_t>(n - 1)];
      const bool overlap = std::any_of(a.begin(), a.end(), [&](int r) { return b.count(r) > 0; });
      if (overlap) {
        tg.neighbors[static_cast<std::size_t>(m - 1)].push_back(n);
        tg.neighbors[static_cast<std::size_t>(n - 1)].push_back(m);
      }
    }
  }
  for (int m = 1; m <= tg.team_count; ++m) {
    auto& nb = tg.neighbors[static_cast<std::size_t>(m - 1)];
    std::sort(nb.begin(), nb.end());
    tg.degree[static_cast<std::size_t>(m - 1)] = static_cast<int>(nb.size());
  }

  const int robots = teams.robot_count();
  tg.robot_teams.assign(static_cast<std::size_t>(robots), {});
  tg.robot_neighbors.assign(static_cast<std::size_t>(robots), {});
  for (int m = 1; m <= tg.team_count; ++m) {
    for (int r : teams.members[static_cast<std::size_t>(m - 1)]) {
      if (r >= 1 && r <= robots) tg.robot_teams[static_cast<std::size_t>(r - 1)].push_back(m);
    }
  }
  for (int r = 1; r <= robots; ++r) {
    std::set<int> nbrs;
    for (int m : tg.robot_teams[static_cast<std::size_t>(r - 1)]) {
      for (int other : teams.members[static_cast<std::size_t>(m - 1)]) {
        if (other != r) nbrs.insert(other);
      }
    }
    tg.robot_neighbors[static_cast<std::size_t>(r - 1)].assign(nbrs.begin(), nbrs.end());
  }
  return tg;
}

GeodesicTable::GeodesicTable(const MobilityGraph& graph) : n_(graph.location_count()) {
  const double inf = std::numeric_limits<double>::infinity();
  dist_.assign(static_cast<std::size_t>(n_) + 1, {});
  parent_.assign(static_cast<std::size_t>(n_) + 1, {});
  std::vector<int> hops;
  for (int src = 1; src <= n_; ++src) {
    auto& dist = dist_[static_cast<std::size_t>(src)];
    auto& parent = parent_[static_cast<std::size_t>(src)];
    dist.assign(static_cast<std::size_t>(n_) + 1, inf);
    parent.assign(static_cast<std::size_t>(n_) + 1, 0);
    hops.assign(static_cast<std::size_t>(n_) + 1, 0);
    dist[static_cast<std::size_t>(src)] = 0.0;
    // frontier keyed (dist, hops, node) for a canonical shortest-path tree
    std::set<std::tuple<double, int, int>> frontier;
    frontier.insert({0.0, 0, src});
    while (!frontier.empty()) {
      const auto [d, h, u] = *frontier.begin();
      frontier.erase(frontier.begin());
      if (d > dist[static_cast<std::size_t>(u)] || h > hops[static_cast<std::size_t>(u)]) continue;
      for (const auto& [v, w] : graph.neighbors(u)) {
        const double nd = d + w;
        const int nh = h + 1;
        const auto sv = static_cast<std::size_t>(v);
        const bool better = nd < dist[sv] || (nd == dist[sv] && nh < hops[sv]) ||
                            (nd == dist[sv] && nh == hops[sv] && parent[sv] != 0 && u < parent[sv]);
        if (better) {
          if (dist[sv] != inf) frontier.erase({dist[sv], hops[sv], v});
          dist[sv] = nd;
          hops[sv] = nh;
          parent[sv] = u;
          frontier.insert({nd, nh, v});
        }
      }
    }
  }
}

double GeodesicTable::length(LocationId a, LocationId b) const {
  if (a < 1 || a > n_ || b < 1 || b > n_) {
    throw InternalError("geodesic query out of range");
  }
  return dist_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

GeodesicResult GeodesicTable::query(LocationId a, LocationId b) const {
  GeodesicResult res;
  res.length = length(a, b);
  if (!std::isfinite(res.length)) return res;
  std::vector<LocationId> rev;
  for (int v = b; v != 0 && v != a;
       v = parent_[static_cast<std::size_t>(a)][static_cast<std::size_t>(v)]) {
    rev.push_back(v);
  }
  rev.push_back(a);
  res.path.assign(rev.rbegin(), rev.rend());
  return res;
}

std::vector<LocationId> ValidatedNetwork::robot_state_set(int robot) const {
  std::set<LocationId> states;
  if (options_.relax_single_path_assumption) {
    for (const auto& pts : teams_.comm_points) states.insert(pts.begin(), pts.end());
  } else {
    for (int m : team_graph_.robot_teams[static_cast<std::size_t>(robot - 1)]) {
      const auto& pts = teams_.comm_points[static_cast<std::size_t>(m - 1)];
      states.insert(pts.begin(), pts.end());
    }
  }
  return {states.begin(), states.end()};
}

std::vector<LocationId> ValidatedNetwork::all_comm_points() const {
  std::set<LocationId> pts;
  for (const auto& c : teams_.comm_points) pts.insert(c.begin(), c.end());
  return {pts.begin(), pts.end()};
}

std::vector<Diagnostic> ValidationResult::errors() const {
  std::vector<Diagnostic> out;
  for (const auto& d : diagnostics) {
    if (d.severity == Diagnostic::Severity::Error) out.push_back(d);
  }
  return out;
}

std::vector<Diagnostic> ValidationResult::warnings() const {
  std::vector<Diagnostic> out;
  for (const auto& d : diagnostics) {
    if (d.severity == Diagnostic::Severity::Warning) out.push_back(d);
  }
  return out;
}

namespace {

bool graph_connected(const MobilityGraph& g) {
  const int n = g.location_count();
  if (n == 0) return false;
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> stack{1};
  seen[1] = 1;
  int count = 0;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    ++count;
    for (const auto& [v, w] : g.neighbors(u)) {
      (void)w;
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

}  // namespace

ValidationResult validate_network(MobilityGraph graph, TeamStructure teams,
                                  ValidationOptions options) {
  ValidationResult result;
  auto error = [&](const std::string& code, const std::string& msg) {
    result.diagnostics.push_back({Diagnostic::Severity::Error, code, msg});
  };
  auto warn = [&](const std::string& code, const std::string& msg) {
    result.diagnostics.push_back({Diagnostic::Severity::Warning, code, msg});
  };

  const int L = graph.location_count();
  if (L == 0) error("EmptyGraph", "mobility graph has no locations");
  std::size_t dim = 0;
  for (int id = 1; id <= L; ++id) {
    if (!graph.has_location(id)) {
      error("BadLocationIds", "location ids must be contiguous 1..L");
      break;
    }
    const auto& loc = graph.location(id);
    if (loc.coords.empty()) error("BadCoords", "location " + std::to_string(id) + " has no coordinates");
    if (dim == 0) dim = loc.coords.size();
    if (loc.coords.size() != dim) {
      error("BadCoords", "location " + std::to_string(id) + " has inconsistent dimension");
    }
  }

  bool weights_ok = true;
  for (int id = 1; id <= L && weights_ok; ++id) {
    if (!graph.has_location(id)) break;
    for (const auto& [v, w] : graph.neighbors(id)) {
      if (v == id) {
        error("SelfLoop", "self-loop at location " + std::to_string(id));
        weights_ok = false;
        break;
      }
      if (!(w > 0.0)) {
        error("NonPositiveWeight", "edge (" + std::to_string(id) + "," + std::to_string(v) +
                                       ") has non-positive weight");
        weights_ok = false;
        break;
      }
    }
  }

  if (result.errors().empty() && !graph_connected(graph)) {
    error("DisconnectedMobilityGraph", "mobility graph is not connected");
  }

  const int M = teams.team_count();
  const int N = teams.robot_count();
  if (M == 0) error("NoTeams", "at least one team is required");
  if (N == 0) error("NoRobots", "at least one robot is required");
  if (teams.comm_points.size() != static_cast<std::size_t>(M)) {
    error("BadTeams", "teams and comm point lists differ in length");
  }
  if (teams.robot_speed.size() != static_cast<std::size_t>(N)) {
    error("BadRobots", "robot speed list length mismatch");
  }

  if (!result.errors().empty()) return result;

  for (int m = 1; m <= M; ++m) {
    const auto& members = teams.members[static_cast<std::size_t>(m - 1)];
    const auto& pts = teams.comm_points[static_cast<std::size_t>(m - 1)];
    if (members.empty()) error("EmptyTeam", "team " + std::to_string(m) + " has no members");
    if (pts.empty()) error("EmptyCommSet", "team " + std::to_string(m) + " has no communication points");
    for (int r : members) {
      if (r < 1 || r > N) error("UnknownRobot", "team " + std::to_string(m) + " references robot " + std::to_string(r));
    }
    for (LocationId p : pts) {
      if (!graph.has_location(p)) {
        error("UnknownLocation", "team " + std::to_string(m) + " references location " + std::to_string(p));
      }
    }
  }
  for (int r = 1; r <= N; ++r) {
    if (!graph.has_location(teams.robot_start[static_cast<std::size_t>(r - 1)])) {
      error("UnknownLocation", "robot " + std::to_string(r) + " starts at unknown location");
    }
    if (!(teams.robot_speed[static_cast<std::size_t>(r - 1)] > 0.0)) {
      error("NonPositiveSpeed", "robot " + std::to_string(r) + " has non-positive speed");
    }
  }

  if (!result.errors().empty()) return result;

  TeamGraph tg = build_team_graph(teams);
  for (int r = 1; r <= N; ++r) {
    if (tg.robot_teams[static_cast<std::size_t>(r - 1)].empty()) {
      error("RobotWithoutTeam", "robot " + std::to_string(r) + " belongs to no team");
    }
  }
  if (result.errors().empty() && !tg.connected()) {
    error("DisconnectedTeamGraph", "team graph is not connected");
  }

  if (!result.errors().empty()) return result;

  GeodesicTable geod(graph);

  // Certify that geodesics between a robot's states avoid other teams'
  // communication points; when they cannot, the widened state set
  // (relax_single_path_assumption) restores soundness.
  if (!options.relax_single_path_assumption) {
    std::vector<LocationId> all_pts;
    {
      std::set<LocationId> s;
      for (const auto& c : teams.comm_points) s.insert(c.begin(), c.end());
      all_pts.assign(s.begin(), s.end());
    }
    for (int r = 1; r <= N; ++r) {
      std::set<LocationId> own;
      for (int m : tg.robot_teams[static_cast<std::size_t>(r - 1)]) {
        const auto& pts = teams.comm_points[static_cast<std::size_t>(m - 1)];
        own.insert(pts.begin(), pts.end());
      }
      std::set<LocationId> foreign;
      for (LocationId p : all_pts) {
        if (!own.count(p)) foreign.insert(p);
      }
      bool clean = true;
      for (auto a = own.begin(); a != own.end() && clean; ++a) {
        for (auto b = std::next(a); b != own.end() && clean; ++b) {
          const GeodesicResult res = geod.query(*a, *b);
          for (std::size_t k = 1; k + 1 < res.path.size(); ++k) {
            if (foreign.count(res.path[k])) {
              warn("UncertifiedStatePaths",
                   "robot " + std::to_string(r) + ": geodesic " + std::to_string(*a) + "->" +
                       std::to_string(*b) + " passes through foreign communication point " +
                       std::to_string(res.path[k]) +
                       "; consider widening state sets (relax option)");
              clean = false;
              break;
            }
          }
        }
      }
    }
  }

  result.network.emplace(std::move(graph), std::move(teams), std::move(tg), std::move(geod),
                         options);
  return result;
}

}  // namespace imc
