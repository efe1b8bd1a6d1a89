#include "imc/planner.hpp"

#include <map>
#include <set>
#include <utility>

#include "imc/errors.hpp"

namespace imc {

namespace {

using PbaState = Pba::State;

struct NodeInfo {
  double dist = 0.0;
  bool has_parent = false;
  PbaState parent;
};

// Deterministic Dijkstra over the implicit product graph. Seeds the search
// with `sources` (already carrying their initial distances), stops at the
// first settled state satisfying `is_target`, and returns the settled
// target with its parent map. Determinism: the frontier orders by
// (distance, state key) and an equal-distance relaxation rewires only to a
// strictly smaller parent key.
std::optional<PbaState> dijkstra(const Pba& pba,
                                 const std::vector<std::pair<PbaState, double>>& sources,
                                 const std::function<bool(const PbaState&)>& is_target,
                                 std::map<PbaState, NodeInfo>& info) {
  std::set<std::pair<double, PbaState>> frontier;
  for (const auto& [s, d] : sources) {
    auto it = info.find(s);
    if (it == info.end()) {
      info.emplace(s, NodeInfo{d, false, {}});
      frontier.insert({d, s});
    } else if (d < it->second.dist) {
      frontier.erase({it->second.dist, s});
      it->second.dist = d;
      frontier.insert({d, s});
    }
  }
  std::set<PbaState> settled;
  while (!frontier.empty()) {
    const auto [d, u] = *frontier.begin();
    frontier.erase(frontier.begin());
    settled.insert(u);
    if (is_target(u)) return u;
    pba.for_each_successor(u, [&](const PbaState& v, double w) {
      if (settled.count(v)) return;
      const double nd = d + w;
      auto it = info.find(v);
      if (it == info.end()) {
        info.emplace(v, NodeInfo{nd, true, u});
        frontier.insert({nd, v});
      } else if (nd < it->second.dist) {
        frontier.erase({it->second.dist, v});
        it->second.dist = nd;
        it->second.has_parent = true;
        it->second.parent = u;
        frontier.insert({nd, v});
      } else if (nd == it->second.dist && it->second.has_parent && u < it->second.parent) {
        it->second.parent = u;
      }
    });
  }
  return std::nullopt;
}

FinitePath unwind(const std::map<PbaState, NodeInfo>& info, const PbaState& target) {
  std::vector<JointState> rev;
  PbaState cur = target;
  while (true) {
    rev.push_back(cur.q);
    const auto it = info.find(cur);
    if (it == info.end() || !it->second.has_parent) break;
    cur = it->second.parent;
  }
  FinitePath p;
  p.states.assign(rev.rbegin(), rev.rend());
  return p;
}

// A repeated final joint state is a zero-cost wait that moves nobody; the
// canonical representative drops it (but a two-state wait path stays).
void strip_trailing_waits(FinitePath& p) {
  while (p.states.size() > 2 &&
         p.states[p.states.size() - 1] == p.states[p.states.size() - 2]) {
    p.states.pop_back();
  }
}

}  // namespace

TeamPrefix plan_team_prefix(const Pba& pba, const JointState& start) {
  if (!pba.wpts().has_state(start)) {
    throw DomainError("StartNotInStateSet",
                      "joint start is not a state of the team's joint transition system");
  }
  std::map<PbaState, NodeInfo> info;
  const PbaState s0 = pba.initial(start);
  const auto goal = dijkstra(
      pba, {{s0, 0.0}}, [&](const PbaState& s) { return pba.accepting(s); }, info);
  if (!goal) {
    throw DomainError("NoAcceptingReachable",
                      "no joint path reaches a common communication point");
  }
  TeamPrefix out;
  out.team = pba.nba().meet().team;
  out.path = unwind(info, *goal);
  strip_trailing_waits(out.path);
  out.cost = info.at(*goal).dist;
  out.meeting_point = meeting_point_of(pba, goal->q);
  return out;
}

TeamCycle plan_team_suffix(const Pba& pba, const JointState& anchor,
                           const PlanOptions& options) {
  const LocationId meet_at = meeting_point_of(pba, anchor);
  (void)meet_at;
  TeamCycle out;
  out.team = pba.nba().meet().team;
  if (options.allow_wait_cycle) {
    out.path.states = {anchor, anchor};
    out.cost = 0.0;
    return out;
  }
  // Seed with every successor reached by a genuine move (some robot leaves
  // its state), then search back to the anchor in its accepting pairing.
  const PbaState target{anchor, 1};
  std::vector<std::pair<PbaState, double>> sources;
  pba.for_each_successor(target, [&](const PbaState& v, double w) {
    if (v.q != anchor) sources.push_back({v, w});
  });
  std::map<PbaState, NodeInfo> info;
  const auto goal = dijkstra(
      pba, sources, [&](const PbaState& s) { return s == target; }, info);
  if (!goal) {
    throw DomainError("NoCycleFound",
                      "no repeating joint cycle through the meeting state exists");
  }
  FinitePath tail = unwind(info, *goal);
  out.path.states.clear();
  out.path.states.push_back(anchor);
  out.path.states.insert(out.path.states.end(), tail.states.begin(), tail.states.end());
  strip_trailing_waits(out.path);
  out.cost = info.at(*goal).dist;
  return out;
}

LocationId meeting_point_of(const Pba& pba, const JointState& q) {
  const auto loc = pba.nba().meet().meeting_location(pba.wpts().label(q));
  if (!loc) {
    throw DomainError("NotAMeetingState",
                      "joint state does not place the whole team at one communication point");
  }
  return *loc;
}

}  // namespace imc
