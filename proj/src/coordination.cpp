#include "imc/coordination.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "imc/errors.hpp"

namespace imc {

namespace {

void walk_from(int team, const TeamGraph& tg, std::vector<char>& visited,
               std::vector<int>& stops) {
  visited[static_cast<std::size_t>(team - 1)] = 1;
  stops.push_back(team);
  for (int nb : tg.neighbors[static_cast<std::size_t>(team - 1)]) {
    if (visited[static_cast<std::size_t>(nb - 1)]) continue;
    walk_from(nb, tg, visited, stops);
    stops.push_back(team);
  }
}

}  // namespace

NodeSequence build_sequence(const TeamGraph& team_graph,
                            const std::vector<std::vector<LocationId>>& comm_points) {
  const int m = team_graph.team_count;
  if (m <= 0) throw DomainError("NoTeams", "cannot build a walk over an empty team graph");
  if (static_cast<int>(comm_points.size()) != m) {
    throw DomainError("BadTeams", "communication point sets do not match the team count");
  }
  std::vector<char> visited(static_cast<std::size_t>(m), 0);
  std::vector<int> raw;
  walk_from(1, team_graph, visited, raw);
  for (int t = 1; t <= m; ++t) {
    if (!visited[static_cast<std::size_t>(t - 1)]) {
      throw DomainError("DisconnectedTeamGraph",
                        "the walk cannot reach every team from team 1");
    }
  }
  NodeSequence seq;
  seq.first_visit_index.assign(static_cast<std::size_t>(m), raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const int t = raw[i];
    const auto& cps = comm_points[static_cast<std::size_t>(t - 1)];
    if (cps.empty()) throw DomainError("EmptyCommSet", "a team has no communication points");
    seq.stops.push_back({t, cps.front()});
    if (seq.first_visit_index[static_cast<std::size_t>(t - 1)] == raw.size()) {
      seq.first_visit_index[static_cast<std::size_t>(t - 1)] = i;
      seq.first_visit_order.push_back(t);
    }
  }
  return seq;
}

NodeSequence build_sequence(const ValidatedNetwork& net) {
  return build_sequence(net.team_graph(), net.teams().comm_points);
}

SlotAssignment assign_slots(const TeamGraph& team_graph, const NodeSequence& sequence) {
  const int m = team_graph.team_count;
  int max_degree = 0;
  for (int d : team_graph.degree) max_degree = std::max(max_degree, d);
  SlotAssignment out;
  out.slot_count = max_degree + 1;
  out.slot_of_team.assign(static_cast<std::size_t>(m), 0);
  out.teams_in_slot.assign(static_cast<std::size_t>(out.slot_count), {});
  for (int t : sequence.first_visit_order) {
    std::set<int> taken;
    for (int nb : team_graph.neighbors[static_cast<std::size_t>(t - 1)]) {
      const int s = out.slot_of_team[static_cast<std::size_t>(nb - 1)];
      if (s != 0) taken.insert(s);
    }
    int slot = 1;
    while (taken.count(slot)) ++slot;
    if (slot > out.slot_count) {
      throw InternalError("greedy coloring exceeded the reserved slot budget");
    }
    out.slot_of_team[static_cast<std::size_t>(t - 1)] = slot;
    out.teams_in_slot[static_cast<std::size_t>(slot - 1)].push_back(t);
  }
  for (int s = 1; s <= out.slot_count; ++s) {
    if (!out.teams_in_slot[static_cast<std::size_t>(s - 1)].empty()) {
      out.surviving_slots.push_back(s);
    }
  }
  return out;
}

PlanSession::PlanSession(const ValidatedNetwork& net)
    : net_(&net),
      sequence_(build_sequence(net)),
      slots_(assign_slots(net.team_graph(), sequence_)) {
  const int n = net.teams().robot_count();
  const int m = net.teams().team_count();
  required_starts_.assign(static_cast<std::size_t>(n), 0);
  for (int r = 1; r <= n; ++r) {
    const auto& teams_of = net.team_graph().robot_teams[static_cast<std::size_t>(r - 1)];
    if (teams_of.empty()) throw DomainError("RobotWithoutTeam", "a robot belongs to no team");
    int best = teams_of.front();
    for (int t : teams_of) {
      if (sequence_.first_visit_index[static_cast<std::size_t>(t - 1)] <
          sequence_.first_visit_index[static_cast<std::size_t>(best - 1)]) {
        best = t;
      }
    }
    required_starts_[static_cast<std::size_t>(r - 1)] =
        sequence_.stops[sequence_.first_visit_index[static_cast<std::size_t>(best - 1)]]
            .rep_point;
  }
  for (int r = 1; r <= n; ++r) {
    wts_.push_back(std::make_unique<Wts>(
        build_wts(net, r, required_starts_[static_cast<std::size_t>(r - 1)])));
  }
  for (int t = 1; t <= m; ++t) {
    std::vector<const Wts*> factors;
    for (int r : net.teams().members[static_cast<std::size_t>(t - 1)]) {
      factors.push_back(wts_[static_cast<std::size_t>(r - 1)].get());
    }
    wpts_.push_back(std::make_unique<Wpts>(t, std::move(factors)));
    nba_.push_back(std::make_unique<Nba>(build_team_nba(net, t)));
    pba_.push_back(std::make_unique<Pba>(wpts_.back().get(), nba_.back().get()));
  }
}

const Wts& PlanSession::wts(int robot) const {
  return *wts_.at(static_cast<std::size_t>(robot - 1));
}
const Wpts& PlanSession::wpts(int team) const {
  return *wpts_.at(static_cast<std::size_t>(team - 1));
}
const Nba& PlanSession::nba(int team) const {
  return *nba_.at(static_cast<std::size_t>(team - 1));
}
const Pba& PlanSession::pba(int team) const {
  return *pba_.at(static_cast<std::size_t>(team - 1));
}

const TeamPrefix& PlanSession::prefix_for(int team, const JointState& start) {
  const auto key = std::make_pair(team, start);
  auto it = prefix_cache_.find(key);
  if (it != prefix_cache_.end()) return it->second;
  TeamPrefix prefix = plan_team_prefix(pba(team), start);
  if (prefix.path.states.empty() || prefix.path.states.front() != start) {
    throw InternalError("planned joint path does not begin at the requested start");
  }
  return prefix_cache_.emplace(key, std::move(prefix)).first->second;
}

RoundPlan PlanSession::build_round(int index, const std::vector<LocationId>& start_positions) {
  const int n = net_->teams().robot_count();
  if (static_cast<int>(start_positions.size()) != n) {
    throw DomainError("BadStartTuple", "start tuple size does not match the robot count");
  }
  RoundPlan round;
  round.index = index;
  round.start = start_positions;
  std::vector<LocationId> positions = start_positions;
  for (int slot : slots_.surviving_slots) {
    RoundColumn column;
    column.slot = slot;
    column.teams = slots_.teams_in_slot[static_cast<std::size_t>(slot - 1)];
    std::set<int> used_robots;
    std::size_t length = 2;
    for (int team : column.teams) {
      const auto& members = net_->teams().members[static_cast<std::size_t>(team - 1)];
      for (int r : members) {
        if (!used_robots.insert(r).second) {
          throw InternalError("two teams of one column share a robot");
        }
      }
      JointState js;
      for (int r : members) js.push_back(positions[static_cast<std::size_t>(r - 1)]);
      const TeamPrefix& prefix = prefix_for(team, js);
      column.team_paths.emplace(team, prefix);
      column.meeting_points.emplace(team, prefix.meeting_point);
      length = std::max(length, prefix.path.size());
      round.cost += prefix.cost;
      const JointState& last = prefix.path.states.back();
      for (std::size_t k = 0; k < members.size(); ++k) {
        positions[static_cast<std::size_t>(members[k] - 1)] = last[k];
      }
    }
    column.length = length;
    for (int r = 1; r <= n; ++r) {
      ColumnSegment seg;
      if (used_robots.count(r)) {
        for (int team : column.teams) {
          const auto& members = net_->teams().members[static_cast<std::size_t>(team - 1)];
          if (!std::binary_search(members.begin(), members.end(), r)) continue;
          seg.team = team;
          RobotPath rp = project(wpts(team), column.team_paths.at(team).path, r);
          seg.travel_len = path_cost(wts(r), rp);
          seg.states = std::move(rp.states);
          break;
        }
      } else {
        seg.team = 0;
        seg.travel_len = 0.0;
        seg.states.assign(1, positions[static_cast<std::size_t>(r - 1)]);
      }
      while (seg.states.size() < length) seg.states.push_back(seg.states.back());
      column.segments.emplace(r, std::move(seg));
    }
    round.columns.push_back(std::move(column));
  }
  round.finish = positions;
  return round;
}

MotionPlan PlanSession::plan(const std::vector<LocationId>& config_starts, int max_rounds) {
  const int n = net_->teams().robot_count();
  if (static_cast<int>(config_starts.size()) != n) {
    throw DomainError("BadStartTuple", "start tuple size does not match the robot count");
  }
  for (LocationId s : config_starts) {
    if (!net_->graph().has_location(s)) {
      throw DomainError("UnknownLocation", "a robot start is not a location of the graph");
    }
  }
  MotionPlan plan;
  plan.sequence = sequence_;
  plan.slots = slots_;
  plan.config_starts = config_starts;
  plan.round_one_starts = required_starts_;
  for (int r = 1; r <= n; ++r) {
    const LocationId from = config_starts[static_cast<std::size_t>(r - 1)];
    const LocationId to = required_starts_[static_cast<std::size_t>(r - 1)];
    if (from != to) {
      plan.pre_legs.push_back({r, from, to, net_->geodesics().length(from, to)});
    }
  }
  std::map<std::vector<LocationId>, int> seen;
  std::vector<LocationId> positions = required_starts_;
  seen.emplace(positions, 1);
  std::vector<RoundPlan> rounds;
  int first = 0;
  int last = 0;
  for (int k = 1; k <= max_rounds; ++k) {
    rounds.push_back(build_round(k, positions));
    positions = rounds.back().finish;
    const auto it = seen.find(positions);
    if (it != seen.end()) {
      first = it->second;
      last = k;
      break;
    }
    seen.emplace(positions, k + 1);
  }
  if (first == 0) {
    throw DomainError("HorizonExceeded",
                      "round construction found no repeating position tuple within the bound");
  }
  plan.first_suffix_round = first;
  plan.last_suffix_round = last;
  plan.prefix_rounds.assign(rounds.begin(), rounds.begin() + (first - 1));
  plan.suffix_rounds.assign(rounds.begin() + (first - 1), rounds.begin() + last);
  for (const PreLeg& leg : plan.pre_legs) plan.prefix_cost += leg.cost;
  for (const RoundPlan& r : plan.prefix_rounds) plan.prefix_cost += r.cost;
  for (const RoundPlan& r : plan.suffix_rounds) plan.suffix_cost += r.cost;
  return plan;
}

namespace {

struct Checker {
  const ValidatedNetwork& net;
  AdmissibilityReport report;

  void fail(const std::string& msg) {
    report.ok = false;
    report.violations.push_back(msg);
  }
};

std::string describe(int round, int slot, int robot) {
  std::ostringstream os;
  os << "round " << round << ", slot " << slot << ", robot " << robot;
  return os.str();
}

void check_round(Checker& ck, const MotionPlan& plan, const RoundPlan& round,
                 std::vector<LocationId>& positions,
                 const std::vector<std::vector<LocationId>>& state_sets) {
  const int n = plan.robot_count();
  if (static_cast<int>(round.start.size()) != n || static_cast<int>(round.finish.size()) != n) {
    ck.fail("round " + std::to_string(round.index) + ": malformed position tuples");
    return;
  }
  for (int r = 1; r <= n; ++r) {
    if (round.start[static_cast<std::size_t>(r - 1)] !=
        positions[static_cast<std::size_t>(r - 1)]) {
      ck.fail("round " + std::to_string(round.index) + ": robot " + std::to_string(r) +
              " does not resume from its previous position");
    }
  }
  int prev_slot = 0;
  for (const RoundColumn& column : round.columns) {
    if (column.slot <= prev_slot) {
      ck.fail("round " + std::to_string(round.index) + ": columns are not in ascending slot order");
    }
    prev_slot = column.slot;
    for (int team : column.teams) {
      if (team < 1 || team > ck.net.teams().team_count()) {
        ck.fail("round " + std::to_string(round.index) + ": unknown team " +
                std::to_string(team));
        continue;
      }
      if (plan.slots.slot_of_team[static_cast<std::size_t>(team - 1)] != column.slot) {
        ck.fail("round " + std::to_string(round.index) + ": team " + std::to_string(team) +
                " appears outside its slot");
      }
      for (int r : ck.net.teams().members[static_cast<std::size_t>(team - 1)]) {
        const auto it = column.segments.find(r);
        if (it == column.segments.end() || it->second.team != team) {
          ck.fail(describe(round.index, column.slot, r) +
                  ": member does not carry its team's path");
        }
      }
    }
    for (int r = 1; r <= n; ++r) {
      const auto it = column.segments.find(r);
      if (it == column.segments.end()) {
        ck.fail(describe(round.index, column.slot, r) + ": robot has no segment");
        continue;
      }
      const ColumnSegment& seg = it->second;
      if (seg.states.empty() || seg.states.size() != column.length) {
        ck.fail(describe(round.index, column.slot, r) + ": segment length mismatch");
        continue;
      }
      if (seg.states.front() != positions[static_cast<std::size_t>(r - 1)]) {
        ck.fail(describe(round.index, column.slot, r) +
                ": segment does not start at the robot's position");
      }
      const auto& allowed = state_sets[static_cast<std::size_t>(r - 1)];
      for (LocationId q : seg.states) {
        if (!std::binary_search(allowed.begin(), allowed.end(), q)) {
          ck.fail(describe(round.index, column.slot, r) + ": state " + std::to_string(q) +
                  " is outside the robot's state set");
          break;
        }
      }
      if (seg.team == 0) {
        for (LocationId q : seg.states) {
          if (q != seg.states.front()) {
            ck.fail(describe(round.index, column.slot, r) + ": idle robot moves");
            break;
          }
        }
      } else {
        const bool listed = std::find(column.teams.begin(), column.teams.end(), seg.team) !=
                            column.teams.end();
        if (!listed) {
          ck.fail(describe(round.index, column.slot, r) +
                  ": segment names a team the column does not schedule");
        } else {
          const auto& members =
              ck.net.teams().members[static_cast<std::size_t>(seg.team - 1)];
          if (!std::binary_search(members.begin(), members.end(), r)) {
            ck.fail(describe(round.index, column.slot, r) +
                    ": robot is not a member of the team it executes");
          }
        }
      }
      positions[static_cast<std::size_t>(r - 1)] = seg.states.back();
    }
    for (const auto& [team, where] : column.meeting_points) {
      bool all_there = true;
      if (team >= 1 && team <= ck.net.teams().team_count()) {
        for (int r : ck.net.teams().members[static_cast<std::size_t>(team - 1)]) {
          const auto it = column.segments.find(r);
          if (it == column.segments.end() || it->second.states.empty() ||
              it->second.states.back() != where) {
            all_there = false;
          }
        }
      }
      if (!all_there) {
        ck.fail("round " + std::to_string(round.index) + ", slot " + std::to_string(column.slot) +
                ": recorded meeting point of team " + std::to_string(team) +
                " disagrees with the final member states");
      }
    }
  }
  for (int r = 1; r <= n; ++r) {
    if (round.finish[static_cast<std::size_t>(r - 1)] !=
        positions[static_cast<std::size_t>(r - 1)]) {
      ck.fail("round " + std::to_string(round.index) + ": robot " + std::to_string(r) +
              " does not end where its recorded finish says");
    }
  }
}

}  // namespace

AdmissibilityReport check_admissible(const ValidatedNetwork& net, const MotionPlan& plan) {
  Checker ck{net, {}};
  const int n = ck.net.teams().robot_count();
  if (plan.robot_count() != n) {
    ck.fail("plan robot count does not match the network");
    return ck.report;
  }
  if (static_cast<int>(plan.round_one_starts.size()) != n) {
    ck.fail("placement tuple size does not match the robot count");
    return ck.report;
  }
  std::vector<std::vector<LocationId>> state_sets;
  for (int r = 1; r <= n; ++r) state_sets.push_back(net.robot_state_set(r));

  std::vector<char> bridged(static_cast<std::size_t>(n), 0);
  for (const PreLeg& leg : plan.pre_legs) {
    if (leg.robot < 1 || leg.robot > n) {
      ck.fail("placement leg names an unknown robot");
      continue;
    }
    bridged[static_cast<std::size_t>(leg.robot - 1)] = 1;
    if (leg.from != plan.config_starts[static_cast<std::size_t>(leg.robot - 1)]) {
      ck.fail("placement leg of robot " + std::to_string(leg.robot) +
              " does not leave from the configured start");
    }
    if (leg.to != plan.round_one_starts[static_cast<std::size_t>(leg.robot - 1)]) {
      ck.fail("placement leg of robot " + std::to_string(leg.robot) +
              " does not end at the robot's round-one position");
    }
  }
  for (int r = 1; r <= n; ++r) {
    if (!bridged[static_cast<std::size_t>(r - 1)] &&
        plan.config_starts[static_cast<std::size_t>(r - 1)] !=
            plan.round_one_starts[static_cast<std::size_t>(r - 1)]) {
      ck.fail("robot " + std::to_string(r) +
              " starts away from its round-one position but has no placement leg");
    }
  }

  std::vector<LocationId> positions = plan.round_one_starts;
  int expected_index = 1;
  for (const RoundPlan& round : plan.prefix_rounds) {
    if (round.index != expected_index) {
      ck.fail("round numbering is not contiguous at round " + std::to_string(round.index));
    }
    ++expected_index;
    check_round(ck, plan, round, positions, state_sets);
  }
  if (plan.suffix_rounds.empty()) {
    ck.fail("plan has no repeating block");
    return ck.report;
  }
  for (const RoundPlan& round : plan.suffix_rounds) {
    if (round.index != expected_index) {
      ck.fail("round numbering is not contiguous at round " + std::to_string(round.index));
    }
    ++expected_index;
    check_round(ck, plan, round, positions, state_sets);
  }
  if (plan.first_suffix_round != plan.suffix_rounds.front().index ||
      plan.last_suffix_round != plan.suffix_rounds.back().index) {
    ck.fail("repeating-block bounds disagree with the stored rounds");
  }
  const auto& closure_start = plan.suffix_rounds.front().start;
  const auto& closure_end = plan.suffix_rounds.back().finish;
  if (closure_start != closure_end) {
    ck.fail("repeating block is not closed: final positions differ from its starting positions");
  }
  return ck.report;
}

}  // namespace imc
