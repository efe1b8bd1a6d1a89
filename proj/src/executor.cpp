#include "imc/executor.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "imc/errors.hpp"
#include "imc/util.hpp"

namespace imc {

namespace {

struct Barrier {
  int team = 0;
  int round = 0;
  int slot = 0;
  LocationId where = 0;
};

struct Item {
  bool is_travel = true;
  LocationId from = 0;
  LocationId to = 0;
  double dist = 0.0;
  Barrier barrier;
};

struct BarrierState {
  std::vector<int> members;            // sorted
  std::map<int, double> arrivals;      // robot -> arrival time
};

using BarrierKey = std::tuple<int, int, int>;  // round, slot, team

void append_round_items(const ValidatedNetwork& net, const RoundPlan& round, int absolute_round,
                        std::vector<std::vector<Item>>& items) {
  for (const RoundColumn& column : round.columns) {
    for (const auto& [robot, seg] : column.segments) {
      if (seg.team == 0) continue;
      auto& list = items[static_cast<std::size_t>(robot - 1)];
      for (std::size_t k = 0; k + 1 < seg.states.size(); ++k) {
        if (seg.states[k] == seg.states[k + 1]) continue;
        Item it;
        it.is_travel = true;
        it.from = seg.states[k];
        it.to = seg.states[k + 1];
        it.dist = net.geodesics().length(it.from, it.to);
        list.push_back(it);
      }
      Item b;
      b.is_travel = false;
      b.barrier = {seg.team, absolute_round, column.slot,
                   column.meeting_points.at(seg.team)};
      list.push_back(b);
    }
  }
}

}  // namespace

ExecutionTrace simulate(const ValidatedNetwork& net, const MotionPlan& plan,
                        const SimOptions& options) {
  const int n = net.teams().robot_count();
  if (plan.robot_count() != n) {
    throw DomainError("BadStartTuple", "plan robot count does not match the network");
  }
  if (options.suffix_cycles < 0) {
    throw DomainError("BadCycleCount", "the number of repeating-block passes must be >= 0");
  }

  // Per-robot itineraries: placement leg, prefix rounds, repeated block.
  std::vector<std::vector<Item>> items(static_cast<std::size_t>(n));
  for (const PreLeg& leg : plan.pre_legs) {
    if (leg.from == leg.to) continue;
    Item it;
    it.is_travel = true;
    it.from = leg.from;
    it.to = leg.to;
    it.dist = leg.cost;
    items[static_cast<std::size_t>(leg.robot - 1)].push_back(it);
  }
  for (const RoundPlan& round : plan.prefix_rounds) {
    append_round_items(net, round, round.index, items);
  }
  const int block = plan.suffix_length();
  for (int c = 0; c < options.suffix_cycles; ++c) {
    for (const RoundPlan& round : plan.suffix_rounds) {
      append_round_items(net, round, round.index + c * block, items);
    }
  }

  ExecutionTrace trace;
  trace.suffix_cycles = options.suffix_cycles;
  trace.robot_distance.assign(static_cast<std::size_t>(n), 0.0);

  std::map<BarrierKey, BarrierState> barriers;
  std::vector<std::size_t> cursor(static_cast<std::size_t>(n), 0);
  std::vector<double> finish(static_cast<std::size_t>(n), 0.0);
  std::set<std::pair<double, int>> pending;  // (resume time, robot)
  for (int r = 1; r <= n; ++r) pending.insert({0.0, r});

  const auto& speeds = net.teams().robot_speed;
  while (!pending.empty()) {
    const auto [t0, r] = *pending.begin();
    pending.erase(pending.begin());
    double t = t0;
    auto& list = items[static_cast<std::size_t>(r - 1)];
    auto& cur = cursor[static_cast<std::size_t>(r - 1)];
    bool blocked = false;
    while (cur < list.size()) {
      const Item& item = list[cur];
      if (item.is_travel) {
        const double dur = item.dist / speeds[static_cast<std::size_t>(r - 1)];
        trace.travels.push_back({r, item.from, item.to, t, t + dur});
        trace.robot_distance[static_cast<std::size_t>(r - 1)] += item.dist;
        t += dur;
        ++cur;
        continue;
      }
      const Barrier& b = item.barrier;
      const BarrierKey key{b.round, b.slot, b.team};
      auto& st = barriers[key];
      if (st.members.empty()) {
        st.members = net.teams().members[static_cast<std::size_t>(b.team - 1)];
      }
      st.arrivals[r] = t;
      if (st.arrivals.size() < st.members.size()) {
        blocked = true;
        break;  // resumes when the meeting fires
      }
      double fire = 0.0;
      for (const auto& [m, at] : st.arrivals) fire = std::max(fire, at);
      MeetingRecord rec;
      rec.team = b.team;
      rec.round = b.round;
      rec.slot = b.slot;
      rec.location = b.where;
      rec.time = fire;
      rec.members = st.members;
      for (int m : st.members) {
        const double at = st.arrivals.at(m);
        rec.arrivals.push_back(at);
        rec.waits.push_back(fire - at);
      }
      trace.meetings.push_back(std::move(rec));
      for (int m : st.members) {
        ++cursor[static_cast<std::size_t>(m - 1)];
        if (m != r) pending.insert({fire, m});
      }
      t = fire;
    }
    if (!blocked) finish[static_cast<std::size_t>(r - 1)] = t;
  }

  for (int r = 1; r <= n; ++r) {
    if (cursor[static_cast<std::size_t>(r - 1)] != items[static_cast<std::size_t>(r - 1)].size()) {
      throw InternalError("a robot finished the run with unexecuted plan items");
    }
    trace.makespan = std::max(trace.makespan, finish[static_cast<std::size_t>(r - 1)]);
    trace.total_distance += trace.robot_distance[static_cast<std::size_t>(r - 1)];
  }

  std::stable_sort(trace.travels.begin(), trace.travels.end(),
                   [](const TravelRecord& a, const TravelRecord& b) {
                     return std::tie(a.depart, a.robot) < std::tie(b.depart, b.robot);
                   });
  std::stable_sort(trace.meetings.begin(), trace.meetings.end(),
                   [](const MeetingRecord& a, const MeetingRecord& b) {
                     return std::tie(a.time, a.round, a.slot, a.team) <
                            std::tie(b.time, b.round, b.slot, b.team);
                   });

  if (options.consensus) {
    std::vector<double> values = options.initial_values;
    if (values.empty()) {
      Rng rng(options.seed);
      for (int r = 1; r <= n; ++r) values.push_back(rng.range(0.0, 100.0));
    } else if (static_cast<int>(values.size()) != n) {
      throw DomainError("BadValueTuple", "one initial value per robot is required");
    }
    trace.initial_values = values;
    for (MeetingRecord& rec : trace.meetings) {
      double sum = 0.0;
      for (int m : rec.members) {
        rec.values_before.push_back(values[static_cast<std::size_t>(m - 1)]);
        sum += values[static_cast<std::size_t>(m - 1)];
      }
      const double mean = sum / static_cast<double>(rec.members.size());
      for (int m : rec.members) {
        values[static_cast<std::size_t>(m - 1)] = mean;
        rec.values_after.push_back(mean);
      }
      const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
      trace.spread_series.push_back(*hi - *lo);
    }
    trace.final_values = values;
  }
  return trace;
}

ConnectivityReport verify_connectivity(const MotionPlan& plan, const ExecutionTrace& trace) {
  ConnectivityReport report;
  report.cycles_checked = trace.suffix_cycles;
  const int block = plan.suffix_length();
  const int first = plan.first_suffix_round;
  const int team_count = static_cast<int>(plan.slots.slot_of_team.size());
  for (int team = 1; team <= team_count; ++team) {
    report.meetings_per_cycle[team].assign(static_cast<std::size_t>(trace.suffix_cycles), 0);
  }
  for (const MeetingRecord& rec : trace.meetings) {
    if (rec.round < first) continue;  // prefix meeting
    const int cycle = (rec.round - first) / block + 1;
    if (cycle > trace.suffix_cycles) continue;  // beyond the last completed pass
    auto it = report.meetings_per_cycle.find(rec.team);
    if (it == report.meetings_per_cycle.end()) {
      report.ok = false;
      report.violations.push_back("meeting of unknown team " + std::to_string(rec.team));
      continue;
    }
    ++it->second[static_cast<std::size_t>(cycle - 1)];
  }
  for (const auto& [team, counts] : report.meetings_per_cycle) {
    for (std::size_t c = 0; c < counts.size(); ++c) {
      if (counts[c] == 0) {
        report.ok = false;
        report.violations.push_back("team " + std::to_string(team) +
                                    " never communicates during pass " + std::to_string(c + 1));
      }
    }
  }
  return report;
}

ConsensusReport consensus_report(const ExecutionTrace& trace, double tolerance) {
  ConsensusReport report;
  report.tolerance = tolerance;
  if (trace.spread_series.empty()) {
    if (!trace.initial_values.empty()) {
      const auto [lo, hi] =
          std::minmax_element(trace.initial_values.begin(), trace.initial_values.end());
      report.final_spread = *hi - *lo;
      report.converged = report.final_spread <= tolerance;
      if (report.converged) report.meetings_until_converged = 0;
    }
    return report;
  }
  report.final_spread = trace.spread_series.back();
  report.converged = report.final_spread <= tolerance;
  for (std::size_t i = 0; i < trace.spread_series.size(); ++i) {
    if (trace.spread_series[i] <= tolerance) {
      report.meetings_until_converged = static_cast<int>(i + 1);
      break;
    }
  }
  return report;
}

}  // namespace imc
