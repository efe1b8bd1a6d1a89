#include "imc/plan_io.hpp"

#include <algorithm>
#include <sstream>

#include "imc/errors.hpp"
#include "imc/util.hpp"
#include "json_util.hpp"

namespace imc {

namespace {

using jsonu::as_array;
using jsonu::as_int;
using jsonu::as_int_array;
using jsonu::as_number;
using jsonu::expect_keys;
using jsonu::njson;
using jsonu::require;

njson round_to_json(const RoundPlan& round) {
  njson jr;
  jr["index"] = round.index;
  jr["start"] = round.start;
  jr["finish"] = round.finish;
  jr["cost"] = round.cost;
  jr["columns"] = njson::array();
  for (const RoundColumn& column : round.columns) {
    njson jc;
    jc["slot"] = column.slot;
    jc["teams"] = column.teams;
    jc["length"] = column.length;
    jc["segments"] = njson::array();
    for (const auto& [robot, seg] : column.segments) {
      njson js;
      js["robot"] = robot;
      js["team"] = seg.team;
      js["travel_len"] = seg.travel_len;
      js["states"] = seg.states;
      jc["segments"].push_back(std::move(js));
    }
    jc["team_paths"] = njson::array();
    for (int team : column.teams) {
      const TeamPrefix& tp = column.team_paths.at(team);
      njson jt;
      jt["team"] = team;
      jt["meeting_point"] = tp.meeting_point;
      jt["cost"] = tp.cost;
      jt["path"] = njson::array();
      for (const JointState& q : tp.path.states) jt["path"].push_back(q);
      jc["team_paths"].push_back(std::move(jt));
    }
    jr["columns"].push_back(std::move(jc));
  }
  return jr;
}

RoundPlan round_from_json(const njson& jr) {
  expect_keys(jr, "round", {"index", "start", "finish", "cost", "columns"});
  RoundPlan round;
  round.index = as_int(require(jr, "round", "index"), "round index");
  round.start = as_int_array(require(jr, "round", "start"), "round start");
  round.finish = as_int_array(require(jr, "round", "finish"), "round finish");
  round.cost = as_number(require(jr, "round", "cost"), "round cost");
  for (const njson& jc : as_array(require(jr, "round", "columns"), "round columns")) {
    expect_keys(jc, "column", {"slot", "teams", "length", "segments", "team_paths"});
    RoundColumn column;
    column.slot = as_int(require(jc, "column", "slot"), "column slot");
    column.teams = as_int_array(require(jc, "column", "teams"), "column teams");
    const int length = as_int(require(jc, "column", "length"), "column length");
    if (length < 0) throw ConfigError("column length must be non-negative");
    column.length = static_cast<std::size_t>(length);
    for (const njson& js : as_array(require(jc, "column", "segments"), "column segments")) {
      expect_keys(js, "segment", {"robot", "team", "travel_len", "states"});
      const int robot = as_int(require(js, "segment", "robot"), "segment robot");
      ColumnSegment seg;
      seg.team = as_int(require(js, "segment", "team"), "segment team");
      seg.travel_len = as_number(require(js, "segment", "travel_len"), "segment travel_len");
      seg.states = as_int_array(require(js, "segment", "states"), "segment states");
      if (!column.segments.emplace(robot, std::move(seg)).second) {
        throw ConfigError("column lists robot " + std::to_string(robot) + " twice");
      }
    }
    for (const njson& jt :
         as_array(require(jc, "column", "team_paths"), "column team_paths")) {
      expect_keys(jt, "team path", {"team", "meeting_point", "cost", "path"});
      TeamPrefix tp;
      tp.team = as_int(require(jt, "team path", "team"), "team path team");
      tp.meeting_point =
          as_int(require(jt, "team path", "meeting_point"), "team path meeting_point");
      tp.cost = as_number(require(jt, "team path", "cost"), "team path cost");
      for (const njson& jq : as_array(require(jt, "team path", "path"), "team path path")) {
        tp.path.states.push_back(as_int_array(jq, "joint state"));
      }
      column.meeting_points.emplace(tp.team, tp.meeting_point);
      if (!column.team_paths.emplace(tp.team, std::move(tp)).second) {
        throw ConfigError("column lists a team path twice");
      }
    }
    round.columns.push_back(std::move(column));
  }
  return round;
}

}  // namespace

std::string plan_to_text(const MotionPlan& plan) {
  njson root;
  root["sequence"] = njson::array();
  for (const SequenceStop& stop : plan.sequence.stops) {
    njson js;
    js["team"] = stop.team;
    js["rep_point"] = stop.rep_point;
    root["sequence"].push_back(std::move(js));
  }
  root["slot_count"] = plan.slots.slot_count;
  root["slot_of_team"] = plan.slots.slot_of_team;
  root["config_starts"] = plan.config_starts;
  root["round_one_starts"] = plan.round_one_starts;
  root["pre_legs"] = njson::array();
  for (const PreLeg& leg : plan.pre_legs) {
    njson jl;
    jl["robot"] = leg.robot;
    jl["from"] = leg.from;
    jl["to"] = leg.to;
    jl["cost"] = leg.cost;
    root["pre_legs"].push_back(std::move(jl));
  }
  root["first_suffix_round"] = plan.first_suffix_round;
  root["last_suffix_round"] = plan.last_suffix_round;
  root["prefix_rounds"] = njson::array();
  for (const RoundPlan& round : plan.prefix_rounds) {
    root["prefix_rounds"].push_back(round_to_json(round));
  }
  root["suffix_rounds"] = njson::array();
  for (const RoundPlan& round : plan.suffix_rounds) {
    root["suffix_rounds"].push_back(round_to_json(round));
  }
  return root.dump(2) + "\n";
}

MotionPlan plan_from_text(const std::string& text) {
  njson root;
  try {
    root = njson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("plan is not valid JSON: ") + e.what());
  }
  expect_keys(root, "plan",
              {"sequence", "slot_count", "slot_of_team", "config_starts", "round_one_starts",
               "pre_legs", "first_suffix_round", "last_suffix_round", "prefix_rounds",
               "suffix_rounds"});
  MotionPlan plan;
  for (const njson& js : as_array(require(root, "plan", "sequence"), "plan sequence")) {
    expect_keys(js, "sequence stop", {"team", "rep_point"});
    SequenceStop stop;
    stop.team = as_int(require(js, "sequence stop", "team"), "stop team");
    stop.rep_point = as_int(require(js, "sequence stop", "rep_point"), "stop rep_point");
    plan.sequence.stops.push_back(stop);
  }
  plan.slots.slot_count = as_int(require(root, "plan", "slot_count"), "slot_count");
  plan.slots.slot_of_team =
      as_int_array(require(root, "plan", "slot_of_team"), "slot_of_team");
  plan.config_starts = as_int_array(require(root, "plan", "config_starts"), "config_starts");
  plan.round_one_starts =
      as_int_array(require(root, "plan", "round_one_starts"), "round_one_starts");
  for (const njson& jl : as_array(require(root, "plan", "pre_legs"), "pre_legs")) {
    expect_keys(jl, "placement leg", {"robot", "from", "to", "cost"});
    PreLeg leg;
    leg.robot = as_int(require(jl, "placement leg", "robot"), "leg robot");
    leg.from = as_int(require(jl, "placement leg", "from"), "leg from");
    leg.to = as_int(require(jl, "placement leg", "to"), "leg to");
    leg.cost = as_number(require(jl, "placement leg", "cost"), "leg cost");
    plan.pre_legs.push_back(leg);
  }
  plan.first_suffix_round =
      as_int(require(root, "plan", "first_suffix_round"), "first_suffix_round");
  plan.last_suffix_round =
      as_int(require(root, "plan", "last_suffix_round"), "last_suffix_round");
  for (const njson& jr : as_array(require(root, "plan", "prefix_rounds"), "prefix_rounds")) {
    plan.prefix_rounds.push_back(round_from_json(jr));
  }
  for (const njson& jr : as_array(require(root, "plan", "suffix_rounds"), "suffix_rounds")) {
    plan.suffix_rounds.push_back(round_from_json(jr));
  }

  // Rebuild the derived bookkeeping: first visits, slot occupancy, costs.
  const std::size_t team_count = plan.slots.slot_of_team.size();
  plan.sequence.first_visit_index.assign(team_count, plan.sequence.stops.size());
  for (std::size_t i = 0; i < plan.sequence.stops.size(); ++i) {
    const int t = plan.sequence.stops[i].team;
    if (t < 1 || static_cast<std::size_t>(t) > team_count) {
      throw ConfigError("sequence names team " + std::to_string(t) +
                        " outside the slot table");
    }
    if (plan.sequence.first_visit_index[static_cast<std::size_t>(t - 1)] ==
        plan.sequence.stops.size()) {
      plan.sequence.first_visit_index[static_cast<std::size_t>(t - 1)] = i;
      plan.sequence.first_visit_order.push_back(t);
    }
  }
  plan.slots.teams_in_slot.assign(
      plan.slots.slot_count > 0 ? static_cast<std::size_t>(plan.slots.slot_count) : 0, {});
  for (int t : plan.sequence.first_visit_order) {
    const int s = plan.slots.slot_of_team[static_cast<std::size_t>(t - 1)];
    if (s < 1 || s > plan.slots.slot_count) {
      throw ConfigError("team " + std::to_string(t) + " has slot " + std::to_string(s) +
                        " outside the reserved range");
    }
    plan.slots.teams_in_slot[static_cast<std::size_t>(s - 1)].push_back(t);
  }
  for (int s = 1; s <= plan.slots.slot_count; ++s) {
    if (!plan.slots.teams_in_slot[static_cast<std::size_t>(s - 1)].empty()) {
      plan.slots.surviving_slots.push_back(s);
    }
  }
  for (const PreLeg& leg : plan.pre_legs) plan.prefix_cost += leg.cost;
  for (const RoundPlan& r : plan.prefix_rounds) plan.prefix_cost += r.cost;
  for (const RoundPlan& r : plan.suffix_rounds) plan.suffix_cost += r.cost;
  return plan;
}

std::string plan_to_report(const MotionPlan& plan) {
  std::ostringstream os;
  os << "communication walk:";
  for (const SequenceStop& stop : plan.sequence.stops) os << " " << stop.team;
  os << "\n";
  os << "representative points:";
  for (int t : plan.sequence.first_visit_order) {
    os << " team " << t << " -> "
       << plan.sequence.stops[plan.sequence.first_visit_index[static_cast<std::size_t>(t - 1)]]
              .rep_point;
    os << (t == plan.sequence.first_visit_order.back() ? "" : ",");
  }
  os << "\n";
  os << "slots reserved: " << plan.slots.slot_count << "\n";
  os << "slot of team:";
  for (std::size_t t = 0; t < plan.slots.slot_of_team.size(); ++t) {
    os << " " << (t + 1) << "->" << plan.slots.slot_of_team[t];
  }
  os << "\n";
  os << "surviving slots:";
  for (int s : plan.slots.surviving_slots) os << " " << s;
  os << "\n";
  if (!plan.pre_legs.empty()) {
    os << "placement legs:\n";
    for (const PreLeg& leg : plan.pre_legs) {
      os << "  robot " << leg.robot << ": " << leg.from << " -> " << leg.to << "  cost "
         << fmt9(leg.cost) << "\n";
    }
  }
  if (plan.prefix_rounds.empty()) {
    os << "rounds " << plan.first_suffix_round << ".." << plan.last_suffix_round
       << " repeat forever\n";
  } else {
    os << "rounds 1.." << (plan.first_suffix_round - 1) << " run once, rounds "
       << plan.first_suffix_round << ".." << plan.last_suffix_round << " repeat forever\n";
  }
  const auto emit_round = [&](const RoundPlan& round) {
    os << "round " << round.index << "  cost " << fmt9(round.cost) << "\n";
    for (const RoundColumn& column : round.columns) {
      os << "  column slot " << column.slot << "  length " << column.length << "\n";
      for (int team : column.teams) {
        os << "    team " << team << " meets at " << column.meeting_points.at(team)
           << "  cost " << fmt9(column.team_paths.at(team).cost) << "\n";
      }
      for (const auto& [robot, seg] : column.segments) {
        os << "    robot " << robot << " ";
        if (seg.team == 0) {
          os << "[idle]  ";
        } else {
          os << "[team " << seg.team << "]";
        }
        os << ":";
        for (LocationId q : seg.states) os << " " << q;
        os << "\n";
      }
    }
  };
  for (const RoundPlan& round : plan.prefix_rounds) emit_round(round);
  for (const RoundPlan& round : plan.suffix_rounds) emit_round(round);
  os << "prefix cost " << fmt9(plan.prefix_cost) << "\n";
  os << "cycle cost " << fmt9(plan.suffix_cost) << "\n";
  return os.str();
}

std::string plan_to_csv(const MotionPlan& plan) {
  std::ostringstream os;
  os << "round,slot,robot,team,step,state\n";
  const auto emit_round = [&](const RoundPlan& round) {
    for (const RoundColumn& column : round.columns) {
      for (const auto& [robot, seg] : column.segments) {
        for (std::size_t k = 0; k < seg.states.size(); ++k) {
          os << round.index << "," << column.slot << "," << robot << "," << seg.team << ","
             << k << "," << seg.states[k] << "\n";
        }
      }
    }
  };
  for (const RoundPlan& round : plan.prefix_rounds) emit_round(round);
  for (const RoundPlan& round : plan.suffix_rounds) emit_round(round);
  return os.str();
}

std::string trace_to_report(const ExecutionTrace& trace) {
  std::ostringstream os;
  os << "travels:\n";
  for (const TravelRecord& t : trace.travels) {
    os << "  robot " << t.robot << ": " << t.from << " -> " << t.to << "  depart "
       << fmt9(t.depart) << "  arrive " << fmt9(t.arrive) << "\n";
  }
  os << "meetings:\n";
  for (const MeetingRecord& m : trace.meetings) {
    os << "  team " << m.team << " round " << m.round << " slot " << m.slot << " at "
       << m.location << "  time " << fmt9(m.time) << "\n";
    for (std::size_t k = 0; k < m.members.size(); ++k) {
      os << "    robot " << m.members[k] << "  arrival " << fmt9(m.arrivals[k]) << "  wait "
         << fmt9(m.waits[k]);
      if (!m.values_before.empty()) {
        os << "  value " << fmt9(m.values_before[k]) << " -> " << fmt9(m.values_after[k]);
      }
      os << "\n";
    }
  }
  os << "summary:\n";
  os << "  completed block passes: " << trace.suffix_cycles << "\n";
  os << "  makespan " << fmt9(trace.makespan) << "\n";
  os << "  total distance " << fmt9(trace.total_distance) << "\n";
  for (std::size_t r = 0; r < trace.robot_distance.size(); ++r) {
    os << "  robot " << (r + 1) << " distance " << fmt9(trace.robot_distance[r]) << "\n";
  }
  if (!trace.initial_values.empty()) {
    os << "consensus:\n";
    os << "  initial:";
    for (double v : trace.initial_values) os << " " << fmt9(v);
    os << "\n  final:";
    for (double v : trace.final_values) os << " " << fmt9(v);
    os << "\n  spread:";
    for (double v : trace.spread_series) os << " " << fmt9(v);
    os << "\n";
  }
  return os.str();
}

std::string travels_to_csv(const ExecutionTrace& trace) {
  std::ostringstream os;
  os << "robot,from,to,depart,arrive\n";
  for (const TravelRecord& t : trace.travels) {
    os << t.robot << "," << t.from << "," << t.to << "," << fmt9(t.depart) << ","
       << fmt9(t.arrive) << "\n";
  }
  return os.str();
}

std::string meetings_to_csv(const ExecutionTrace& trace) {
  std::ostringstream os;
  os << "team,round,slot,location,time\n";
  for (const MeetingRecord& m : trace.meetings) {
    os << m.team << "," << m.round << "," << m.slot << "," << m.location << ","
       << fmt9(m.time) << "\n";
  }
  return os.str();
}

std::string waits_to_csv(const ExecutionTrace& trace) {
  std::ostringstream os;
  os << "team,round,slot,location,time,robot,arrival,wait\n";
  for (const MeetingRecord& m : trace.meetings) {
    for (std::size_t k = 0; k < m.members.size(); ++k) {
      os << m.team << "," << m.round << "," << m.slot << "," << m.location << ","
         << fmt9(m.time) << "," << m.members[k] << "," << fmt9(m.arrivals[k]) << ","
         << fmt9(m.waits[k]) << "\n";
    }
  }
  return os.str();
}

std::string consensus_to_csv(const ExecutionTrace& trace) {
  std::ostringstream os;
  os << "meeting,team,round,slot,time,spread_after\n";
  for (std::size_t k = 0; k < trace.meetings.size(); ++k) {
    const MeetingRecord& m = trace.meetings[k];
    if (k < trace.spread_series.size()) {
      os << (k + 1) << "," << m.team << "," << m.round << "," << m.slot << ","
         << fmt9(m.time) << "," << fmt9(trace.spread_series[k]) << "\n";
    }
  }
  return os.str();
}

}  // namespace imc
