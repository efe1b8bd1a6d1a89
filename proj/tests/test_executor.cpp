#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>
#include <vector>

#include "golden_expected.hpp"
#include "helpers.hpp"
#include "imc/executor.hpp"
#include "imc/plan_io.hpp"

using namespace imc;

namespace {

MotionPlan golden_plan() {
  PlanSession session(th::golden_net());
  return session.plan(std::vector<LocationId>(golden::config_starts.begin(),
                                              golden::config_starts.end()));
}

// wait of (team, robot) in one round, keyed for comparison against the oracle
std::map<std::tuple<int, int, int>, double> waits_by_round(const ExecutionTrace& trace) {
  std::map<std::tuple<int, int, int>, double> out;
  for (const MeetingRecord& m : trace.meetings) {
    for (std::size_t k = 0; k < m.members.size(); ++k) {
      out[{m.round, m.team, m.members[k]}] = m.waits[k];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("asynchronous execution of the five-team scenario") {
  const auto& net = th::golden_net();
  MotionPlan plan = golden_plan();
  SimOptions opt;
  opt.suffix_cycles = 4;
  ExecutionTrace trace = simulate(net, plan, opt);

  SUBCASE("meeting inventory") {
    CHECK(trace.meetings.size() == 25);  // 5 teams x (1 prefix + 4 suffix rounds)
    CHECK(trace.suffix_cycles == 4);
    // sorted by fire time, ties by round/slot/team
    for (std::size_t k = 1; k < trace.meetings.size(); ++k) {
      const auto& a = trace.meetings[k - 1];
      const auto& b = trace.meetings[k];
      CHECK(std::make_tuple(a.time, a.round, a.slot, a.team) <=
            std::make_tuple(b.time, b.round, b.slot, b.team));
    }
  }

  SUBCASE("a co-located team fires immediately") {
    const MeetingRecord& first = trace.meetings.front();
    CHECK(first.team == 1);
    CHECK(first.round == 1);
    CHECK(first.time == 0.0);
    CHECK(first.location == 1);
    for (double w : first.waits) CHECK(w == 0.0);
  }

  SUBCASE("waits match the independent timing oracle") {
    auto waits = waits_by_round(trace);
    auto check_round_waits = [&](int round,
                                 const std::vector<golden::WaitExpectation>& expected) {
      for (const auto& [team, robot, wait] : expected) {
        auto it = waits.find({round, team, robot});
        REQUIRE(it != waits.end());
        CHECK(it->second == doctest::Approx(wait).epsilon(1e-9));
      }
    };
    check_round_waits(1, golden::round1_waits);
    check_round_waits(2, golden::round2_waits);
    check_round_waits(3, golden::steady_waits);
    check_round_waits(4, golden::steady_waits);
    check_round_waits(5, golden::steady_waits);
  }

  SUBCASE("meeting locations and slots") {
    for (const MeetingRecord& m : trace.meetings) {
      const int expected_meet =
          m.round == 1 ? golden::round1_meets[static_cast<std::size_t>(m.team - 1)]
                       : golden::steady_meets[static_cast<std::size_t>(m.team - 1)];
      CHECK(m.location == expected_meet);
      CHECK(m.slot == golden::slot_of_team[static_cast<std::size_t>(m.team - 1)]);
    }
  }

  SUBCASE("the odometer equals the planned cost") {
    const double expected = golden::prefix_cost + 4 * golden::suffix_cost;
    CHECK(trace.total_distance == doctest::Approx(expected).epsilon(1e-9));
    double sum = 0.0;
    for (double d : trace.robot_distance) sum += d;
    CHECK(sum == doctest::Approx(trace.total_distance).epsilon(1e-12));
  }

  SUBCASE("travel legs honour the robot speeds") {
    // robot 3 (speed 0.7) opens round 1 by moving from 5 to team 3's point 9
    bool found = false;
    for (const TravelRecord& t : trace.travels) {
      if (t.robot == 3 && t.from == 5 && t.to == 9 && t.depart == 0.0) {
        found = true;
        const double expect = net.geodesics().length(5, 9) / 0.7;
        CHECK(t.arrive == doctest::Approx(expect).epsilon(1e-12));
      }
    }
    CHECK(found);
    // travels are sorted by departure time, ties by robot
    for (std::size_t k = 1; k < trace.travels.size(); ++k) {
      const auto& a = trace.travels[k - 1];
      const auto& b = trace.travels[k];
      CHECK(std::make_tuple(a.depart, a.robot) <= std::make_tuple(b.depart, b.robot));
    }
  }

  SUBCASE("makespan is the last meeting") {
    double last = 0.0;
    for (const MeetingRecord& m : trace.meetings) last = std::max(last, m.time);
    CHECK(trace.makespan == doctest::Approx(last).epsilon(1e-12));
  }

  SUBCASE("steady rounds repeat with a fixed period") {
    std::map<int, std::vector<double>> fire_times;  // team -> times, round order
    for (const MeetingRecord& m : trace.meetings) {
      fire_times[m.team].push_back(m.time);
    }
    for (const auto& [team, times] : fire_times) {
      REQUIRE(times.size() == 5);
      // rounds 3,4,5 are periodic copies
      CHECK(times[3] - times[2] == doctest::Approx(golden::steady_round_period).epsilon(1e-9));
      CHECK(times[4] - times[3] == doctest::Approx(golden::steady_round_period).epsilon(1e-9));
    }
  }
}

TEST_CASE("execution is deterministic") {
  const auto& net = th::golden_net();
  MotionPlan plan = golden_plan();
  SimOptions opt;
  opt.suffix_cycles = 3;
  opt.consensus = true;
  opt.seed = 99;
  ExecutionTrace a = simulate(net, plan, opt);
  ExecutionTrace b = simulate(net, plan, opt);
  CHECK(waits_to_csv(a) == waits_to_csv(b));
  CHECK(travels_to_csv(a) == travels_to_csv(b));
  CHECK(meetings_to_csv(a) == meetings_to_csv(b));
  CHECK(consensus_to_csv(a) == consensus_to_csv(b));
  CHECK(a.final_values == b.final_values);
}

TEST_CASE("placement legs execute before round one") {
  const auto& net = th::golden_net();
  PlanSession session(net);
  MotionPlan plan = session.plan({5, 1, 5, 9, 13});
  REQUIRE(plan.pre_legs.size() == 1);

  ExecutionTrace trace = simulate(net, plan, {.suffix_cycles = 1, .consensus = false,
                                              .seed = 1, .initial_values = {}});
  // robot 1 must first bridge 5 -> 1, so team 1 cannot fire at t = 0
  const TravelRecord& first = trace.travels.front();
  CHECK(first.robot == 1);
  CHECK(first.from == 5);
  CHECK(first.to == 1);
  CHECK(first.depart == 0.0);
  const double bridge = net.geodesics().length(5, 1) / 1.0;
  CHECK(first.arrive == doctest::Approx(bridge).epsilon(1e-12));

  for (const MeetingRecord& m : trace.meetings) {
    if (m.team == 1 && m.round == 1) CHECK(m.time == doctest::Approx(bridge).epsilon(1e-12));
  }
  const double expected = plan.prefix_cost + plan.suffix_cost;
  CHECK(trace.total_distance == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("consensus averaging") {
  const auto& net = th::golden_net();
  MotionPlan plan = golden_plan();

  SUBCASE("explicit initial values average at every meeting") {
    SimOptions opt;
    opt.suffix_cycles = 50;
    opt.consensus = true;
    opt.initial_values = {1.0, 2.0, 3.0, 4.0, 5.0};
    ExecutionTrace trace = simulate(net, plan, opt);

    REQUIRE(trace.initial_values.size() == 5);
    REQUIRE(trace.spread_series.size() == trace.meetings.size());
    for (const MeetingRecord& m : trace.meetings) {
      REQUIRE(m.values_before.size() == m.members.size());
      double mean = 0.0;
      for (double v : m.values_before) mean += v;
      mean /= static_cast<double>(m.values_before.size());
      for (double v : m.values_after) CHECK(v == doctest::Approx(mean).epsilon(1e-12));
    }
    // spread never increases and eventually collapses
    double prev = trace.spread_series.front();
    for (double s : trace.spread_series) {
      CHECK(s <= prev + 1e-15);
      prev = s;
    }
    ConsensusReport rep = consensus_report(trace, 1e-9);
    CHECK(rep.converged);
    CHECK(rep.final_spread < 1e-9);
    CHECK(rep.meetings_until_converged > 0);

    // the average is conserved: final values agree with the initial mean
    const double mean0 = (1.0 + 2.0 + 3.0 + 4.0 + 5.0) / 5.0;
    for (double v : trace.final_values) CHECK(v == doctest::Approx(mean0).epsilon(1e-6));
  }

  SUBCASE("seeded values are deterministic and in range") {
    SimOptions opt;
    opt.suffix_cycles = 2;
    opt.consensus = true;
    opt.seed = 1234;
    ExecutionTrace a = simulate(net, plan, opt);
    ExecutionTrace b = simulate(net, plan, opt);
    CHECK(a.initial_values == b.initial_values);
    for (double v : a.initial_values) {
      CHECK(v >= 0.0);
      CHECK(v <= 100.0);
    }
    opt.seed = 1235;
    ExecutionTrace c = simulate(net, plan, opt);
    CHECK(a.initial_values != c.initial_values);
  }

  SUBCASE("wrong-sized value tuples are rejected") {
    SimOptions opt;
    opt.consensus = true;
    opt.initial_values = {1.0, 2.0};
    CHECK_THROWS_AS(simulate(net, plan, opt), DomainError);
  }
}

TEST_CASE("connectivity verification") {
  const auto& net = th::golden_net();
  MotionPlan plan = golden_plan();
  SimOptions opt;
  opt.suffix_cycles = 6;
  ExecutionTrace trace = simulate(net, plan, opt);

  SUBCASE("every team communicates in every block pass") {
    ConnectivityReport rep = verify_connectivity(plan, trace);
    CHECK(rep.ok);
    CHECK(rep.cycles_checked == 6);
    CHECK(rep.violations.empty());
    for (int team = 1; team <= 5; ++team) {
      REQUIRE(rep.meetings_per_cycle.count(team) == 1);
      const auto& counts = rep.meetings_per_cycle.at(team);
      REQUIRE(counts.size() == 6);
      for (int c : counts) CHECK(c == 1);
    }
  }

  SUBCASE("a silenced team is reported") {
    ExecutionTrace broken = trace;
    broken.meetings.erase(
        std::remove_if(broken.meetings.begin(), broken.meetings.end(),
                       [](const MeetingRecord& m) { return m.team == 2 && m.round == 4; }),
        broken.meetings.end());
    ConnectivityReport rep = verify_connectivity(plan, broken);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.violations.empty());
  }

  SUBCASE("zero requested cycles verify vacuously") {
    SimOptions none;
    none.suffix_cycles = 0;
    ExecutionTrace t0 = simulate(net, plan, none);
    CHECK(t0.meetings.size() == 5);  // the prefix round still runs
    ConnectivityReport rep = verify_connectivity(plan, t0);
    CHECK(rep.ok);
    CHECK(rep.cycles_checked == 0);
  }
}

TEST_CASE("execution of a shuttling chain") {
  // path graph 1-2-3; teams {1,2}@{1} and {2,3}@{3}; robot 2 shuttles
  TeamStructure t;
  t.members = {{1, 2}, {2, 3}};
  t.comm_points = {{1}, {3}};
  t.robot_start = {1, 1, 3};
  t.robot_speed = {1.0, 2.0, 1.0};
  ValidatedNetwork net = th::make_net(th::line_graph(3), t);

  PlanSession session(net);
  MotionPlan plan = session.plan({1, 1, 3});
  SimOptions opt;
  opt.suffix_cycles = 3;
  ExecutionTrace trace = simulate(net, plan, opt);

  // robot 2 (speed 2) covers distance 2 in time 1 in each direction
  std::vector<double> team1_times, team2_times;
  for (const MeetingRecord& m : trace.meetings) {
    (m.team == 1 ? team1_times : team2_times).push_back(m.time);
  }
  REQUIRE(team1_times.size() == 4);  // prefix + 3 cycles
  REQUIRE(team2_times.size() == 4);
  CHECK(team1_times[0] == 0.0);
  CHECK(team2_times[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t k = 1; k < 4; ++k) {
    CHECK(team1_times[k] == doctest::Approx(team2_times[k - 1] + 1.0).epsilon(1e-12));
    CHECK(team2_times[k] == doctest::Approx(team1_times[k] + 1.0).epsilon(1e-12));
  }
  CHECK(trace.total_distance == doctest::Approx(plan.prefix_cost + 3 * plan.suffix_cost)
                                     .epsilon(1e-9));
  CHECK(verify_connectivity(plan, trace).ok);
}
