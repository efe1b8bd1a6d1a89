#ifndef IMC_EXECUTOR_HPP
#define IMC_EXECUTOR_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "imc/coordination.hpp"

namespace imc {

struct SimOptions {
  int suffix_cycles = 3;   // complete passes over the repeating block
  bool consensus = false;  // run the averaging protocol at meetings
  std::uint64_t seed = 1;  // seeds initial values when none are given
  std::vector<double> initial_values;  // optional, one per robot
};

struct TravelRecord {
  int robot = 0;
  LocationId from = 0;
  LocationId to = 0;
  double depart = 0.0;
  double arrive = 0.0;
};

struct MeetingRecord {
  int team = 0;
  int round = 0;  // absolute round number; replays of the block keep counting
  int slot = 0;
  LocationId location = 0;
  double time = 0.0;             // when the last member arrives
  std::vector<int> members;      // sorted robot ids
  std::vector<double> arrivals;  // aligned with members
  std::vector<double> waits;     // time - arrival, aligned with members
  std::vector<double> values_before;  // consensus values (empty when off)
  std::vector<double> values_after;
};

struct ExecutionTrace {
  int suffix_cycles = 0;
  std::vector<TravelRecord> travels;    // ordered by departure time, then robot
  std::vector<MeetingRecord> meetings;  // ordered by time, then round, slot, team
  double makespan = 0.0;
  double total_distance = 0.0;
  std::vector<double> robot_distance;  // index robot-1
  std::vector<double> initial_values;  // consensus (empty when off)
  std::vector<double> final_values;
  std::vector<double> spread_series;  // global max-min after each meeting
};

// Asynchronous execution of a motion plan. Robots move at their own speeds
// along their projected paths (travel time = geodesic length / speed) and
// synchronize only at the communication point that ends each of their
// scheduled columns: every member waits there until the whole team has
// arrived, the meeting fires at the last arrival, and the members depart
// together. Robots idling in a column are unconstrained. Placement legs
// run first, then the prefix rounds once, then `suffix_cycles` passes over
// the repeating block. Event processing is deterministic, so two runs of
// the same plan produce byte-identical traces.
ExecutionTrace simulate(const ValidatedNetwork& net, const MotionPlan& plan,
                        const SimOptions& options = {});

struct ConnectivityReport {
  bool ok = true;
  int cycles_checked = 0;
  std::map<int, std::vector<int>> meetings_per_cycle;  // team -> per-cycle counts
  std::vector<std::string> violations;
};

// Every team must communicate at least once during every completed pass
// over the repeating block. Prefix-round meetings are not counted.
ConnectivityReport verify_connectivity(const MotionPlan& plan, const ExecutionTrace& trace);

struct ConsensusReport {
  bool converged = false;
  double final_spread = 0.0;
  int meetings_until_converged = -1;  // -1 when the tolerance is never reached
  double tolerance = 0.0;
};

ConsensusReport consensus_report(const ExecutionTrace& trace, double tolerance = 1e-9);

}  // namespace imc

#endif
