#ifndef IMC_COORDINATION_HPP
#define IMC_COORDINATION_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "imc/planner.hpp"

namespace imc {

// One stop of the closed walk over the team graph. The representative
// point of a team is its smallest communication point id.
struct SequenceStop {
  int team = 0;
  LocationId rep_point = 0;
};

// Closed depth-first walk over the team graph, starting and ending at
// team 1, children explored in ascending team order. Every team appears at
// least once; consecutive stops are adjacent teams.
struct NodeSequence {
  std::vector<SequenceStop> stops;
  std::vector<int> first_visit_order;          // teams by first appearance
  std::vector<std::size_t> first_visit_index;  // per team (index team-1): position in stops
};

NodeSequence build_sequence(const TeamGraph& team_graph,
                            const std::vector<std::vector<LocationId>>& comm_points);
NodeSequence build_sequence(const ValidatedNetwork& net);

// Greedy proper coloring of the team graph in first-visit order: each team
// takes the smallest slot unused by its already-colored neighbors. The
// schedule reserves max-degree + 1 slots; slots that end up hosting no team
// are discarded from every round.
struct SlotAssignment {
  int slot_count = 0;                           // max degree + 1
  std::vector<int> slot_of_team;                // per team (index team-1), 1-based slots
  std::vector<int> surviving_slots;             // ascending, only slots hosting teams
  std::vector<std::vector<int>> teams_in_slot;  // per slot (index slot-1), first-visit order
};

SlotAssignment assign_slots(const TeamGraph& team_graph, const NodeSequence& sequence);

// One robot's discrete path through one column of a round. `team` is 0
// when the robot is not scheduled in the column and simply holds position.
// Segments inside a column share a length (shorter joint paths are padded
// by repeating their final state).
struct ColumnSegment {
  int team = 0;
  std::vector<LocationId> states;
  double travel_len = 0.0;  // summed go-to weights; padding adds nothing
};

// One column of a round: every team of one slot executes its joint path to
// a communication point while the remaining robots hold position.
struct RoundColumn {
  int slot = 0;
  std::vector<int> teams;                     // first-visit order
  std::map<int, ColumnSegment> segments;      // robot id -> segment, all robots present
  std::map<int, TeamPrefix> team_paths;       // team -> unpadded joint path of this column
  std::map<int, LocationId> meeting_points;   // team -> where it meets
  std::size_t length = 0;                     // states per segment, >= 2
};

// One full round: surviving slots in ascending order. Robot positions are
// threaded through the columns, so each robot's first state in a column
// equals its last state in the previous one.
struct RoundPlan {
  int index = 0;                    // 1-based round number
  std::vector<LocationId> start;    // positions entering the round, index robot-1
  std::vector<LocationId> finish;   // positions leaving the round
  std::vector<RoundColumn> columns;
  double cost = 0.0;                // summed joint travel weight of the round
};

// A robot's bridge leg from its configured start to the placement the
// round construction assumes (geodesic travel, executed before round 1).
struct PreLeg {
  int robot = 0;
  LocationId from = 0;
  LocationId to = 0;
  double cost = 0.0;
};

// Complete motion plan: optional placement legs, a finite prefix of
// rounds, and a block of rounds that repeats forever. The repeating block
// is closed: its final positions equal its starting positions.
struct MotionPlan {
  NodeSequence sequence;
  SlotAssignment slots;
  std::vector<LocationId> config_starts;      // index robot-1
  std::vector<LocationId> round_one_starts;   // placement assumed by round 1
  std::vector<PreLeg> pre_legs;               // empty when config starts already comply
  std::vector<RoundPlan> prefix_rounds;       // rounds 1 .. first_suffix_round-1
  std::vector<RoundPlan> suffix_rounds;       // rounds first_suffix_round .. last_suffix_round
  int first_suffix_round = 1;
  int last_suffix_round = 1;
  double prefix_cost = 0.0;  // pre-legs plus prefix rounds
  double suffix_cost = 0.0;  // one pass over the repeating block

  int robot_count() const { return static_cast<int>(config_starts.size()); }
  int suffix_length() const { return static_cast<int>(suffix_rounds.size()); }
};

// Builds and caches the per-team search structures, constructs rounds, and
// detects the repeating block. Deterministic: identical inputs produce an
// identical plan.
class PlanSession {
 public:
  explicit PlanSession(const ValidatedNetwork& net);

  const ValidatedNetwork& net() const { return *net_; }
  const NodeSequence& sequence() const { return sequence_; }
  const SlotAssignment& slots() const { return slots_; }
  const Wts& wts(int robot) const;
  const Wpts& wpts(int team) const;
  const Nba& nba(int team) const;
  const Pba& pba(int team) const;

  // Placement the round construction assumes: each robot starts at the
  // representative point of the first of its teams the walk visits.
  const std::vector<LocationId>& required_starts() const { return required_starts_; }

  // Cached shortest joint path to a meeting for one team from one start.
  const TeamPrefix& prefix_for(int team, const JointState& start);

  // One round from explicit robot positions: columns ascend over surviving
  // slots, teams inside a column run in first-visit order, and each team
  // plans from its members' current positions.
  RoundPlan build_round(int index, const std::vector<LocationId>& start_positions);

  // Full plan: placement legs if needed, then rounds until the entering
  // position tuple recurs. Throws DomainError("HorizonExceeded") when no
  // recurrence appears within max_rounds.
  MotionPlan plan(const std::vector<LocationId>& config_starts, int max_rounds = 512);

 private:
  const ValidatedNetwork* net_;
  NodeSequence sequence_;
  SlotAssignment slots_;
  std::vector<LocationId> required_starts_;
  std::vector<std::unique_ptr<Wts>> wts_;    // index robot-1
  std::vector<std::unique_ptr<Wpts>> wpts_;  // index team-1
  std::vector<std::unique_ptr<Nba>> nba_;    // index team-1
  std::vector<std::unique_ptr<Pba>> pba_;    // index team-1
  std::map<std::pair<int, JointState>, TeamPrefix> prefix_cache_;
};

struct AdmissibilityReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Structural soundness of a motion plan:
//  (a) every segment state belongs to the robot's state set, and idle
//      segments hold a single position;
//  (b) each column schedules every robot at most once, scheduled teams
//      belong to the column's slot, and every member of a scheduled team
//      carries that team's segment;
//  (c) segments chain (each robot's first state in a column equals its
//      last state in the previous one, across rounds and placement legs)
//      and the repeating block is closed.
AdmissibilityReport check_admissible(const ValidatedNetwork& net, const MotionPlan& plan);

}  // namespace imc

#endif
