#ifndef IMC_PLANNER_HPP
#define IMC_PLANNER_HPP

#include <vector>

#include "imc/buchi.hpp"
#include "imc/transition_system.hpp"

namespace imc {

// Shortest joint path for one team from a joint start to a state where the
// whole team sits at a common communication point. The path lives in the
// team's joint state space; `meeting_point` is the witnessing location of
// the final state and `cost` the summed travel weight along the path.
struct TeamPrefix {
  int team = 0;
  FinitePath path;           // joint states, path.states.front() == start
  LocationId meeting_point = 0;
  double cost = 0.0;
};

// Minimum-cost joint cycle that leaves a meeting state and returns to it
// while meeting again on re-entry. `path.states` is closed: the first and
// last entries equal the anchor state.
struct TeamCycle {
  int team = 0;
  FinitePath path;
  double cost = 0.0;
};

// Options for the product search.
struct PlanOptions {
  // When false, the suffix cycle must begin with a genuine move (at least
  // one robot leaves its state) instead of the zero-cost joint wait.
  bool allow_wait_cycle = true;
};

// Deterministic shortest-path search over the lazily generated product of
// the team's joint transition system with its meeting automaton. Nodes are
// settled in (cost, state-key) order and equal-cost relaxations keep the
// smaller predecessor key, so results are reproducible across runs and
// platforms. Throws DomainError("NoAcceptingReachable") when no meeting
// state can be reached from the start.
TeamPrefix plan_team_prefix(const Pba& pba, const JointState& start);

// Minimum-cost accepting cycle anchored at a meeting state previously
// returned by plan_team_prefix. With `allow_wait_cycle` the team simply
// holds its position (cost 0). Otherwise the search finds the cheapest
// round trip that starts with a genuine move. Throws
// DomainError("NotAMeetingState") when the anchor does not satisfy the
// team's meet predicate and DomainError("NoCycleFound") when no qualifying
// cycle exists.
TeamCycle plan_team_suffix(const Pba& pba, const JointState& anchor,
                           const PlanOptions& options = {});

// The common communication point occupied by every team member in `q`.
// Throws DomainError("NotAMeetingState") if there is none.
LocationId meeting_point_of(const Pba& pba, const JointState& q);

}  // namespace imc

#endif
