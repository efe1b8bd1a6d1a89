#ifndef IMC_TRANSITION_SYSTEM_HPP
#define IMC_TRANSITION_SYSTEM_HPP

#include <functional>
#include <string>
#include <vector>

#include "imc/network.hpp"

namespace imc {

// Atomic proposition "robot r is at location l"; a label is the sorted set
// of propositions true in a state.
struct Prop {
  int robot = 0;
  LocationId location = 0;
  auto operator<=>(const Prop&) const = default;
};
using Label = std::vector<Prop>;  // sorted, unique

// Per-robot weighted transition system. States are the communication points
// of the robot's teams (optionally widened to all communication points).
// Every state has a zero-weight wait self-loop and a go-to transition to
// every other state, weighted by the geodesic length in the mobility graph.
class Wts {
 public:
  Wts() = default;
  Wts(const ValidatedNetwork& net, int robot, LocationId initial);

  int robot() const { return robot_; }
  LocationId initial() const { return initial_; }
  const std::vector<LocationId>& states() const { return states_; }
  bool has_state(LocationId q) const;
  bool has_transition(LocationId a, LocationId b) const;  // wait or go-to
  double weight(LocationId a, LocationId b) const;        // 0 for wait
  Label label(LocationId q) const { return {{robot_, q}}; }
  std::string dump() const;  // readable edge list

 private:
  const ValidatedNetwork* net_ = nullptr;
  int robot_ = 0;
  LocationId initial_ = 0;
  std::vector<LocationId> states_;  // sorted
};

// Builds the robot's WTS; throws DomainError("StartNotInStateSet") when the
// initial location is outside the state set.
Wts build_wts(const ValidatedNetwork& net, int robot, LocationId initial);

// Joint state of a team, aligned with the team's sorted member list.
using JointState = std::vector<LocationId>;

struct FinitePath {
  std::vector<JointState> states;

  bool empty() const { return states.empty(); }
  std::size_t size() const { return states.size(); }
};

struct RobotPath {
  int robot = 0;
  std::vector<LocationId> states;
};

// Weighted product transition system of one team, generated lazily: joint
// successors are enumerated on demand and the joint state space is never
// materialized. Transition weight is the sum of member weights; the label
// of a joint state is the union of member labels.
class Wpts {
 public:
  Wpts() = default;
  Wpts(int team, std::vector<const Wts*> factors);

  int team() const { return team_; }
  const std::vector<int>& members() const { return members_; }  // sorted robot ids
  const std::vector<const Wts*>& factors() const { return factors_; }
  int member_index(int robot) const;  // position in members(), -1 if absent

  bool has_state(const JointState& q) const;
  double weight(const JointState& a, const JointState& b) const;
  Label label(const JointState& q) const;

  // Visits joint successors in lexicographic order (each member waits or
  // moves to any of its states). Successor count is the product of member
  // state-set sizes.
  void for_each_successor(const JointState& q,
                          const std::function<void(const JointState&, double)>& fn) const;

  JointState initial() const;

 private:
  int team_ = 0;
  std::vector<int> members_;
  std::vector<const Wts*> factors_;
};

// Projection of a joint path onto one member; throws DomainError
// ("RobotNotInTeam") for non-members.
RobotPath project(const Wpts& wpts, const FinitePath& path, int robot);

// Recomposition of a joint path from aligned member paths (inverse of
// project); all paths must share a length.
FinitePath compose(const Wpts& wpts, const std::vector<RobotPath>& paths);

// Sum of transition weights; throws DomainError("InadmissiblePath") when a
// state is outside the system or the path is empty.
double path_cost(const Wts& wts, const RobotPath& path);
double path_cost(const Wpts& wpts, const FinitePath& path);

std::vector<Label> trace_of(const Wpts& wpts, const FinitePath& path);

// Infinite path in prefix-cycle form; cost reported per component.
struct Lasso {
  FinitePath prefix;  // ends at the cycle's first state
  FinitePath cycle;   // cycle.front() == cycle.back()
};

struct LassoCost {
  double prefix = 0.0;
  double cycle = 0.0;
};

LassoCost path_cost(const Wpts& wpts, const Lasso& lasso);

}  // namespace imc

#endif
