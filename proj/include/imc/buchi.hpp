#ifndef IMC_BUCHI_HPP
#define IMC_BUCHI_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "imc/transition_system.hpp"

namespace imc {

// True when every team member sits at one common communication point.
struct MeetPredicate {
  int team = 0;
  std::vector<int> members;            // sorted
  std::vector<LocationId> comm_points;  // sorted

  bool eval(const Label& label) const;
  // the witnessing location, if any
  std::optional<LocationId> meeting_location(const Label& label) const;
};

// Nondeterministic Büchi automaton for "the team meets infinitely often".
// Two states: 0 (initial) and 1 (accepting). Guards are predicates over
// labels, never an enumeration of the alphabet. From either state the
// automaton can always fall back to state 0, and can enter or stay in
// state 1 exactly when the consumed label satisfies the meet predicate,
// so accepting runs exist iff meets recur forever.
class Nba {
 public:
  enum class Guard { True, Meet };
  struct Edge {
    int from = 0;
    Guard guard = Guard::True;
    int to = 0;
  };

  Nba() = default;
  explicit Nba(MeetPredicate meet);

  int state_count() const { return 2; }
  int initial() const { return 0; }
  bool accepting(int q) const { return q == 1; }
  const std::vector<Edge>& edges() const { return edges_; }
  const MeetPredicate& meet() const { return meet_; }

  // successor states on one consumed label, ascending
  void successors(int q, const Label& label, const std::function<void(int)>& fn) const;

  // Language membership for ultimately periodic words (generic graph
  // search over the automaton, independent of its fixed shape).
  bool accepts_lasso(std::span<const Label> prefix, std::span<const Label> cycle) const;

 private:
  MeetPredicate meet_;
  std::vector<Edge> edges_;
};

Nba build_team_nba(const ValidatedNetwork& net, int team);

// Product of a team's WPTS with its NBA, generated lazily. A product
// transition exists when the WPTS moves and the NBA accepts the label of
// the successor WPTS state; accepting product states pair any joint state
// with the accepting NBA state. Weights are inherited from the WPTS.
class Pba {
 public:
  struct State {
    JointState q;
    int b = 0;
    auto operator<=>(const State&) const = default;
  };

  Pba() = default;
  Pba(const Wpts* wpts, const Nba* nba) : wpts_(wpts), nba_(nba) {}

  const Wpts& wpts() const { return *wpts_; }
  const Nba& nba() const { return *nba_; }

  State initial(const JointState& q0) const { return {q0, nba_->initial()}; }
  bool accepting(const State& s) const { return nba_->accepting(s.b); }

  void for_each_successor(const State& s,
                          const std::function<void(const State&, double)>& fn) const;

 private:
  const Wpts* wpts_ = nullptr;
  const Nba* nba_ = nullptr;
};

}  // namespace imc

#endif
