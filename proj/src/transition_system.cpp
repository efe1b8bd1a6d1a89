#include "imc/transition_system.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "imc/util.hpp"

namespace imc {

Wts::Wts(const ValidatedNetwork& net, int robot, LocationId initial)
    : net_(&net), robot_(robot), initial_(initial), states_(net.robot_state_set(robot)) {}

bool Wts::has_state(LocationId q) const {
  return std::binary_search(states_.begin(), states_.end(), q);
}

bool Wts::has_transition(LocationId a, LocationId b) const {
  return has_state(a) && has_state(b);
}

double Wts::weight(LocationId a, LocationId b) const {
  if (!has_transition(a, b)) {
    throw DomainError("InadmissiblePath", "no transition " + std::to_string(a) + "->" +
                                              std::to_string(b) + " for robot " +
                                              std::to_string(robot_));
  }
  if (a == b) return 0.0;
  return net_->geodesics().length(a, b);
}

std::string Wts::dump() const {
  std::ostringstream os;
  os << "wts robot=" << robot_ << " initial=" << initial_ << " states=" << states_.size() << "\n";
  for (LocationId a : states_) {
    os << "  " << a << " wait 0.000000000\n";
    for (LocationId b : states_) {
      if (a == b) continue;
      os << "  " << a << " -> " << b << " " << fmt9(net_->geodesics().length(a, b)) << "\n";
    }
  }
  return os.str();
}

Wts build_wts(const ValidatedNetwork& net, int robot, LocationId initial) {
  Wts wts(net, robot, initial);
  if (!wts.has_state(initial)) {
    throw DomainError("StartNotInStateSet",
                      "robot " + std::to_string(robot) + " initial location " +
                          std::to_string(initial) + " is not one of its states");
  }
  return wts;
}

Wpts::Wpts(int team, std::vector<const Wts*> factors) : team_(team), factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end(),
            [](const Wts* a, const Wts* b) { return a->robot() < b->robot(); });
  members_.reserve(factors_.size());
  for (const Wts* f : factors_) members_.push_back(f->robot());
}

int Wpts::member_index(int robot) const {
  const auto it = std::lower_bound(members_.begin(), members_.end(), robot);
  if (it == members_.end() || *it != robot) return -1;
  return static_cast<int>(it - members_.begin());
}

bool Wpts::has_state(const JointState& q) const {
  if (q.size() != factors_.size()) return false;
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (!factors_[k]->has_state(q[k])) return false;
  }
  return true;
}

double Wpts::weight(const JointState& a, const JointState& b) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < factors_.size(); ++k) sum += factors_[k]->weight(a[k], b[k]);
  return sum;
}

Label Wpts::label(const JointState& q) const {
  Label lbl;
  lbl.reserve(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) lbl.push_back({members_[k], q[k]});
  std::sort(lbl.begin(), lbl.end());
  return lbl;
}

void Wpts::for_each_successor(const JointState& q,
                              const std::function<void(const JointState&, double)>& fn) const {
  const std::size_t n = factors_.size();
  JointState succ(n);
  std::vector<std::size_t> idx(n, 0);
  // odometer over each member's sorted state list
  while (true) {
    double w = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      succ[k] = factors_[k]->states()[idx[k]];
      w += factors_[k]->weight(q[k], succ[k]);
    }
    fn(succ, w);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++idx[k] < factors_[k]->states().size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
  }
}

JointState Wpts::initial() const {
  JointState q;
  q.reserve(factors_.size());
  for (const Wts* f : factors_) q.push_back(f->initial());
  return q;
}

RobotPath project(const Wpts& wpts, const FinitePath& path, int robot) {
  const int k = wpts.member_index(robot);
  if (k < 0) {
    throw DomainError("RobotNotInTeam", "robot " + std::to_string(robot) + " is not in team " +
                                            std::to_string(wpts.team()));
  }
  RobotPath rp;
  rp.robot = robot;
  rp.states.reserve(path.size());
  for (const JointState& q : path.states) rp.states.push_back(q[static_cast<std::size_t>(k)]);
  return rp;
}

FinitePath compose(const Wpts& wpts, const std::vector<RobotPath>& paths) {
  if (paths.size() != wpts.members().size()) {
    throw DomainError("BadComposition", "member path count mismatch for team " +
                                            std::to_string(wpts.team()));
  }
  std::vector<const RobotPath*> by_member(paths.size(), nullptr);
  std::size_t len = 0;
  for (const RobotPath& p : paths) {
    const int k = wpts.member_index(p.robot);
    if (k < 0) {
      throw DomainError("RobotNotInTeam", "robot " + std::to_string(p.robot) + " is not in team " +
                                              std::to_string(wpts.team()));
    }
    by_member[static_cast<std::size_t>(k)] = &p;
    if (len == 0) len = p.states.size();
    if (p.states.size() != len) {
      throw DomainError("BadComposition", "member paths differ in length");
    }
  }
  FinitePath out;
  out.states.assign(len, JointState(paths.size()));
  for (std::size_t k = 0; k < by_member.size(); ++k) {
    if (by_member[k] == nullptr) throw DomainError("BadComposition", "missing member path");
    for (std::size_t t = 0; t < len; ++t) out.states[t][k] = by_member[k]->states[t];
  }
  return out;
}

double path_cost(const Wts& wts, const RobotPath& path) {
  if (path.states.empty()) throw DomainError("InadmissiblePath", "empty path");
  for (LocationId q : path.states) {
    if (!wts.has_state(q)) {
      throw DomainError("InadmissiblePath", "state " + std::to_string(q) +
                                                " is not a state of robot " +
                                                std::to_string(wts.robot()));
    }
  }
  double sum = 0.0;
  for (std::size_t t = 1; t < path.states.size(); ++t) {
    sum += wts.weight(path.states[t - 1], path.states[t]);
  }
  return sum;
}

double path_cost(const Wpts& wpts, const FinitePath& path) {
  if (path.states.empty()) throw DomainError("InadmissiblePath", "empty path");
  for (const JointState& q : path.states) {
    if (!wpts.has_state(q)) throw DomainError("InadmissiblePath", "joint state outside product");
  }
  double sum = 0.0;
  for (std::size_t t = 1; t < path.states.size(); ++t) {
    sum += wpts.weight(path.states[t - 1], path.states[t]);
  }
  return sum;
}

std::vector<Label> trace_of(const Wpts& wpts, const FinitePath& path) {
  std::vector<Label> out;
  out.reserve(path.size());
  for (const JointState& q : path.states) out.push_back(wpts.label(q));
  return out;
}

LassoCost path_cost(const Wpts& wpts, const Lasso& lasso) {
  LassoCost cost;
  cost.prefix = lasso.prefix.empty() ? 0.0 : path_cost(wpts, lasso.prefix);
  cost.cycle = lasso.cycle.empty() ? 0.0 : path_cost(wpts, lasso.cycle);
  return cost;
}

}  // namespace imc
