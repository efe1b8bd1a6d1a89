#include "imc/buchi.hpp"

#include <algorithm>
#include <set>

namespace imc {

bool MeetPredicate::eval(const Label& label) const { return meeting_location(label).has_value(); }

std::optional<LocationId> MeetPredicate::meeting_location(const Label& label) const {
  for (LocationId l : comm_points) {
    bool all = true;
    for (int r : members) {
      if (!std::binary_search(label.begin(), label.end(), Prop{r, l})) {
        all = false;
        break;
      }
    }
    if (all) return l;
  }
  return std::nullopt;
}

Nba::Nba(MeetPredicate meet) : meet_(std::move(meet)) {
  edges_ = {
      {0, Guard::True, 0},
      {0, Guard::Meet, 1},
      {1, Guard::True, 0},
      {1, Guard::Meet, 1},
  };
}

void Nba::successors(int q, const Label& label, const std::function<void(int)>& fn) const {
  const bool meets = meet_.eval(label);
  for (const Edge& e : edges_) {
    if (e.from != q) continue;
    if (e.guard == Guard::True || meets) fn(e.to);
  }
}

bool Nba::accepts_lasso(std::span<const Label> prefix, std::span<const Label> cycle) const {
  if (cycle.empty()) return false;
  // reachable automaton states after the prefix
  std::set<int> reach{initial()};
  for (const Label& l : prefix) {
    std::set<int> next;
    for (int q : reach) successors(q, l, [&](int t) { next.insert(t); });
    reach = std::move(next);
  }
  // product of automaton states with cycle positions; acceptance = a lasso
  // run that passes an accepting product node lying on a product cycle
  const int c = static_cast<int>(cycle.size());
  const int nodes = state_count() * c;
  auto node = [&](int q, int pos) { return q * c + pos; };
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nodes));
  for (int q = 0; q < state_count(); ++q) {
    for (int pos = 0; pos < c; ++pos) {
      successors(q, cycle[static_cast<std::size_t>(pos)], [&](int t) {
        adj[static_cast<std::size_t>(node(q, pos))].push_back(node(t, (pos + 1) % c));
      });
    }
  }
  auto reachable_from = [&](const std::vector<int>& sources) {
    std::vector<char> seen(static_cast<std::size_t>(nodes), 0);
    std::vector<int> stack(sources);
    for (int s : sources) seen[static_cast<std::size_t>(s)] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : adj[static_cast<std::size_t>(u)]) {
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          stack.push_back(v);
        }
      }
    }
    return seen;
  };
  std::vector<int> entry;
  for (int q : reach) entry.push_back(node(q, 0));
  const auto from_entry = reachable_from(entry);
  for (int q = 0; q < state_count(); ++q) {
    if (!accepting(q)) continue;
    for (int pos = 0; pos < c; ++pos) {
      const int a = node(q, pos);
      if (!from_entry[static_cast<std::size_t>(a)]) continue;
      // does a reach itself?
      std::vector<char> seen(static_cast<std::size_t>(nodes), 0);
      std::vector<int> stack{a};
      bool cycles = false;
      while (!stack.empty() && !cycles) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : adj[static_cast<std::size_t>(u)]) {
          if (v == a) {
            cycles = true;
            break;
          }
          if (!seen[static_cast<std::size_t>(v)]) {
            seen[static_cast<std::size_t>(v)] = 1;
            stack.push_back(v);
          }
        }
      }
      if (cycles) return true;
    }
  }
  return false;
}

Nba build_team_nba(const ValidatedNetwork& net, int team) {
  MeetPredicate meet;
  meet.team = team;
  meet.members = net.teams().members[static_cast<std::size_t>(team - 1)];
  meet.comm_points = net.teams().comm_points[static_cast<std::size_t>(team - 1)];
  return Nba(std::move(meet));
}

void Pba::for_each_successor(const State& s,
                             const std::function<void(const State&, double)>& fn) const {
  wpts_->for_each_successor(s.q, [&](const JointState& q2, double w) {
    const Label lbl = wpts_->label(q2);
    nba_->successors(s.b, lbl, [&](int b2) { fn({q2, b2}, w); });
  });
}

}  // namespace imc
