#include <doctest.h>

#include <vector>

#include "golden_expected.hpp"
#include "helpers.hpp"
#include "imc/transition_system.hpp"

using namespace imc;

namespace {

// Two robots on the path graph 1-2-3, one team meeting at 1 or 3.
ValidatedNetwork two_robot_line() {
  TeamStructure t;
  t.members = {{1, 2}};
  t.comm_points = {{1, 3}};
  t.robot_start = {1, 3};
  t.robot_speed = {1.0, 1.0};
  return th::make_net(th::line_graph(3), t);
}

}  // namespace

TEST_CASE("per-robot motion system") {
  const auto& net = th::golden_net();

  SUBCASE("states are the union of team communication points") {
    Wts w = build_wts(net, 1, 1);
    CHECK(w.robot() == 1);
    CHECK(w.initial() == 1);
    CHECK(w.states() == std::vector<LocationId>{1, 2, 3, 4, 17, 18, 19, 20});
    CHECK(static_cast<int>(w.states().size()) == golden::robot1_state_count);
  }

  SUBCASE("wait loops cost nothing, moves cost the geodesic") {
    Wts w = build_wts(net, 1, 1);
    CHECK(w.weight(1, 1) == 0.0);
    CHECK(w.weight(3, 3) == 0.0);
    CHECK(w.weight(1, 3) == doctest::Approx(golden::d_1_3).epsilon(1e-12));
    CHECK(w.weight(1, 3) == doctest::Approx(net.geodesics().length(1, 3)).epsilon(1e-15));
    CHECK(w.has_transition(1, 20));
    CHECK_FALSE(w.has_state(5));
    CHECK_FALSE(w.has_transition(1, 5));
  }

  SUBCASE("labels name the robot's position") {
    Wts w = build_wts(net, 3, 5);
    CHECK(w.label(5) == Label{{3, 5}});
  }

  SUBCASE("a start outside the state set is rejected") {
    CHECK_THROWS_AS(build_wts(net, 1, 5), DomainError);
    try {
      build_wts(net, 1, 5);
    } catch (const DomainError& e) {
      CHECK(e.code() == "StartNotInStateSet");
    }
  }
}

TEST_CASE("team product system") {
  ValidatedNetwork net = two_robot_line();
  Wts w1 = build_wts(net, 1, 1);
  Wts w2 = build_wts(net, 2, 3);
  Wpts prod(1, {&w1, &w2});

  SUBCASE("members and initial state") {
    CHECK(prod.team() == 1);
    CHECK(prod.members() == std::vector<int>{1, 2});
    CHECK(prod.member_index(2) == 1);
    CHECK(prod.member_index(9) == -1);
    CHECK(prod.initial() == JointState{1, 3});
  }

  SUBCASE("successors enumerate the full product in lexicographic order") {
    std::vector<JointState> succ;
    std::vector<double> weights;
    prod.for_each_successor({1, 1}, [&](const JointState& q, double w) {
      succ.push_back(q);
      weights.push_back(w);
    });
    REQUIRE(succ.size() == 4);
    CHECK(succ[0] == JointState{1, 1});
    CHECK(succ[1] == JointState{1, 3});
    CHECK(succ[2] == JointState{3, 1});
    CHECK(succ[3] == JointState{3, 3});
    CHECK(weights[0] == 0.0);
    CHECK(weights[1] == doctest::Approx(2.0));
    CHECK(weights[2] == doctest::Approx(2.0));
    CHECK(weights[3] == doctest::Approx(4.0));
  }

  SUBCASE("weights add up and labels join") {
    CHECK(prod.weight({1, 3}, {3, 1}) == doctest::Approx(4.0));
    CHECK(prod.weight({1, 3}, {1, 3}) == 0.0);
    CHECK(prod.label({1, 3}) == Label{{1, 1}, {2, 3}});
    CHECK(prod.has_state({3, 3}));
    CHECK_FALSE(prod.has_state({2, 3}));
  }
}

TEST_CASE("projection and composition are inverse") {
  ValidatedNetwork net = two_robot_line();
  Wts w1 = build_wts(net, 1, 1);
  Wts w2 = build_wts(net, 2, 3);
  Wpts prod(1, {&w1, &w2});

  FinitePath joint;
  joint.states = {{1, 3}, {1, 1}, {3, 1}, {3, 3}};

  RobotPath p1 = project(prod, joint, 1);
  RobotPath p2 = project(prod, joint, 2);
  CHECK(p1.states == std::vector<LocationId>{1, 1, 3, 3});
  CHECK(p2.states == std::vector<LocationId>{3, 1, 1, 3});

  FinitePath back = compose(prod, {p1, p2});
  CHECK(back.states == joint.states);

  CHECK_THROWS_AS(project(prod, joint, 9), DomainError);
}

TEST_CASE("path costs") {
  ValidatedNetwork net = two_robot_line();
  Wts w1 = build_wts(net, 1, 1);
  Wts w2 = build_wts(net, 2, 3);
  Wpts prod(1, {&w1, &w2});

  SUBCASE("single-robot path cost") {
    CHECK(path_cost(w1, {1, {1, 3, 1}}) == doctest::Approx(4.0));
    CHECK(path_cost(w1, {1, {1, 1, 1}}) == 0.0);
    CHECK_THROWS_AS(path_cost(w1, {1, {}}), DomainError);
    CHECK_THROWS_AS(path_cost(w1, {1, {1, 2}}), DomainError);  // 2 is not a state
  }

  SUBCASE("joint path cost sums member moves") {
    FinitePath joint;
    joint.states = {{1, 3}, {1, 1}, {3, 3}};
    CHECK(path_cost(prod, joint) == doctest::Approx(2.0 + 4.0));
  }

  SUBCASE("prefix-cycle cost splits components") {
    Lasso lasso;
    lasso.prefix.states = {{1, 3}, {1, 1}};
    lasso.cycle.states = {{1, 1}, {3, 1}, {1, 1}};
    LassoCost c = path_cost(prod, lasso);
    CHECK(c.prefix == doctest::Approx(2.0));
    CHECK(c.cycle == doctest::Approx(4.0));
  }
}

TEST_CASE("traces list joint labels in order") {
  ValidatedNetwork net = two_robot_line();
  Wts w1 = build_wts(net, 1, 1);
  Wts w2 = build_wts(net, 2, 3);
  Wpts prod(1, {&w1, &w2});

  FinitePath joint;
  joint.states = {{1, 3}, {1, 1}};
  std::vector<Label> tr = trace_of(prod, joint);
  REQUIRE(tr.size() == 2);
  CHECK(tr[0] == Label{{1, 1}, {2, 3}});
  CHECK(tr[1] == Label{{1, 1}, {2, 1}});
}
