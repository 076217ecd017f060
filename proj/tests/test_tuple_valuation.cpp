#include <gtest/gtest.h>

#include "property_suites.hpp"

using namespace gradarg;

namespace {

TupledValue V(std::string_view s) { return parse_tupled_value(s); }

TupledValue value_of(const std::vector<TupledValue>& vs, const AttackGraph& g, const char* name) {
  return vs[g.at(name)];
}

/// t lists first, first+2, first+4, ... up to its horizon, each once, and
/// the horizon reaches at least `min_horizon`.
bool is_progression(const GradTuple& t, std::uint64_t first, std::uint64_t min_horizon) {
  if (!t.is_truncated() || t.horizon() < min_horizon) return false;
  std::vector<std::uint64_t> expected;
  for (std::uint64_t x = first; x <= t.horizon(); x += 2) expected.push_back(x);
  return t.prefix() == expected;
}

/// Lengths L for which some admissible walk of length L ends at a (see
/// oracle::walk_counts), computed with sets of reachable arguments.
std::vector<bool> walk_lengths(const AttackGraph& g, ArgIndex a, std::size_t max_len) {
  // A start is valid when it is a leaf, or it lies in an unattacked cyclic
  // component and the first edge stays inside.
  const std::size_t n = g.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (ArgIndex s = 0; s < n; ++s) {
    std::vector<ArgIndex> stack{s};
    while (!stack.empty()) {
      ArgIndex x = stack.back();
      stack.pop_back();
      for (ArgIndex y : g.attacked(x)) {
        if (!reach[s][y]) {
          reach[s][y] = true;
          stack.push_back(y);
        }
      }
    }
  }
  auto same = [&](ArgIndex x, ArgIndex y) { return reach[x][y] && reach[y][x]; };
  std::vector<bool> isolated(n, false);
  for (ArgIndex x = 0; x < n; ++x) {
    if (!reach[x][x]) continue;
    isolated[x] = true;
    for (ArgIndex y = 0; y < n; ++y) {
      if (!same(x, y) && reach[y][x]) isolated[x] = false;
    }
  }
  // frontier[x]: x can be reached backwards from a at the current length,
  // remembering the argument it attacks on the walk
  std::vector<bool> out(max_len + 1, false);
  std::set<std::pair<ArgIndex, ArgIndex>> frontier{{a, a}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::set<std::pair<ArgIndex, ArgIndex>> next;
    for (const auto& entry : frontier) {
      for (ArgIndex b : g.attackers(entry.first)) next.insert({b, entry.first});
    }
    for (auto [x, after] : next) {
      if (g.is_leaf(x) || (isolated[x] && same(x, after))) out[len] = true;
    }
    frontier = std::move(next);
  }
  return out;
}

/// Compares evaluate_cyclic against walk enumeration on one graph.
void expect_matches_walks(const AttackGraph& g, std::size_t depth, std::uint64_t count_bound) {
  const auto values = evaluate_cyclic(g, depth);
  const std::size_t n = g.size();
  for (ArgIndex a = 0; a < n; ++a) {
    const auto& v = values[a];
    if (g.is_leaf(a)) {
      EXPECT_EQ(v, TupledValue::leaf());
      continue;
    }
    const auto exists = walk_lengths(g, a, 6 * n + 2);
    for (std::size_t parity = 0; parity < 2; ++parity) {
      const GradTuple& t = parity == 0 ? v.vp : v.vi;
      bool long_walk = false;
      for (std::size_t len = n; len < exists.size(); ++len) long_walk = long_walk || (exists[len] && len % 2 == parity);
      EXPECT_EQ(t.is_infinite(), long_walk) << g.name(a) << " parity " << parity << "\n" << serialize_framework(g);
      EXPECT_FALSE(t.is_zero_inf());
    }
    std::uint64_t bound = count_bound;
    if (v.vp.is_truncated()) bound = std::min(bound, v.vp.horizon());
    if (v.vi.is_truncated()) bound = std::min(bound, v.vi.horizon());
    for (const GradTuple* t : {&v.vp, &v.vi}) {
      if (!t->is_infinite() && !t->prefix().empty()) {
        EXPECT_LE(t->prefix().back(), bound) << g.name(a);
      }
    }
    const auto counts = oracle::walk_counts(g, a, bound);
    for (std::uint64_t len = 1; len <= bound; ++len) {
      const GradTuple& t = len % 2 == 0 ? v.vp : v.vi;
      const auto it = counts.find(len);
      EXPECT_EQ(t.count(len), it == counts.end() ? 0 : it->second)
          << g.name(a) << " length " << len << " value " << v << "\n"
          << serialize_framework(g);
    }
  }
}

}  // namespace

TEST(Acyclic, SharedDefenderValues) {
  const auto g = oracle::load_fixture("shared_defender.apx");
  const auto v = evaluate_acyclic(g);
  for (const char* leaf : {"D1", "C2", "E1"}) EXPECT_EQ(value_of(v, g, leaf), TupledValue::leaf());
  EXPECT_EQ(value_of(v, g, "C1"), V("[(),(1)]"));
  EXPECT_EQ(value_of(v, g, "D2"), V("[(),(1)]"));
  EXPECT_EQ(value_of(v, g, "C3"), V("[(2),()]"));
  EXPECT_EQ(value_of(v, g, "B1"), V("[(2),(1)]"));
  EXPECT_EQ(value_of(v, g, "B2"), V("[(),(3)]"));
  EXPECT_EQ(value_of(v, g, "A"), V("[(2,4),(1,3)]"));
}

TEST(Acyclic, MixedDepthAttackersValues) {
  const auto g = oracle::load_fixture("mixed_depth_attackers.apx");
  const auto v = evaluate_acyclic(g);
  EXPECT_EQ(value_of(v, g, "B1"), V("[(2),(3)]"));
  EXPECT_EQ(value_of(v, g, "A"), V("[(2,4),(1,3,3)]"));
  EXPECT_EQ(to_string(value_of(v, g, "A")), "[(2,4),(1,3,3)]");
  EXPECT_EQ(value_of(v, g, "C1"), V("[(2),()]"));
  EXPECT_EQ(value_of(v, g, "B3"), V("[(),(1)]"));
}

TEST(Acyclic, LeafValue) {
  const auto g = make_graph({"a"}, {});
  EXPECT_EQ(evaluate_acyclic(g)[0], TupledValue::leaf());
  EXPECT_EQ(evaluate_cyclic(g)[0], TupledValue::leaf());
}

TEST(Acyclic, CyclesAreRejected) {
  EXPECT_THROW(evaluate_acyclic(oracle::load_fixture("unattacked_pair_cycle.apx")), computation_error);
}

TEST(Acyclic, SubtreeComparisonChain) {
  const auto g = oracle::load_fixture("mixed_depth_subtree.apx");
  const auto v = evaluate_acyclic(g);
  const std::vector<std::vector<std::string>> chain = {{"E1", "D2"}, {"C1"}, {"B1"}, {"A"}, {"D1", "C2"}};
  for (std::size_t i = 0; i < chain.size(); ++i) {
    for (auto& x : chain[i]) {
      for (auto& y : chain[i]) EXPECT_EQ(compare(v[g.at(x)], v[g.at(y)]).verdict, Verdict::equivalent);
      for (std::size_t j = i + 1; j < chain.size(); ++j) {
        for (auto& y : chain[j]) {
          EXPECT_EQ(compare(v[g.at(x)], v[g.at(y)]).verdict, Verdict::first_better) << x << " vs " << y;
        }
      }
    }
  }
}

TEST(Acyclic, AgreesWithPathEnumeration) {
  for (std::size_t t = 0; t < 200; ++t) {
    const auto g = RandomGraphStream{31, 11, true}.graph(t);
    const auto v = evaluate_acyclic(g);
    for (ArgIndex a = 0; a < g.size(); ++a) EXPECT_EQ(v[a], suites::value_from_branches(g, a)) << serialize_framework(g);
    EXPECT_EQ(evaluate_cyclic(g), v);
  }
}

TEST(Cycles, UnattackedCyclesFollowClosedForm) {
  for (std::size_t k : {1, 2, 3, 5}) {
    const auto g = generate_family(UnattackedCycleFamily{k});
    for (auto& v : evaluate_cyclic(g, 10)) {
      EXPECT_TRUE(is_progression(v.vp, 2, 20)) << v;
      EXPECT_TRUE(is_progression(v.vi, 1, 19)) << v;
    }
  }
  const auto deep = evaluate_cyclic(generate_family(UnattackedCycleFamily{2}), 50);
  EXPECT_EQ(deep[0].vp.horizon(), 100u);
}

TEST(Cycles, SinkOfUnattackedPair) {
  const auto g = oracle::load_fixture("unattacked_pair_cycle.apx");
  const auto c = evaluate_cyclic(g)[g.at("C")];
  EXPECT_TRUE(is_progression(c.vp, 2, 20)) << c;
  EXPECT_TRUE(is_progression(c.vi, 3, 21)) << c;
  EXPECT_EQ(to_string(V("[(2,4,6,...),(3,5,7,...)]")), "[(2,4,6,...),(3,5,7,...)]");
}

TEST(Cycles, AttackedPairValues) {
  const auto g = oracle::load_fixture("attacked_pair_cycle.apx");
  const auto v = evaluate_cyclic(g, 10);
  EXPECT_TRUE(value_of(v, g, "A").vp.is_empty());
  EXPECT_TRUE(is_progression(value_of(v, g, "A").vi, 1, 21));
  EXPECT_TRUE(is_progression(value_of(v, g, "B").vp, 2, 20));
  EXPECT_TRUE(value_of(v, g, "B").vi.is_empty());
  EXPECT_TRUE(is_progression(value_of(v, g, "C").vp, 2, 20));
  EXPECT_TRUE(value_of(v, g, "C").vi.is_empty());
  EXPECT_TRUE(value_of(v, g, "E").vp.is_empty());
  EXPECT_TRUE(is_progression(value_of(v, g, "E").vi, 3, 21));
  EXPECT_EQ(value_of(v, g, "A").vi.horizon(), 21u);
}

TEST(Cycles, InterconnectedCyclesMatchWalkEnumeration) {
  const auto g = oracle::load_fixture("interconnected_cycles.apx");
  expect_matches_walks(g, 4, 12);
}

TEST(Cycles, DefendersWithCyclesMatchWalkEnumeration) {
  expect_matches_walks(oracle::load_fixture("defenders_with_cycles.apx"), 3, 12);
}

TEST(Cycles, RandomGraphsMatchWalkEnumeration) {
  for (std::size_t t = 0; t < 150; ++t) {
    const auto g = RandomGraphStream{41, 5, false}.graph(t);
    expect_matches_walks(g, 4, 10);
  }
}

TEST(Cycles, DepthMustBePositive) {
  EXPECT_THROW(evaluate_cyclic(make_graph({"a"}, {}), 0), std::invalid_argument);
}

TEST(Cycles, DeeperPropagationExtendsTheHorizon) {
  const auto g = oracle::load_fixture("interconnected_cycles.apx");
  const auto shallow = evaluate_cyclic(g, 2);
  const auto deep = evaluate_cyclic(g, 6);
  for (ArgIndex a = 0; a < g.size(); ++a) {
    for (auto pick : {&TupledValue::vp, &TupledValue::vi}) {
      const GradTuple& s = shallow[a].*pick;
      const GradTuple& d = deep[a].*pick;
      if (!s.is_truncated()) {
        EXPECT_EQ(s, d);
        continue;
      }
      ASSERT_TRUE(d.is_truncated());
      EXPECT_GT(d.horizon(), s.horizon());
      EXPECT_EQ(GradTuple::truncated(d.prefix(), s.horizon()), s);
    }
  }
}

TEST(Principles, TupleMonotonicityOnRandomAcyclicGraphs) {
  const auto r = suites::tuple_monotonicity_suite(9, 80, 9);
  EXPECT_TRUE(r.ok()) << r.summary();
}

TEST(Principles, SpecificEditsOnAChain) {
  // A1 <- A2 <- A3: one defence branch of length 2
  const auto g = generate_family(ChainFamily{3});
  const auto before = evaluate_acyclic(g)[0];
  EXPECT_EQ(before, V("[(2),()]"));
  auto after = [&](const GraphEdit& e) {
    const auto h = edit_graph(g, e);
    return evaluate_acyclic(h)[h.at("A1")];
  };
  EXPECT_EQ(after(AddBranch{"A1", 2}), V("[(2,2),()]"));
  EXPECT_EQ(after(AddBranch{"A1", 1}), V("[(2),(1)]"));
  EXPECT_EQ(after(ChangeBranchLength{"A1", 2, 2}), V("[(4),()]"));
  EXPECT_EQ(after(RemoveBranch{"A1", 2}), TupledValue::leaf());
  EXPECT_TRUE(strictly_better(after(AddBranch{"A1", 2}), before));
  EXPECT_TRUE(strictly_better(before, after(AddBranch{"A1", 1})));
  EXPECT_TRUE(strictly_better(before, after(ChangeBranchLength{"A1", 2, 2})));
  EXPECT_TRUE(strictly_better(after(RemoveBranch{"A1", 2}), before));
}
