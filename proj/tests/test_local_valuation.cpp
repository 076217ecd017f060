#include <cmath>

#include <gtest/gtest.h>

#include "property_suites.hpp"

using namespace gradarg;

namespace {

Rational q(long n, long d) { return Rational(n) / d; }

Rational exact(const std::vector<LocalValue>& v, const AttackGraph& g, const char* name) {
  return std::get<Rational>(v[g.at(name)]);
}

double approx(const std::vector<LocalValue>& v, const AttackGraph& g, const char* name) {
  return to_double(v[g.at(name)]);
}

const double inverse_golden = (std::sqrt(5.0) - 1) / 2;

}  // namespace

TEST(Categoriser, BasicValuesOfG) {
  const auto c = categoriser();
  EXPECT_EQ(std::get<Rational>(c.g(Rational(1))), q(1, 2));
  EXPECT_EQ(std::get<Rational>(c.g(Rational(0))), Rational(1));
  EXPECT_DOUBLE_EQ(std::get<double>(c.g(0.25)), 0.8);
}

TEST(Categoriser, MixedDepthAttackersExact) {
  const auto g = oracle::load_fixture("mixed_depth_attackers.apx");
  const auto v = evaluate_local(g, categoriser());
  EXPECT_EQ(exact(v, g, "B1"), q(6, 13));
  EXPECT_EQ(exact(v, g, "A"), q(78, 283));
  for (const char* leaf : {"E1", "D2", "D3", "C4", "B4"}) EXPECT_EQ(exact(v, g, leaf), Rational(1));
  for (const char* half : {"D1", "C2", "C3", "B3"}) EXPECT_EQ(exact(v, g, half), q(1, 2));
  EXPECT_EQ(exact(v, g, "C1"), q(2, 3));
  EXPECT_EQ(exact(v, g, "B2"), q(2, 3));
  EXPECT_EQ(to_string(v[g.at("A")]), "78/283");
}

TEST(Categoriser, SubtreeExact) {
  const auto g = oracle::load_fixture("mixed_depth_subtree.apx");
  EXPECT_EQ(exact(evaluate_local(g, categoriser()), g, "A"), q(13, 19));
}

TEST(Categoriser, ChainAlternatesTowardsInverseGoldenRatio) {
  const auto g = generate_family(ChainFamily{4});
  const auto v = evaluate_local(g, categoriser());
  EXPECT_EQ(exact(v, g, "A4"), Rational(1));
  EXPECT_EQ(exact(v, g, "A3"), q(1, 2));
  EXPECT_EQ(exact(v, g, "A2"), q(2, 3));
  EXPECT_EQ(exact(v, g, "A1"), q(3, 5));
  const auto long_chain = generate_family(ChainFamily{40});
  EXPECT_LT(std::abs(approx(evaluate_local(long_chain, categoriser()), long_chain, "A1") - inverse_golden), 1e-6);
}

TEST(Categoriser, PairCycleReachesInverseGoldenRatio) {
  const auto g = generate_family(UnattackedCycleFamily{2});
  const auto v = evaluate_local(g, categoriser());
  EXPECT_NEAR(approx(v, g, "C0"), 0.6180339887, 1e-9);
  EXPECT_NEAR(approx(v, g, "C1"), 0.6180339887, 1e-9);
  EXPECT_TRUE(std::holds_alternative<double>(v[0]));
}

TEST(Categoriser, OddCyclesShareOneFixpoint) {
  const auto c = categoriser();
  for (std::size_t k : {1, 3, 5, 7}) {
    const auto g = generate_family(UnattackedCycleFamily{k});
    const auto v = evaluate_local(g, c);
    const double x = to_double(v[0]);
    for (auto& y : v) EXPECT_NEAR(to_double(y), x, 1e-9);
    EXPECT_LT(std::abs(to_double(c.g(x)) - x), 1e-9) << "cycle length " << k;
  }
}

TEST(Categoriser, EvenCycleMembersAreFixpointsOfTheIterate) {
  const auto c = categoriser();
  for (std::size_t k : {2, 4, 6}) {
    const auto g = generate_family(UnattackedCycleFamily{k});
    for (auto& value : evaluate_local(g, c)) {
      LocalValue x = value;
      for (std::size_t i = 0; i < k; ++i) x = c.g(x);
      EXPECT_NEAR(to_double(x), to_double(value), 1e-9);
    }
  }
}

TEST(Categoriser, CyclicGraphSatisfiesRecurrence) {
  const auto c = categoriser();
  for (const char* fixture : {"interconnected_cycles.apx", "defenders_with_cycles.apx", "attacked_pair_cycle.apx"}) {
    const auto g = oracle::load_fixture(fixture);
    const auto v = evaluate_local(g, c);
    for (ArgIndex a = 0; a < g.size(); ++a) {
      std::vector<LocalValue> in;
      for (ArgIndex b : g.attackers(a)) in.push_back(v[b]);
      EXPECT_NEAR(to_double(suites::step(c, in)), to_double(v[a]), 1e-10) << fixture << " " << g.name(a);
    }
  }
}

TEST(Categoriser, NonConvergenceIsAnError) {
  const auto g = generate_family(UnattackedCycleFamily{2});
  EXPECT_THROW(evaluate_local(g, categoriser(), FixpointConfig{1e-12, 3}), computation_error);
  EXPECT_THROW(evaluate_local(g, categoriser(), FixpointConfig{0, 3}), std::invalid_argument);
}

TEST(Labelling, EvenChainAlternatesFromLeaf) {
  const auto g = generate_family(ChainFamily{6});
  const auto v = evaluate_local(g, rooted_labelling());
  for (std::size_t i = 1; i <= 6; ++i) {
    const Label expected = i % 2 == 0 ? Label::plus : Label::minus;
    EXPECT_EQ(std::get<Label>(v[g.at("A" + std::to_string(i))]), expected);
  }
  EXPECT_EQ(to_string(v[g.at("A6")]), "+");
}

TEST(Labelling, RootedOnRandomAcyclicGraphs) {
  for (std::size_t t = 0; t < 200; ++t) {
    const auto g = RandomGraphStream{21, 10, true}.graph(t);
    const auto v = evaluate_local(g, rooted_labelling());
    for (ArgIndex a = 0; a < g.size(); ++a) {
      const auto in = g.attackers(a);
      const Label l = std::get<Label>(v[a]);
      ASSERT_NE(l, Label::undecided);
      if (l == Label::minus) {
        EXPECT_TRUE(std::any_of(in.begin(), in.end(), [&](ArgIndex b) { return std::get<Label>(v[b]) == Label::plus; }));
      } else {
        EXPECT_TRUE(std::all_of(in.begin(), in.end(), [&](ArgIndex b) { return std::get<Label>(v[b]) == Label::minus; }));
      }
    }
  }
}

TEST(Labelling, CyclesResolveWhenAttackedAndStayUndecidedOtherwise) {
  const auto l = rooted_labelling();
  const auto attacked = oracle::load_fixture("attacked_pair_cycle.apx");
  const auto v = evaluate_local(attacked, l);
  EXPECT_EQ(std::get<Label>(v[attacked.at("D")]), Label::plus);
  EXPECT_EQ(std::get<Label>(v[attacked.at("A")]), Label::minus);
  EXPECT_EQ(std::get<Label>(v[attacked.at("B")]), Label::plus);
  EXPECT_EQ(std::get<Label>(v[attacked.at("C")]), Label::plus);
  EXPECT_EQ(std::get<Label>(v[attacked.at("E")]), Label::minus);

  const auto free = oracle::load_fixture("unattacked_pair_cycle.apx");
  for (auto& x : evaluate_local(free, l)) EXPECT_EQ(std::get<Label>(x), Label::undecided);
}

TEST(Labelling, NonRootedLabelInstanceRejectsCycles) {
  auto odd = rooted_labelling();
  odd.name = "odd";
  odd.g = [](const LocalValue& v) -> LocalValue {
    return std::get<Label>(v) == Label::minus ? Label::plus : Label::minus;
  };
  EXPECT_THROW(evaluate_local(generate_family(UnattackedCycleFamily{2}), odd), computation_error);
  EXPECT_NO_THROW(evaluate_local(generate_family(ChainFamily{3}), odd));
}

TEST(Preorder, MixedDepthAttackersClasses) {
  const auto g = oracle::load_fixture("mixed_depth_attackers.apx");
  const auto p = induced_preorder(evaluate_local(g, categoriser()));
  ASSERT_EQ(p.classes.size(), 5u);
  auto names = [&](const ArgSet& s) {
    std::vector<std::string> out;
    for (ArgIndex a : s) out.push_back(g.name(a));
    std::sort(out.begin(), out.end());
    return out;
  };
  using N = std::vector<std::string>;
  EXPECT_EQ(names(p.classes[0]), (N{"B4", "C4", "D2", "D3", "E1"}));
  EXPECT_EQ(names(p.classes[1]), (N{"B2", "C1"}));
  EXPECT_EQ(names(p.classes[2]), (N{"B3", "C2", "C3", "D1"}));
  EXPECT_EQ(names(p.classes[3]), (N{"B1"}));
  EXPECT_EQ(names(p.classes[4]), (N{"A"}));
  EXPECT_TRUE(p.geq(g.at("B4"), g.at("C1")));
  EXPECT_FALSE(p.geq(g.at("D1"), g.at("C1")));
}

TEST(Preorder, ShortChainOrder) {
  const auto g = generate_family(ChainFamily{3});
  const auto p = induced_preorder(evaluate_local(g, categoriser()));
  EXPECT_TRUE(p.geq(g.at("A3"), g.at("A1")));
  EXPECT_TRUE(p.geq(g.at("A1"), g.at("A2")));
  EXPECT_FALSE(p.geq(g.at("A2"), g.at("A1")));
}

TEST(Preorder, AllEqualIsOneClassAndMixedKindsThrow) {
  const std::vector<LocalValue> same(4, Rational(1, 2));
  EXPECT_EQ(induced_preorder(same).classes.size(), 1u);
  EXPECT_THROW(induced_preorder({Rational(1), Label::plus}), std::invalid_argument);
  EXPECT_ANY_THROW(compare_values(Rational(1), Label::plus));
}

TEST(Instances, BuiltinsPassAxioms) {
  const std::vector<std::vector<LocalValue>> numeric = {
      {Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}, {Rational(1, 3), Rational(1), Rational(0)}, {0.25, 0.75}};
  EXPECT_TRUE(validate_instance(categoriser(), numeric).ok());
  EXPECT_TRUE(validate_instance(max_based(), numeric).ok());
  const std::vector<std::vector<LocalValue>> labels = {
      {Label::minus}, {Label::undecided, Label::plus}, {Label::minus, Label::undecided, Label::minus}};
  EXPECT_TRUE(validate_instance(rooted_labelling(), labels).ok());
  EXPECT_EQ(builtin_instances().size(), 3u);
}

TEST(Instances, BrokenGIsReported) {
  auto broken = categoriser();
  broken.g = numeric_function([](const auto& x) { return (1 - x) / 2; });
  const auto report = validate_instance(broken, {{Rational(1, 2)}});
  EXPECT_FALSE(report.ok());
  EXPECT_NE(std::find(report.violations.begin(), report.violations.end(), "g(V_Min) != V_Max"),
            report.violations.end());
}

TEST(Instances, SumBreaksConditionStarButMaxKeepsIt) {
  const std::vector<LocalValue> halves(3, Rational(1, 2));
  EXPECT_EQ(check_condition_star(categoriser(), {halves}).front().result, StarResult::fail);
  EXPECT_EQ(std::get<Rational>(categoriser().g(categoriser().h(halves))), q(2, 5));
  EXPECT_EQ(check_condition_star(categoriser(), {{Rational(9, 10)}}).front().result, StarResult::premise_not_met);

  std::vector<std::vector<LocalValue>> samples;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) samples.push_back({q(i, 10), q(j, 10), q(i * j, 100)});
  }
  for (auto& inst : suites::max_based_instances()) {
    std::size_t passed = 0;
    for (auto& c : check_condition_star(inst, samples)) {
      EXPECT_NE(c.result, StarResult::fail) << inst.name;
      passed += c.result == StarResult::pass;
    }
    EXPECT_GT(passed, 0u);
  }
}

TEST(Principles, LocalPrinciplesOnRandomAcyclicGraphs) {
  const auto r = suites::local_monotonicity_suite(5, 60, 9);
  EXPECT_TRUE(r.ok()) << r.summary();
}

TEST(Principles, AcyclicResultsAreExact) {
  for (std::size_t t = 0; t < 50; ++t) {
    const auto g = RandomGraphStream{8, 10, true}.graph(t);
    for (auto& x : evaluate_local(g, categoriser())) EXPECT_TRUE(std::holds_alternative<Rational>(x));
  }
}
