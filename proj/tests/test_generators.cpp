#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace gradarg;

TEST(Generators, ChainAttacksTowardsFirstArgument) {
  const auto g = generate_family(ChainFamily{4});
  EXPECT_EQ(g.names(), (std::vector<std::string>{"A1", "A2", "A3", "A4"}));
  EXPECT_TRUE(g.attacks(g.at("A4"), g.at("A3")));
  EXPECT_TRUE(g.attacks(g.at("A2"), g.at("A1")));
  EXPECT_EQ(g.attack_count(), 3u);
  EXPECT_EQ(leaves(g), ArgSet{g.at("A4")});
}

TEST(Generators, UnattackedCycleWithSink) {
  const auto g = generate_family(UnattackedCycleFamily{2, true});
  EXPECT_EQ(g.size(), 3u);
  const auto mcs = find_mcycles(g);
  ASSERT_EQ(mcs.size(), 1u);
  EXPECT_TRUE(mcs[0].isolated());
  EXPECT_EQ(g.attackers(g.at("S")).size(), 1u);
}

TEST(Generators, AttackedCycleHasOneInput) {
  const auto g = generate_family(AttackedCycleFamily{3});
  const auto mcs = find_mcycles(g);
  ASSERT_EQ(mcs.size(), 1u);
  EXPECT_EQ(mcs[0].inputs, ArgSet{g.at("C0")});
  EXPECT_TRUE(g.is_leaf(g.at("D")));
}

TEST(Generators, SpiderLegsAreUniquePaths) {
  const auto g = generate_family(SpiderFamily{{1, 2, 3}});
  EXPECT_EQ(g.size(), 7u);
  const auto b = oracle::branch_lengths(g, g.at("A"));
  EXPECT_EQ(b.odd, (std::multiset<std::uint64_t>{1, 3}));
  EXPECT_EQ(b.even, (std::multiset<std::uint64_t>{2}));
  EXPECT_EQ(leaves(g).size(), 3u);
  EXPECT_EQ(private_branches(g, g.at("A")).size(), 3u);
}

TEST(Generators, RandomIsDeterministic) {
  const RandomFamily f{1, 6, 0.3, false, true};
  EXPECT_EQ(generate_family(f), generate_family(f));
  bool differs = false;
  for (std::uint64_t s = 2; s < 12 && !differs; ++s) {
    differs = !(generate_family(RandomFamily{s, 6, 0.3, false, true}) == generate_family(f));
  }
  EXPECT_TRUE(differs);
}

TEST(Generators, RandomAcyclicHasNoCycles) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    EXPECT_TRUE(is_well_founded(generate_family(RandomFamily{s, 9, 0.6, true, true})));
  }
}

TEST(Generators, InvalidSizesAreRejected) {
  EXPECT_THROW(generate_family(ChainFamily{0}), std::invalid_argument);
  EXPECT_THROW(generate_family(UnattackedCycleFamily{0}), std::invalid_argument);
  EXPECT_THROW(generate_family(RandomFamily{1, 0}), std::invalid_argument);
  EXPECT_THROW(generate_family(SpiderFamily{{}}), std::invalid_argument);
  EXPECT_THROW(generate_family(SpiderFamily{{2, 0}}), std::invalid_argument);
}

TEST(Generators, RandomSpiderSatisfiesUniquePathCondition) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto g = random_spider(s);
    const ArgIndex root = g.at("A");
    // every leaf reaches the root along exactly one path
    std::size_t paths = 0;
    const auto b = oracle::branch_lengths(g, root);
    paths = b.even.size() + b.odd.size();
    EXPECT_EQ(paths, leaves(g).size());
    EXPECT_EQ(private_branches(g, root).size(), g.attackers(root).size());
  }
}

TEST(Generators, StreamProducesBoundedSizes) {
  const RandomGraphStream stream{3, 5, false};
  for (std::size_t t = 0; t < 200; ++t) {
    const auto g = stream.graph(t);
    EXPECT_GE(g.size(), 1u);
    EXPECT_LE(g.size(), 5u);
    EXPECT_EQ(g, stream.graph(t));
  }
}
