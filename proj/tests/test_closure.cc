#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tc/actions.hpp"
#include "tc/closure.hpp"
#include "tc/constructions.hpp"
#include "tc/group_ops.hpp"
#include "tc/orbital.hpp"

using namespace tc;

namespace {

Permutation P(std::size_t n, const char* s) { return Permutation::parse_cycles(n, s); }

void expect_closure_matches_oracle(const PermGroup& G) {
  auto r = two_closure(G);
  ASSERT_TRUE(r.certified);
  EXPECT_EQ(r.closure.order(), static_cast<unsigned long>(oracle::closure_order(G)));
  EXPECT_TRUE(r.closure.contains(G));
  EXPECT_EQ(r.index * G.order(), r.closure.order());
  auto colors = oracle::pair_colors(G.degree(), G.generators());
  for (const auto& g : r.closure.generators())
    EXPECT_TRUE(oracle::preserves(colors, G.degree(), oracle::Images(g.images().begin(), g.images().end())));
}

// split the points into two nonempty G-invariant halves along the orbits
std::pair<std::vector<Point>, std::vector<Point>> split(const PermGroup& G, std::mt19937_64& gen) {
  auto orbs = G.orbits();
  std::vector<Point> a, b;
  std::shuffle(orbs.begin(), orbs.end(), gen);
  std::size_t cut = 1 + gen() % (orbs.size() - 1);
  for (std::size_t i = 0; i < orbs.size(); ++i) (i < cut ? a : b).insert((i < cut ? a : b).end(), orbs[i].begin(), orbs[i].end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return {a, b};
}

}  // namespace

TEST(Closure, SymThreeOnFivePoints) {
  auto r = two_closure(sym3_on_five());
  EXPECT_EQ(r.closure.order(), 12);
  EXPECT_EQ(r.index, 2);
}

TEST(Closure, TwoTransitiveGivesSymmetric) {
  auto r = two_closure(PermGroup::alternating(5));
  EXPECT_EQ(r.closure.order(), 120);
  EXPECT_EQ(two_closure(psl2(7)).closure.order(), 40320);
  EXPECT_EQ(two_closure(mathieu11()).closure.order(), Integer("39916800"));
  EXPECT_EQ(two_closure(PermGroup::alternating(5), {}, false).closure.order(), 120);
}

TEST(Closure, GammaL) {
  auto G = gamma_l1_16();
  auto r = two_closure(G);
  EXPECT_EQ(r.index, 1);
  EXPECT_EQ(r.method, ClosureMethod::Backtrack);
  for (const auto& s : minimal_block_systems(G)) {
    auto ia = induce_on_blocks(G, s);
    if (s.block_count() == 5) EXPECT_EQ(two_closure(ia.block_image).closure.order(), 120);
    else EXPECT_EQ(two_closure(ia.within_block).closure.order(), 120);
  }
}

TEST(Closure, RegularIsClosedWithAndWithoutShortcuts) {
  for (const auto& ng : builtin_groups()) {
    if (ng.group.order() != static_cast<unsigned long>(ng.group.degree()) || ng.group.degree() > 16) continue;
    auto on = two_closure(ng.group);
    auto off = two_closure(ng.group, {}, false);
    EXPECT_EQ(on.method, ClosureMethod::CertifiedEqual) << ng.name;
    EXPECT_EQ(off.method, ClosureMethod::Backtrack) << ng.name;
    EXPECT_EQ(off.index, 1) << ng.name;
  }
}

TEST(Closure, CyclicFourPlusTransposition) {
  auto C4 = cyclic(4);
  auto x = P(4, "(1 3)");
  auto colors = oracle::pair_colors(4, C4.generators());
  bool ref = oracle::preserves(colors, 4, oracle::Images(x.images().begin(), x.images().end()));
  EXPECT_FALSE(ref);
  EXPECT_EQ(closure_membership(C4, x), ref);
  EXPECT_TRUE(closure_membership(C4, P(4, "(1 2 3 4)")));
  EXPECT_EQ(two_closure(abelian({2, 2})).closure.order(), 4);
}

TEST(Closure, DiagonalOnTwoOrbits) {
  PermGroup G(6, {P(6, "(1 2 3)(4 5 6)")});
  auto bound = intransitive_closure_bound(G, std::vector<Point>{0, 1, 2}, std::vector<Point>{3, 4, 5});
  EXPECT_EQ(bound.order(), 9);
  EXPECT_EQ(two_closure(G).closure.order(), 3);
  EXPECT_FALSE(dissection_condition(G, std::vector<Point>{0, 1, 2}, std::vector<Point>{3, 4, 5}));
  EXPECT_THROW(dissection_condition(G, std::vector<Point>{0, 1, 3}, std::vector<Point>{2, 4, 5}),
               PreconditionError);
}

TEST(Closure, AgreesWithOracleOnRandomGroups) {
  std::mt19937_64 gen(31);
  for (int t = 0; t < 60; ++t) expect_closure_matches_oracle(oracle::random_group(3 + t % 5, 1 + t % 3, gen));
  // products of small pieces on separate orbits
  for (int t = 0; t < 30; ++t) {
    std::vector<std::vector<Point>> parts{{0, 1, 2}, {3, 4}, {5, 6}};
    std::vector<Permutation> gens;
    for (int k = 0; k < 1 + t % 3; ++k) gens.push_back(oracle::random_perm_within(parts, 7, gen));
    expect_closure_matches_oracle(PermGroup(7, gens));
  }
}

TEST(Closure, BruteForceAgreesWithOracle) {
  std::mt19937_64 gen(32);
  for (int t = 0; t < 25; ++t) {
    auto G = oracle::random_group(3 + t % 4, 1 + t % 2, gen);
    EXPECT_EQ(brute_force_two_closure(G).order(), static_cast<unsigned long>(oracle::closure_order(G)));
  }
  EXPECT_THROW(brute_force_two_closure(cyclic(12), 9), PreconditionError);
}

TEST(Closure, Idempotent) {
  std::mt19937_64 gen(33);
  for (int t = 0; t < 20; ++t) {
    auto G = oracle::random_group(5 + t % 4, 1 + t % 2, gen);
    auto X = two_closure(G).closure;
    EXPECT_EQ(two_closure(X).index, 1);
  }
  EXPECT_EQ(two_closure(two_closure(sym3_on_five()).closure).index, 1);
}

TEST(Closure, PreservesBlockSystemsAndProjects) {
  std::mt19937_64 gen(34);
  std::size_t seen = 0;
  for (std::size_t n : {4, 5}) {
    auto S = PermGroup::symmetric(n);
    for (int t = 0; t < 25; ++t) {
      PermGroup H(n, {oracle::random_perm(n, gen)});
      auto G = coset_action(S, H).image;
      if (G.degree() < 4 || G.degree() > 30) continue;
      auto X = two_closure(G).closure;
      for (const auto& s : all_block_systems(G)) {
        EXPECT_TRUE(is_block_system(X, s));
        // closure on the blocks sits inside the closure of the block action
        auto top = induce_on_blocks(X, s).block_image;
        auto L = induce_on_blocks(G, s).block_image;
        EXPECT_TRUE(two_closure(L).closure.contains(top));
        ++seen;
      }
    }
  }
  EXPECT_GT(seen, 10u);
}

TEST(Closure, DissectionMatchesDefinition) {
  std::mt19937_64 gen(35);
  int tested = 0;
  while (tested < 40) {
    std::vector<std::vector<Point>> parts{{0, 1, 2}, {3, 4, 5}, {6, 7}};
    std::vector<Permutation> gens;
    for (int k = 0; k < 2; ++k) gens.push_back(oracle::random_perm_within(parts, 8, gen));
    PermGroup G(8, gens);
    if (G.orbits().size() < 2) continue;
    ++tested;
    auto [a, b] = split(G, gen);
    bool def = true;
    for (Point x : a)
      for (Point y : b) {
        std::vector<Point> xy{x, y};
        Integer meet = G.pointwise_stabilizer(xy).order();
        def = def && G.point_stabilizer(x).order() * G.point_stabilizer(y).order() == G.order() * meet;
      }
    EXPECT_EQ(dissection_condition(G, a, b), def);
    // the bound always contains the closure
    auto bound = intransitive_closure_bound(G, a, b);
    EXPECT_TRUE(bound.contains(two_closure(G).closure));
  }
}

TEST(Closure, MembershipMatchesClosure) {
  std::mt19937_64 gen(36);
  for (int t = 0; t < 20; ++t) {
    auto G = oracle::random_group(6, 1, gen);
    auto X = two_closure(G).closure;
    OrbitalPartition op(G);
    for (int k = 0; k < 20; ++k) {
      auto x = oracle::random_perm(6, gen);
      EXPECT_EQ(closure_membership(op, x), X.contains(x));
    }
  }
}

TEST(Closure, BudgetIsReported) {
  Budget b;
  b.max_degree = 4;
  EXPECT_THROW(two_closure(cyclic(6), b), BudgetExceeded);
}
