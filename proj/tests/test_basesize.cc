#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tc/actions.hpp"
#include "tc/basesize.hpp"
#include "tc/constructions.hpp"
#include "tc/group_io.hpp"
#include "tc/search.hpp"

using namespace tc;

namespace {

Permutation P(std::size_t n, const char* s) { return Permutation::parse_cycles(n, s); }

// least k such that some k points have trivial pointwise stabilizer, by subsets
std::size_t base_size_by_subsets(const PermGroup& G) {
  const std::size_t n = G.degree();
  if (G.is_trivial()) return 0;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<char> pick(n, 0);
    std::fill(pick.end() - static_cast<long>(k), pick.end(), 1);
    do {
      std::vector<Point> s;
      for (Point x = 0; x < n; ++x)
        if (pick[x]) s.push_back(x);
      if (G.pointwise_stabilizer(s).is_trivial()) return k;
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  return n;
}

}  // namespace

TEST(BaseSize, Examples) {
  EXPECT_EQ(exact_base_size(cyclic(12)).exact, 1u);
  EXPECT_EQ(exact_base_size(builtin_group("Q8xC3")).exact, 1u);
  for (std::size_t n = 3; n <= 8; ++n) {
    EXPECT_EQ(exact_base_size(PermGroup::symmetric(n)).exact, n - 1);
    EXPECT_EQ(exact_base_size(PermGroup::alternating(n)).exact, n - 2);
  }
  EXPECT_EQ(exact_base_size(mathieu11()).exact, 4u);
  EXPECT_EQ(exact_base_size(PermGroup(5)).exact, 0u);
}

TEST(BaseSize, J1AtLeastThree) {
  auto J1 = load_group(std::string(TC_DATA_DIR) + "/j1_266.txt");
  auto r = exact_base_size(J1);
  ASSERT_TRUE(r.exact);
  EXPECT_GE(*r.exact, 3u);
  EXPECT_TRUE(J1.pointwise_stabilizer(r.witness_base).is_trivial());
  EXPECT_EQ(r.witness_base.size(), *r.exact);
}

TEST(BaseSize, MatchesSubsetSearch) {
  std::mt19937_64 gen(51);
  for (int t = 0; t < 40; ++t) {
    auto G = oracle::random_group(4 + t % 5, 1 + t % 2, gen);
    auto r = exact_base_size(G);
    ASSERT_TRUE(r.exact);
    EXPECT_EQ(*r.exact, base_size_by_subsets(G));
    EXPECT_TRUE(G.pointwise_stabilizer(r.witness_base).is_trivial());
    EXPECT_LE(r.lower, *r.exact);
  }
}

TEST(BaseSize, BudgetGivesBounds) {
  Budget b;
  b.max_nodes = 1;
  auto r = exact_base_size(PermGroup::alternating(8), b);
  if (!r.exact) {
    EXPECT_LE(r.lower, 6u);
    EXPECT_GE(r.upper, 6u);
  }
}

TEST(Qhat, Examples) {
  auto S4 = PermGroup::symmetric(4);
  auto cd = prime_order_classes(S4);
  EXPECT_EQ(qhat(S4, PermGroup(4), 2, cd), 0);
  // H = G, c = 2: number of prime-order elements, 9 + 8
  EXPECT_EQ(qhat(S4, S4, 2, cd), 17);
  EXPECT_THROW(qhat(S4, S4, 0, cd), PreconditionError);
  EXPECT_THROW(qhat(PermGroup::alternating(4), S4, 2, cd), PreconditionError);
}

TEST(Qhat, ClassIntersectionCount) {
  auto S4 = PermGroup::symmetric(4);
  PermGroup C4(4, {P(4, "(1 2 3 4)")});
  EXPECT_EQ(class_intersection_count(S4, C4, P(4, "(1 2)(3 4)")), 1);
  EXPECT_EQ(class_intersection_count(S4, C4, P(4, "(1 2)")), 0);
  EXPECT_EQ(class_intersection_count(S4, C4, P(4, "(1 2 3)")), 0);
  auto Z = cyclic(6);
  auto z = Z.generators()[0].pow(3);
  EXPECT_EQ(class_intersection_count(Z, Z, z), 1);
  EXPECT_THROW(class_intersection_count(S4, C4, P(4, "(1 2 3 4)")), PreconditionError);
}

TEST(Qhat, MonotoneUnderShrinkingH) {
  std::mt19937_64 gen(52);
  for (auto G : {PermGroup::symmetric(5), psl2(7), PermGroup::alternating(6)}) {
    auto cd = prime_order_classes(G);
    for (int t = 0; t < 6; ++t) {
      PermGroup H(G.degree(), {G.random_element(), G.random_element()});
      PermGroup K(G.degree(), {H.random_element()});
      for (unsigned c : {1u, 2u, 3u}) EXPECT_LE(qhat(G, K, c, cd), qhat(G, H, c, cd));
    }
  }
}

TEST(Qhat, SoundOnCosetActions) {
  std::mt19937_64 gen(53);
  std::size_t hits = 0;
  for (auto G : {PermGroup::symmetric(5), psl2(7), PermGroup::alternating(6), frobenius20()}) {
    auto cd = prime_order_classes(G);
    for (int t = 0; t < 8; ++t) {
      PermGroup H(G.degree(), {G.random_element()});
      if (qhat(G, H, 2, cd) >= 1) continue;
      auto A = coset_action(G, H).image;
      auto r = exact_base_size(A);
      ASSERT_TRUE(r.exact);
      EXPECT_LE(*r.exact, 2u);
      ++hits;
    }
  }
  EXPECT_GT(hits, 0u);
}

TEST(Qhat, BaseBound) {
  auto G = PermGroup::alternating(6);
  auto cd = prime_order_classes(G);
  PermGroup H(6, {P(6, "(1 2 3 4 5)")});
  auto b = qhat_base_bound(G, H, cd);
  ASSERT_TRUE(b);
  EXPECT_LT(b->second, 1);
  EXPECT_EQ(b->second, qhat(G, H, b->first, cd));
  if (b->first > 1) EXPECT_GE(qhat(G, H, b->first - 1, cd), 1);
}

TEST(TwoPointGcd, Examples) {
  EXPECT_EQ(two_point_stabilizer_gcd(cyclic(7)).gcd, 1);
  auto S5 = PermGroup::symmetric(5);
  // Sym(4) point stabilizer, two-point stabilizers Sym(3)
  EXPECT_EQ(two_point_stabilizer_gcd(S5).gcd, 6);
  auto J1 = load_group(std::string(TC_DATA_DIR) + "/j1_266.txt");
  auto r = two_point_stabilizer_gcd(J1);
  EXPECT_EQ(r.gcd, 1);
  EXPECT_EQ(r.trail.size(), 4u);
  EXPECT_THROW(two_point_stabilizer_gcd(sym3_on_five()), PreconditionError);
}

TEST(TwoPointGcd, DividesEachOrder) {
  std::mt19937_64 gen(54);
  for (int t = 0; t < 20; ++t) {
    auto G = oracle::random_group(6 + t % 3, 2, gen);
    if (!G.is_transitive()) continue;
    auto r = two_point_stabilizer_gcd(G);
    auto M = G.point_stabilizer(0);
    for (const auto& [b, o] : r.trail) {
      std::vector<Point> pair{0, b};
      EXPECT_EQ(o, G.pointwise_stabilizer(pair).order());
      EXPECT_EQ(o % r.gcd, 0);
    }
  }
}

TEST(BaseSize, SubgroupOfBaseTwoStabilizer) {
  // faithful coset actions of base size 2 keep it when the stabilizer shrinks
  std::mt19937_64 gen(55);
  std::size_t seen = 0;
  for (auto G : {PermGroup::symmetric(5), psl2(7), PermGroup::alternating(6)}) {
    for (int t = 0; t < 10; ++t) {
      PermGroup H(G.degree(), {G.random_element(), G.random_element()});
      if (H.order() == G.order()) continue;
      auto A = coset_action(G, H);
      if (!A.kernel.is_trivial()) continue;
      auto r = exact_base_size(A.image);
      if (!r.exact || *r.exact > 2) continue;
      PermGroup K(G.degree(), {H.random_element()});
      auto B = coset_action(G, K).image;
      EXPECT_LE(*exact_base_size(B).exact, 2u);
      ++seen;
    }
  }
  EXPECT_GT(seen, 0u);
}

TEST(ReferenceTable, PublishedValues) {
  const auto& t = reference_table();
  EXPECT_EQ(t.rows.size(), 16u);
  EXPECT_EQ(t.find("J1", "L2(11)")->g, 1);
  EXPECT_EQ(t.find("J3", "L2(16).2")->g, 2);
  EXPECT_EQ(t.find("J4", "2^11:M24")->g, 24);
  EXPECT_EQ(t.find("Ly", "G2(5)")->g, 48);
  EXPECT_EQ(t.find("M", "2.B")->g, Integer("2090188800"));
  EXPECT_EQ(t.find("J1", "nothing"), nullptr);
  EXPECT_EQ(t.is_section("Th", "M"), true);
  EXPECT_EQ(t.is_section("J1", "J4"), false);
  EXPECT_FALSE(t.is_section("A5", "M").has_value());
}

TEST(ReferenceTable, DataFileAgrees) {
  auto file = load_reference_table(std::string(TC_DATA_DIR) + "/reference_data.json");
  const auto& t = reference_table();
  EXPECT_EQ(file.version, t.version);
  ASSERT_EQ(file.rows.size(), t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_EQ(file.rows[i].group, t.rows[i].group);
    EXPECT_EQ(file.rows[i].subgroup, t.rows[i].subgroup);
    EXPECT_EQ(file.rows[i].g, t.rows[i].g);
  }
  ASSERT_EQ(file.sections.size(), t.sections.size());
  for (std::size_t i = 0; i < t.sections.size(); ++i) EXPECT_EQ(file.sections[i].is_section, t.sections[i].is_section);
  EXPECT_EQ(reference_table_to_json(file), reference_table_to_json(t));
  EXPECT_THROW(parse_reference_table("{\"version\": \"1\"}"), ParseError);
}

TEST(ReferenceTable, J1RowMatchesComputation) {
  auto J1 = load_group(std::string(TC_DATA_DIR) + "/j1_266.txt");
  EXPECT_EQ(two_point_stabilizer_gcd(J1).gcd, reference_table().find("J1", "L2(11)")->g);
}
