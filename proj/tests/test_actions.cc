#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tc/actions.hpp"
#include "tc/constructions.hpp"
#include "tc/group_ops.hpp"

using namespace tc;

namespace {

Permutation P(std::size_t n, const char* s) { return Permutation::parse_cycles(n, s); }

std::vector<std::size_t> block_sizes(const std::vector<BlockSystem>& v) {
  std::vector<std::size_t> s;
  for (const auto& b : v) s.push_back(b.block_size());
  std::sort(s.begin(), s.end());
  return s;
}

// partition preserved by every generator, checked on raw images
bool invariant(const PermGroup& G, const BlockSystem& sigma) {
  auto of = sigma.block_of(G.degree());
  for (const auto& g : G.generators())
    for (const auto& b : sigma.blocks)
      for (Point x : b)
        if (of[g[x]] != of[g[b.front()]]) return false;
  return true;
}

}  // namespace

TEST(CosetAction, NaturalActionFromPointStabilizer) {
  auto S5 = PermGroup::symmetric(5);
  auto ca = coset_action(S5, S5.point_stabilizer(0));
  EXPECT_EQ(ca.image.degree(), 5u);
  EXPECT_EQ(ca.image.order(), 120);
  EXPECT_TRUE(ca.kernel.is_trivial());
  EXPECT_EQ(ca.image.generators().size(), S5.generators().size());
}

TEST(CosetAction, KernelIsCore) {
  auto S4 = PermGroup::symmetric(4);
  PermGroup D8(4, {P(4, "(1 2 3 4)"), P(4, "(1 3)")});
  auto ca = coset_action(S4, D8);
  EXPECT_EQ(ca.image.degree(), 3u);
  EXPECT_EQ(ca.image.order(), 6);
  EXPECT_EQ(ca.kernel.order(), 4);
  EXPECT_EQ(ca.kernel, core(S4, D8));
  EXPECT_EQ(ca.coset_reps.size(), 3u);
}

TEST(CosetAction, StabilizerOfCosetZeroIsH) {
  std::mt19937_64 gen(21);
  for (int t = 0; t < 20; ++t) {
    auto G = oracle::random_group(6, 2, gen);
    auto H = PermGroup(6, {G.random_element()});
    auto ca = coset_action(G, H);
    EXPECT_EQ(ca.image.order() * ca.kernel.order(), G.order());
    EXPECT_EQ(Integer(static_cast<unsigned long>(ca.image.degree())) * H.order(), G.order());
    EXPECT_TRUE(ca.image.is_transitive());
    // generators of H fix coset 0
    auto imgs = coset_action_images(G, H);
    CombinedAction comb(G, imgs);
    EXPECT_EQ(comb.preimage_of_stabilizer(0), H);
  }
}

TEST(CosetAction, PermutationalEquivalence) {
  auto S4 = PermGroup::symmetric(4);
  PermGroup C4(4, {P(4, "(1 2 3 4)")});
  PermGroup V(4, {P(4, "(1 2)(3 4)"), P(4, "(1 3)(2 4)")});
  auto a = coset_action(S4, C4).image;
  auto b = coset_action(S4, conjugate_group(C4, P(4, "(1 2)"))).image;
  auto c = coset_action(S4, V).image;
  EXPECT_TRUE(permutationally_equivalent(S4, a, b));
  EXPECT_FALSE(permutationally_equivalent(S4, a, c));
  // same degree and image order, different stabilizer classes
  PermGroup C2a(4, {P(4, "(1 2)")});
  PermGroup C2b(4, {P(4, "(1 2)(3 4)")});
  EXPECT_FALSE(permutationally_equivalent(S4, coset_action(S4, C2a).image, coset_action(S4, C2b).image));
}

TEST(Blocks, CyclicFour) {
  auto sys = minimal_block_systems(cyclic(4));
  ASSERT_EQ(sys.size(), 1u);
  EXPECT_EQ(sys[0].blocks, (std::vector<std::vector<Point>>{{0, 2}, {1, 3}}));
}

TEST(Blocks, GammaL) {
  auto G = gamma_l1_16();
  auto sys = minimal_block_systems(G);
  EXPECT_EQ(block_sizes(sys), (std::vector<std::size_t>{3, 5}));
  for (const auto& s : sys) {
    EXPECT_TRUE(invariant(G, s));
    EXPECT_TRUE(is_block_system(G, s));
    EXPECT_EQ(s.block_size() * s.block_count(), 15u);
  }
}

TEST(Blocks, AllSystems) {
  EXPECT_EQ(block_sizes(all_block_systems(cyclic(6))), (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(block_sizes(all_block_systems(abelian({2, 2}))), (std::vector<std::size_t>{2, 2, 2}));
  EXPECT_TRUE(all_block_systems(PermGroup::symmetric(5)).empty());
  EXPECT_TRUE(all_block_systems(psl2(7)).empty());
  EXPECT_EQ(all_block_systems(cyclic(8)).size(), 2u);
  // blocks above {0, 4} in C8: sizes 2 and 4
  EXPECT_EQ(block_sizes(block_systems_above(cyclic(8), {0, 4})), (std::vector<std::size_t>{2, 4}));
  EXPECT_EQ(block_sizes(block_systems_above(cyclic(8), {0, 2})), (std::vector<std::size_t>{4}));
}

TEST(Blocks, MinimalBlockFromSeed) {
  auto b = minimal_block(cyclic(6), {2});
  EXPECT_EQ(b.block_size(), 3u);
  EXPECT_EQ(b.blocks[0], (std::vector<Point>{0, 2, 4}));
  EXPECT_EQ(minimal_block(PermGroup::symmetric(4), {1}).block_count(), 1u);
}

TEST(Blocks, RandomTransitiveGroupsAgreeWithBruteForce) {
  // every partition of 6 points into equal blocks, filtered by invariance
  std::mt19937_64 gen(4);
  std::vector<std::vector<std::vector<Point>>> parts;
  std::vector<Point> pts{0, 1, 2, 3, 4, 5};
  std::set<std::vector<std::vector<Point>>> all;
  do {
    for (std::size_t k : {2, 3}) {
      std::vector<std::vector<Point>> p;
      for (std::size_t i = 0; i < 6; i += k) {
        std::vector<Point> b(pts.begin() + static_cast<long>(i), pts.begin() + static_cast<long>(i + k));
        std::sort(b.begin(), b.end());
        p.push_back(b);
      }
      std::sort(p.begin(), p.end());
      all.insert(p);
    }
  } while (std::next_permutation(pts.begin(), pts.end()));
  int tested = 0;
  while (tested < 25) {
    auto G = oracle::random_group(6, 1 + tested % 2, gen);
    if (!G.is_transitive()) continue;
    ++tested;
    std::size_t expected = 0;
    for (const auto& p : all) expected += invariant(G, BlockSystem{p});
    EXPECT_EQ(all_block_systems(G).size(), expected);
  }
}

TEST(InducedAction, GammaL) {
  auto G = gamma_l1_16();
  for (const auto& s : minimal_block_systems(G)) {
    auto ia = induce_on_blocks(G, s);
    EXPECT_EQ(ia.block_image.order() * ia.kernel.order(), G.order());
    EXPECT_EQ(ia.block_image.degree(), s.block_count());
    EXPECT_EQ(ia.within_block.degree(), s.block_size());
    if (s.block_count() == 5) {
      EXPECT_EQ(ia.block_image.order(), 20);
      EXPECT_EQ(ia.kernel.order(), 3);
    } else {
      EXPECT_EQ(ia.block_image.order(), 6);
      EXPECT_EQ(ia.within_block.order(), 20);
    }
  }
}

TEST(InducedAction, CyclicSix) {
  auto G = cyclic(6);
  for (const auto& s : all_block_systems(G)) {
    if (s.block_count() != 3) continue;
    auto ia = induce_on_blocks(G, s);
    EXPECT_EQ(ia.block_image.order(), 3);
    EXPECT_EQ(ia.kernel.order(), 2);
    EXPECT_EQ(ia.within_block.order(), 2);
    EXPECT_EQ(ia.block_stabilizer.order(), 2);
  }
}

TEST(InducedAction, OrderIdentityOnCosetActions) {
  std::mt19937_64 gen(8);
  auto S5 = PermGroup::symmetric(5);
  int tested = 0;
  for (int t = 0; t < 60 && tested < 20; ++t) {
    PermGroup H(5, {oracle::random_perm(5, gen)});
    auto A = coset_action(S5, H).image;
    if (A.degree() > 60) continue;
    for (const auto& s : all_block_systems(A)) {
      auto ia = induce_on_blocks(A, s);
      EXPECT_EQ(ia.block_image.order() * ia.kernel.order(), A.order());
      EXPECT_EQ(ia.block_stabilizer.order() * static_cast<unsigned long>(s.block_count()), A.order());
      ++tested;
    }
  }
  EXPECT_GT(tested, 0);
}
