#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "constructed.hpp"
#include "oracles.hpp"
#include "tc/class_data.hpp"
#include "tc/closure.hpp"
#include "tc/constructions.hpp"
#include "tc/group_ops.hpp"
#include "tc/reduction.hpp"

using namespace tc;

namespace {

Permutation P(std::size_t n, const char* s) { return Permutation::parse_cycles(n, s); }

BlockSystem system_with_blocks(const PermGroup& G, std::size_t count) {
  for (const auto& s : all_block_systems(G))
    if (s.block_count() == count) return s;
  throw Error("no such system");
}

// every normalized v in F_p^n spanning a line fixed by each generator
std::set<std::vector<unsigned>> lines_by_enumeration(const PermGroup& L, unsigned p) {
  const std::size_t n = L.degree();
  std::set<std::vector<unsigned>> out;
  std::vector<unsigned> v(n, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < n && v[i] == p - 1) v[i++] = 0;
    if (i == n) break;
    ++v[i];
    auto first = std::find_if(v.begin(), v.end(), [](unsigned x) { return x != 0; });
    if (*first != 1) continue;
    bool ok = true;
    for (const auto& g : L.generators()) {
      bool some = false;
      for (unsigned lam = 1; lam < p && !some; ++lam) {
        bool all = true;
        for (std::size_t x = 0; x < n && all; ++x) all = v[g[x]] == lam * v[x] % p;
        some = all;
      }
      ok = ok && some;
    }
    if (ok) out.insert(v);
  }
  return out;
}

}  // namespace

TEST(Reduction, GammaLThreeBlocks) {
  auto G = gamma_l1_16();
  auto ctx = make_reduction_context(G, system_with_blocks(G, 3));
  EXPECT_EQ(ctx.kernel.order(), 10);
  EXPECT_EQ(ctx.R.order(), 20);
  EXPECT_EQ(ctx.Y.order(), 120);
  EXPECT_FALSE(ctx.core_free);
  auto rep = crucial_complement(ctx);
  EXPECT_TRUE(rep.two_closed);
  EXPECT_EQ(rep.structure.N.order(), 10);
  EXPECT_EQ(rep.closure.order(), 60);
}

TEST(Reduction, GammaLFiveBlocksNeedsClosedBlockAction) {
  auto G = gamma_l1_16();
  auto ctx = make_reduction_context(G, system_with_blocks(G, 5));
  EXPECT_THROW(crucial_complement(ctx), PreconditionError);
  EXPECT_THROW(make_reduction_context(PermGroup::symmetric(5), BlockSystem{{{0, 1, 2, 3, 4}}}), PreconditionError);
  EXPECT_THROW(make_reduction_context(sym3_on_five(), BlockSystem{{{0, 1}, {2, 3}}}), PreconditionError);
}

TEST(Reduction, AgreesWithOracleOnConstructedGroups) {
  auto cs = cases::imprimitive(5, 12);
  std::mt19937_64 gen(41);
  for (auto [k, n] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 3}, {2, 4}, {3, 2}, {3, 3}, {4, 2}}) {
    auto more = cases::random_wreath(k, n, 4, gen);
    cs.insert(cs.end(), more.begin(), more.end());
  }
  ASSERT_GE(cs.size(), 30u);
  for (const auto& c : cs) {
    auto ctx = make_reduction_context(c.G, c.sigma);
    auto rep = crucial_complement(ctx);
    auto orc = brute_force_two_closure(c.G, 12);
    EXPECT_EQ(rep.closure, orc) << c.label;
    EXPECT_EQ(rep.two_closed, orc.order() == c.G.order()) << c.label;
    EXPECT_TRUE(rep.structure.N.contains(ctx.kernel)) << c.label;
    EXPECT_EQ(rep.closure.order() * ctx.kernel.order(), rep.structure.N.order() * c.G.order()) << c.label;
    if (rep.structure.kind == NKind::Trivial) EXPECT_TRUE(rep.two_closed) << c.label;
  }
}

TEST(Reduction, BlockCriteriaAgreeWithOracle) {
  std::size_t block2 = 0, prime = 0;
  for (const auto& c : cases::imprimitive(6, 12)) {
    auto ctx = make_reduction_context(c.G, c.sigma);
    if (!ctx.core_free) continue;
    bool closed = brute_force_two_closure(c.G, 12).order() == c.G.order();
    if (ctx.block_size() == 2) {
      auto v = maincor_block2(ctx);
      EXPECT_EQ(v.two_closed, closed) << c.label;
      if (v.witness) {
        EXPECT_TRUE(closure_membership(c.G, *v.witness));
        EXPECT_FALSE(c.G.contains(*v.witness));
      }
      ++block2;
    }
    if (is_prime(ctx.block_size())) {
      auto pr = maincor_prime(ctx);
      if (!pr.condition_holds) EXPECT_TRUE(closed) << c.label;
      ++prime;
    }
    auto d = maincor_divisor(ctx);
    if (d.certifies_closed) EXPECT_TRUE(closed) << c.label;
    for (const auto& [j, o] : d.trail) EXPECT_EQ(o % d.gcd, 0);
  }
  EXPECT_GT(block2, 10u);
  EXPECT_GT(prime, 10u);
}

TEST(Reduction, BlockCriteriaPreconditions) {
  auto G = gamma_l1_16();
  auto ctx = make_reduction_context(G, system_with_blocks(G, 3));
  EXPECT_THROW(maincor_block2(ctx), PreconditionError);
  EXPECT_THROW(maincor_prime(ctx), PreconditionError);
}

TEST(Reduction, SubnormalIntersection) {
  EXPECT_EQ(subnormal_intersection(PermGroup::symmetric(5)).order(), 60);
  EXPECT_EQ(subnormal_intersection(PermGroup::symmetric(6)).order(), 360);
  EXPECT_EQ(subnormal_intersection(PermGroup::alternating(5)).order(), 60);
  EXPECT_TRUE(subnormal_intersection(PermGroup::symmetric(4)).is_trivial());
  EXPECT_EQ(subnormal_intersection(dihedral(5)).order(), 5);
  EXPECT_EQ(subnormal_intersection(cyclic(7)).order(), 7);
  EXPECT_TRUE(subnormal_intersection(cyclic(6)).is_trivial());
  EXPECT_EQ(subnormal_intersection(frobenius20()).order(), 5);
}

TEST(Reduction, IsSimple) {
  EXPECT_TRUE(is_simple(PermGroup::alternating(5)));
  EXPECT_TRUE(is_simple(PermGroup::alternating(6)));
  EXPECT_TRUE(is_simple(psl2(7)));
  EXPECT_TRUE(is_simple(cyclic(5)));
  EXPECT_FALSE(is_simple(PermGroup::symmetric(4)));
  EXPECT_FALSE(is_simple(cyclic(6)));
  EXPECT_FALSE(is_simple(PermGroup(3)));
}

TEST(Reduction, OneDimSubmodulesMatchEnumeration) {
  std::mt19937_64 gen(42);
  std::vector<PermGroup> groups{cyclic(3), cyclic(4), cyclic(5), PermGroup::symmetric(4), dihedral(5),
                                abelian({2, 2}), frobenius20(), PermGroup::alternating(5)};
  for (int t = 0; t < 10; ++t) groups.push_back(oracle::random_group(4 + t % 3, 1, gen));
  for (const auto& L : groups)
    for (unsigned p : {2u, 3u, 5u}) {
      if (std::pow(p, L.degree()) > 20000) continue;
      auto lines = one_dim_submodules(L, p);
      std::set<std::vector<unsigned>> got;
      for (const auto& l : lines) {
        got.insert(l.vector);
        EXPECT_EQ(l.eigenvalues.size(), L.generators().size());
      }
      EXPECT_EQ(got.size(), lines.size());
      EXPECT_EQ(got, lines_by_enumeration(L, p)) << L.order() << " mod " << p;
    }
}

TEST(Reduction, OneDimSubmodulesOfRegularCyclic) {
  // C_n splits into n eigenlines when p = 1 mod n
  EXPECT_EQ(one_dim_submodules(cyclic(3), 7).size(), 3u);
  EXPECT_EQ(one_dim_submodules(cyclic(4), 5).size(), 4u);
  EXPECT_EQ(one_dim_submodules(cyclic(3), 2).size(), 1u);
  auto all_ones = one_dim_submodules(PermGroup::symmetric(6), 3);
  ASSERT_EQ(all_ones.size(), 1u);
  EXPECT_EQ(all_ones[0].vector, std::vector<unsigned>(6, 1));
}

TEST(Reduction, Strips) {
  // diagonal A5 on two copies, plus an independent A5
  auto a = P(15, "(1 2 3)(6 7 8)"), b = P(15, "(1 2 3 4 5)(6 7 8 9 10)");
  auto c = P(15, "(11 12 13)"), d = P(15, "(11 12 13 14 15)");
  PermGroup H(15, {a, b, c, d});
  ASSERT_EQ(H.order(), 3600);
  std::vector<std::vector<Point>> factors{{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}, {10, 11, 12, 13, 14}};
  auto strips = strip_decomposition(H, factors);
  ASSERT_EQ(strips.size(), 2u);
  EXPECT_EQ(strips[0].support, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(strips[1].support, (std::vector<std::size_t>{2}));
  EXPECT_EQ(strips[0].group.order(), 60);
  EXPECT_EQ(strips[0].maps.size(), 2u);
  EXPECT_THROW(strip_decomposition(PermGroup::symmetric(5), {{0, 1, 2, 3, 4}}), PreconditionError);
}

TEST(Reduction, ClassifyFullDiagonal) {
  // Sym(4) on the cosets of a 3-cycle: 8 points in 4 blocks of 2
  auto S4 = PermGroup::symmetric(4);
  PermGroup C3(4, {P(4, "(1 2 3)")});
  auto G = coset_action(S4, C3).image;
  auto ctx = make_reduction_context(G, system_with_blocks(G, 4));
  auto rep = crucial_complement(ctx);
  auto orc = brute_force_two_closure(G, 12);
  EXPECT_EQ(rep.closure, orc);
  EXPECT_EQ(rep.two_closed, orc.order() == G.order());
  if (!rep.two_closed) {
    EXPECT_EQ(rep.structure.kind, NKind::FullDiagonal);
    EXPECT_FALSE(rep.structure.diagonal_maps.empty());
  }
}

TEST(Reduction, ProductOneClosureFilter) {
  auto Y = PermGroup::symmetric(3);
  // K = Y x Y: one cross orbital, every pair survives
  EXPECT_EQ(product_one_closure_filter(direct_product({Y, Y}), Y).order(), 36);
  // K trivial: every cross pair is its own orbital
  EXPECT_EQ(product_one_closure_filter(PermGroup(6), Y).order(), 1);
  // K the diagonal Sym(3): orbitals of the diagonal cut the product down
  PermGroup D(6, {P(6, "(1 2)(4 5)"), P(6, "(1 2 3)(4 5 6)")});
  auto F = product_one_closure_filter(D, Y);
  EXPECT_TRUE(F.contains(D));
  EXPECT_LT(F.order(), 36);
}
