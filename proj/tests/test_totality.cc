#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tc/actions.hpp"
#include "tc/closure.hpp"
#include "tc/constructions.hpp"
#include "tc/group_io.hpp"
#include "tc/group_ops.hpp"
#include "tc/totality.hpp"

using namespace tc;

namespace {

// subgroups by closing every pair of elements, up to conjugacy
std::size_t subgroup_classes_by_pairs(const PermGroup& G) {
  auto els = oracle::elements(G);
  std::vector<oracle::Images> list(els.begin(), els.end());
  std::set<std::set<oracle::Images>> subs;
  // every subgroup of the groups used here is 2-generated
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = i; j < list.size(); ++j)
      subs.insert(oracle::elements(G.degree(), {Permutation(list[i]), Permutation(list[j])}));
  std::set<std::set<oracle::Images>> reps;
  for (const auto& s : subs) {
    std::set<oracle::Images> best = s;
    for (const auto& g : list) {
      std::set<oracle::Images> c;
      auto gi = Permutation(g).inverse();
      for (const auto& h : s) {
        auto x = Permutation(h).conjugate(gi);
        c.insert(oracle::Images(x.images().begin(), x.images().end()));
      }
      best = std::min(best, c);
    }
    reps.insert(best);
  }
  return reps.size();
}

// re-check a No witness from scratch
void expect_replays(const TotalityWitness& w, const PermGroup& G) {
  auto text = format_group(w.action);
  auto spec = parse_group(text);
  PermGroup A(spec.degree, spec.generators);
  EXPECT_EQ(A.order(), G.order());  // faithful
  auto r = two_closure(A);
  ASSERT_TRUE(r.certified);
  EXPECT_GT(r.index, 1);
  EXPECT_EQ(r.index, w.closure_index);
  std::size_t deg = 0;
  for (const auto& o : w.stabilizer_orders) deg += Integer(G.order() / o).get_ui();
  EXPECT_EQ(deg, A.degree());
}

}  // namespace

TEST(SubgroupClasses, Counts) {
  EXPECT_EQ(SubgroupClassTable(dicyclic(8)).size(), 6u);
  EXPECT_EQ(SubgroupClassTable(cyclic(6)).size(), 4u);
  EXPECT_EQ(SubgroupClassTable(PermGroup::symmetric(3)).size(), 4u);
  EXPECT_EQ(SubgroupClassTable(PermGroup::symmetric(4)).size(), 11u);
  EXPECT_EQ(SubgroupClassTable(PermGroup::alternating(5)).size(), 9u);
  for (const char* name : {"D8", "Q8", "C2xC2", "A4", "D10", "C2xC4", "Dic12", "D12"}) {
    auto G = builtin_group(name);
    EXPECT_EQ(SubgroupClassTable(G).size(), subgroup_classes_by_pairs(G)) << name;
  }
}

TEST(SubgroupClasses, OrderAndCores) {
  SubgroupClassTable t(PermGroup::symmetric(4));
  EXPECT_EQ(t[0].order, 1);
  EXPECT_EQ(t[t.whole()].order, 24);
  for (std::size_t c = 1; c < t.size(); ++c) EXPECT_LE(t[c - 1].order, t[c].order);
  for (std::size_t c = 0; c < t.size(); ++c) {
    EXPECT_EQ(core(t.group(), t[c].rep).order(), t[c].core_order);
    EXPECT_EQ(Integer(static_cast<unsigned long>(t.index(c))) * t[c].order, 24);
  }
}

TEST(Factorization, SymThree) {
  SubgroupClassTable t(PermGroup::symmetric(3));
  auto f = factorization_disproof(t);
  ASSERT_TRUE(f);
  EXPECT_EQ(t[f->h].order * t[f->k].order, 6);
  EXPECT_TRUE(is_factorization(t.group(), t[f->h].rep, t[f->k].rep));
  EXPECT_FALSE(factorization_disproof(SubgroupClassTable(cyclic(6))));
  EXPECT_TRUE(nontrivial_factorization(SubgroupClassTable(cyclic(6))));
  EXPECT_FALSE(nontrivial_factorization(SubgroupClassTable(cyclic(8))));
}

TEST(Factorization, PSL27) {
  SubgroupClassTable t(psl2(7));
  auto f = factorization_disproof(t);
  ASSERT_TRUE(f);
  EXPECT_TRUE(is_factorization(t.group(), t[f->h].rep, t[f->k].rep));
  EXPECT_EQ(f->core_h, 1);
  EXPECT_EQ(f->core_k, 1);
}

TEST(ActionStream, CyclicFourWithRepeats) {
  SubgroupClassTable t(cyclic(4));
  ActionStream s(t, {false, 8});
  std::vector<std::vector<std::size_t>> got;
  std::size_t last = 0;
  while (auto a = s.next()) {
    std::size_t deg = 0;
    for (auto c : *a) deg += t.index(c);
    EXPECT_GE(deg, last);
    EXPECT_LE(deg, 8u);
    last = deg;
    EXPECT_TRUE(t.cores_meet_trivially(*a));
    got.push_back(*a);
  }
  // faithful needs a regular orbit: {4}, {2,4}, {2,2,4}, {4,4}
  EXPECT_EQ(got.size(), 4u);
  EXPECT_THROW(ActionStream(t, {false, 0}), PreconditionError);
}

TEST(ActionStream, DedupeSkipsRegularAndRepeats) {
  SubgroupClassTable t(abelian({2, 2}));
  ActionStream s(t, {true, 0});
  std::vector<std::vector<std::size_t>> got;
  while (auto a = s.next()) got.push_back(*a);
  // three subgroups of order 2; any two of them have trivial intersection
  EXPECT_EQ(got.size(), 4u);
  for (const auto& a : got) {
    EXPECT_GE(a.size(), 2u);
    for (auto c : a) EXPECT_EQ(t[c].order, 2);
  }
}

TEST(ActionStream, ResumeFromPending) {
  SubgroupClassTable t(PermGroup::symmetric(4));
  ActionStream full(t, {true, 0});
  std::vector<std::vector<std::size_t>> all;
  while (auto a = full.next()) all.push_back(*a);
  ActionStream part(t, {true, 0});
  std::vector<std::vector<std::size_t>> head;
  for (int i = 0; i < 5; ++i) head.push_back(*part.next());
  ActionStream rest(t, {true, 0}, part.pending());
  while (auto a = rest.next()) head.push_back(*a);
  EXPECT_EQ(head, all);
}

TEST(Totality, SmallVerdicts) {
  for (const char* name : {"C1", "C2", "C6", "C12", "Q8", "Q16"})
    EXPECT_EQ(is_totally_two_closed(builtin_group(name)).status, TotalityStatus::Yes) << name;
  for (const char* name : {"C2xC2", "C3xC3", "D8", "S3", "A4", "D10", "S4", "A5"})
    EXPECT_EQ(is_totally_two_closed(builtin_group(name)).status, TotalityStatus::No) << name;
}

TEST(Totality, WitnessesReplay) {
  for (const char* name : {"C2xC2", "C2xC4", "D8", "S3", "A4", "D10", "S4", "F20", "A5"}) {
    auto G = builtin_group(name);
    auto v = is_totally_two_closed(G);
    ASSERT_EQ(v.status, TotalityStatus::No) << name;
    ASSERT_TRUE(v.witness) << name;
    expect_replays(*v.witness, G);
  }
}

TEST(Totality, SweepWithoutShortcutsAgrees) {
  for (const char* name : {"S3", "D8", "A4", "C2xC2"}) {
    TotalityOptions opt;
    opt.shortcuts = false;
    auto G = builtin_group(name);
    auto v = is_totally_two_closed(G, opt);
    EXPECT_EQ(v.status, TotalityStatus::No) << name;
    EXPECT_EQ(v.stage, "sweep");
    expect_replays(*v.witness, G);
  }
}

TEST(Totality, YesIsSoundWithoutPruning) {
  // all actions up to degree 2|G|, repeated orbits and regular orbits included
  for (const char* name : {"C4", "C6", "Q8"}) {
    auto G = builtin_group(name);
    TotalityOptions opt;
    opt.shortcuts = false;
    opt.dedupe = false;
    opt.max_degree = 2 * G.order().get_ui();
    auto v = is_totally_two_closed(G, opt);
    EXPECT_EQ(v.status, TotalityStatus::Yes) << name;
    EXPECT_GT(v.actions_tested, 0u);
  }
}

TEST(Totality, ThreadCountDoesNotChangeWitness) {
  auto G = builtin_group("C2xC2xC2");
  TotalityOptions one, many;
  one.threads = 1;
  one.shortcuts = many.shortcuts = false;
  many.threads = 4;
  auto a = is_totally_two_closed(G, one), b = is_totally_two_closed(G, many);
  ASSERT_TRUE(a.witness && b.witness);
  EXPECT_EQ(a.witness->classes, b.witness->classes);
}

TEST(Totality, BudgetLeavesResumableFrontier) {
  auto G = builtin_group("Q8xC3");
  TotalityOptions opt;
  opt.shortcuts = false;
  opt.max_actions = 3;
  opt.threads = 1;
  auto v = is_totally_two_closed(G, opt);
  ASSERT_EQ(v.status, TotalityStatus::Inconclusive);
  ASSERT_FALSE(v.frontier.empty());
  TotalityOptions more = opt;
  more.max_actions = 1000000;
  more.resume = v.frontier;
  auto w = is_totally_two_closed(G, more);
  EXPECT_EQ(w.status, TotalityStatus::Yes);
  TotalityOptions whole = more;
  whole.resume.reset();
  EXPECT_EQ(is_totally_two_closed(G, whole).actions_tested, w.actions_tested);
  more.resume = std::string("{\"group_order\": \"7\"}");
  EXPECT_THROW(is_totally_two_closed(G, more), PreconditionError);
}

TEST(Totality, DuplicateOrbitKeepsClosedness) {
  std::mt19937_64 gen(61);
  for (const char* name : {"S3", "D8", "A4", "Q8", "C2xC4"}) {
    SubgroupClassTable t(builtin_group(name));
    ActionStream s(t, {true, 0});
    std::size_t n = 0;
    while (auto a = s.next()) {
      if (++n > 8) break;
      auto b = *a;
      b.push_back(b[gen() % b.size()]);
      std::sort(b.begin(), b.end());
      bool ca = two_closure(action_on_classes(t, *a)).index == 1;
      bool cb = two_closure(action_on_classes(t, b)).index == 1;
      EXPECT_EQ(ca, cb) << name;
    }
  }
}

TEST(TransitiveReduction, Preconditions) {
  auto A5 = PermGroup::alternating(5);
  auto A6 = PermGroup::alternating(6);
  auto G = direct_product({A5, A6});
  std::vector<Point> first{0, 1, 2, 3, 4}, second{5, 6, 7, 8, 9, 10};
  std::vector<PermGroup> factors{restrict_group(G, first), restrict_group(G, second)};
  // A5 is a section of A6
  EXPECT_TRUE(is_section(A5, A6));
  EXPECT_FALSE(is_section(A6, A5));
  EXPECT_FALSE(is_section(A5, psl2(7)));
  EXPECT_THROW(transitive_reduction_check(G, factors), PreconditionError);
  EXPECT_THROW(transitive_reduction_check(G, {PermGroup::symmetric(5)}), PreconditionError);
}

TEST(TransitiveReduction, FactorizingFactor) {
  auto A5 = PermGroup::alternating(5);
  auto r = transitive_reduction_check(A5, {A5});
  EXPECT_TRUE(r.factor_factorizes);
  EXPECT_EQ(r.factor, 0u);
}

TEST(TransitiveReduction, SimpleFactors) {
  auto f = simple_direct_factors(PermGroup::alternating(5));
  ASSERT_TRUE(f);
  EXPECT_EQ(f->size(), 1u);
  EXPECT_FALSE(simple_direct_factors(PermGroup::symmetric(4)));
  EXPECT_FALSE(simple_direct_factors(cyclic(5)));
  EXPECT_THROW(simple_direct_factors(direct_product({PermGroup::alternating(5), PermGroup::symmetric(5)})),
               BudgetExceeded);
}
