#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tc/permutation.hpp"

using tc::Permutation;

TEST(Permutation, ProductActsOnTheRight) {
  auto a = Permutation::parse_cycles(3, "(1 2)");
  auto b = Permutation::parse_cycles(3, "(2 3)");
  // 1 -a-> 2 -b-> 3
  EXPECT_EQ((a * b)[0], 2u);
  EXPECT_EQ((a * b).to_string(), "(1 3 2)");
  EXPECT_EQ((b * a).to_string(), "(1 2 3)");
}

TEST(Permutation, InverseAndPowers) {
  auto p = Permutation::parse_cycles(7, "(1 2 3 4)(5 6)");
  EXPECT_TRUE((p * p.inverse()).is_identity());
  EXPECT_EQ(p.order(), 4);
  EXPECT_TRUE(p.pow(4).is_identity());
  EXPECT_EQ(p.pow(-1), p.inverse());
  EXPECT_EQ(p.pow(5), p);
  EXPECT_EQ(p.support_size(), 6u);
  EXPECT_EQ(p.cycle_type(), (std::vector<std::size_t>{2, 4}));
}

TEST(Permutation, ConjugateRelabelsCycles) {
  auto p = Permutation::parse_cycles(4, "(1 2 3)");
  auto g = Permutation::parse_cycles(4, "(3 4)");
  EXPECT_EQ(p.conjugate(g).to_string(), "(1 2 4)");
  EXPECT_EQ(p.conjugate(g), g.inverse() * p * g);
}

TEST(Permutation, ParseAndPrint) {
  EXPECT_TRUE(Permutation::parse_cycles(5, "()").is_identity());
  EXPECT_TRUE(Permutation::parse_cycles(5, "").is_identity());
  EXPECT_EQ(Permutation::parse_cycles(5, "(1,3)(2 , 5)").to_string(), "(1 3)(2 5)");
  EXPECT_EQ(Permutation(5).to_string(), "()");
  EXPECT_EQ(Permutation::parse_cycles(3, "(1 2)").to_string(true), "(0 1)");
}

TEST(Permutation, ParseErrorsCarryColumn) {
  try {
    Permutation::parse_cycles(4, "(1 2)(3 9)");
    FAIL();
  } catch (const tc::ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 9u);
  }
  EXPECT_THROW(Permutation::parse_cycles(4, "(1 2"), tc::ParseError);
  EXPECT_THROW(Permutation::parse_cycles(4, "(0 1)"), tc::ParseError);
  EXPECT_THROW(Permutation::parse_cycles(4, "(1 x)"), tc::ParseError);
  EXPECT_THROW(Permutation::parse_cycles(4, "(1 2)(2 3)"), tc::Error);
  EXPECT_THROW(Permutation(std::vector<tc::Point>{0, 0, 1}), tc::PreconditionError);
}

TEST(Permutation, RestrictTo) {
  auto p = Permutation::parse_cycles(6, "(1 2)(4 6 5)");
  std::vector<tc::Point> pts{3, 4, 5};
  EXPECT_EQ(p.restrict_to(pts).to_string(), "(1 3 2)");
  std::vector<tc::Point> bad{0, 2};
  EXPECT_THROW(p.restrict_to(bad), tc::PreconditionError);
}

TEST(Permutation, RandomProductsAgreeWithComposition) {
  std::mt19937_64 gen(7);
  for (int t = 0; t < 200; ++t) {
    auto a = oracle::random_perm(9, gen), b = oracle::random_perm(9, gen), c = oracle::random_perm(9, gen);
    EXPECT_EQ((a * b) * c, a * (b * c));
    auto ab = oracle::compose(oracle::Images(a.images().begin(), a.images().end()),
                              oracle::Images(b.images().begin(), b.images().end()));
    EXPECT_EQ(Permutation(ab), a * b);
    EXPECT_EQ(Permutation::parse_cycles(9, a.to_string()), a);
    EXPECT_EQ(a.hash(), Permutation(oracle::Images(a.images().begin(), a.images().end())).hash());
  }
}
