#include <gtest/gtest.h>

#include <random>

#include "kqtab/abgroup.hpp"
#include "kqtab/error.hpp"

using namespace kqtab;

namespace {

FgAb2 random_group(std::mt19937& rng) {
  std::uniform_int_distribution<int> rank(0, 3), count(0, 3), exp(1, 6);
  std::vector<std::uint64_t> t;
  for (int i = count(rng); i > 0; --i) t.push_back(std::uint64_t{1} << exp(rng));
  return FgAb2(static_cast<unsigned>(rank(rng)), t);
}

}  // namespace

TEST(AbGroup, ConstructionCanonicalizes) {
  FgAb2 g(1, {16, 2, 4});
  EXPECT_EQ(g.torsion(), (std::vector<std::uint64_t>{2, 4, 16}));
  EXPECT_EQ(g, FgAb2(1, {4, 16, 2}));
  EXPECT_THROW(FgAb2(0, {6}), Error);
  EXPECT_THROW(FgAb2(0, {1}), Error);
  EXPECT_TRUE(FgAb2().is_zero());
  EXPECT_EQ(FgAb2::cyclic(1), FgAb2());
}

TEST(AbGroup, DirectSumExamples) {
  EXPECT_EQ(direct_sum(FgAb2::z(), z2()), FgAb2(1, {2}));
  const FgAb2 g(2, {2, 8});
  EXPECT_EQ(direct_sum(FgAb2(), g), g);
  EXPECT_EQ(direct_sum(FgAb2(1, {2}), FgAb2(1, {16})), FgAb2(2, {2, 16}));
}

TEST(AbGroup, NCopies) {
  EXPECT_EQ(n_copies(3, z2()), FgAb2(0, {2, 2, 2}));
  EXPECT_EQ(n_copies(0, FgAb2::z()), FgAb2());
  EXPECT_EQ(n_copies(2, FgAb2(1, {2})), FgAb2(2, {2, 2}));
}

TEST(AbGroup, SumIsCommutativeAndAssociative) {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    const auto a = random_group(rng), b = random_group(rng), c = random_group(rng);
    EXPECT_EQ(direct_sum(a, b), direct_sum(b, a));
    EXPECT_EQ(direct_sum(direct_sum(a, b), c), direct_sum(a, direct_sum(b, c)));
    EXPECT_EQ(complement(direct_sum(a, b), b), a);
    EXPECT_TRUE(ses_consistent(a, direct_sum(a, c), c));
  }
}

TEST(AbGroup, Complement) {
  EXPECT_EQ(complement(FgAb2(2, {2, 4}), FgAb2(1, {4})), FgAb2(1, {2}));
  EXPECT_THROW(complement(FgAb2(0, {4}), z2()), Error);
  EXPECT_THROW(complement(FgAb2(), FgAb2::z()), Error);
}

TEST(AbGroup, SesConsistent) {
  EXPECT_TRUE(ses_consistent(FgAb2::free(2), FgAb2(2, {2}), z2(3)));
  const FgAb2 g(1, {8});
  EXPECT_TRUE(ses_consistent(FgAb2(), g, g));
  EXPECT_FALSE(ses_consistent(FgAb2::cyclic(4), z2(), FgAb2()));
  // Z/2 -> Z/4 -> Z/2 is the non-split case; orders still telescope.
  EXPECT_TRUE(ses_consistent(z2(), FgAb2::cyclic(4), z2()));
  EXPECT_FALSE(ses_consistent(z2(), FgAb2::cyclic(16), z2()));
}

TEST(AbGroup, ExactWindow) {
  EXPECT_TRUE(exact_window_check({{FgAb2(), z2(), z2(2), z2(), FgAb2()}, true}));
  EXPECT_TRUE(exact_window_check({{FgAb2(), FgAb2::z(), FgAb2::free(2), FgAb2::z(), FgAb2()}, true}));
  EXPECT_FALSE(exact_window_check({{FgAb2(), z2(), z2(), z2(), FgAb2()}, true}));
  EXPECT_THROW(exact_window_check({{}, true}), Error);

  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_group(rng);
    EXPECT_TRUE(exact_window_check({{FgAb2(), g, g, FgAb2()}, true}));
    if (!g.is_zero()) EXPECT_FALSE(exact_window_check({{FgAb2(), g, FgAb2()}, true}));
  }
}

TEST(AbGroup, FormatAndParse) {
  EXPECT_EQ(format_group(FgAb2(2, {2})), "Z^2 + Z/2");
  EXPECT_EQ(format_group(FgAb2()), "0");
  EXPECT_EQ(format_group(FgAb2(1, {2, 2, 2, 16})), "Z + (Z/2)^3 + Z/16");
  EXPECT_EQ(format_group(FgAb2(2, {2, 16})), "Z^2 + Z/2 + Z/16");
  EXPECT_EQ(group_to_json(FgAb2::cyclic(16)), (nlohmann::json{{"rank", 0}, {"torsion", {16}}}));

  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    const auto g = random_group(rng);
    EXPECT_EQ(parse_group(format_group(g)), g) << format_group(g);
    EXPECT_EQ(group_from_json(group_to_json(g)), g);
  }
  EXPECT_THROW(parse_group("Z/3"), Error);
  EXPECT_THROW(parse_group("Q"), Error);
}
