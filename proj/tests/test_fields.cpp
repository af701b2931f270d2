#include <gtest/gtest.h>

#include <functional>

#include "kqtab/error.hpp"
#include "kqtab/fields.hpp"
#include "kqtab/numtheory.hpp"

using namespace kqtab;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Parse;
}

}  // namespace

TEST(Fields, RealEmbeddings) {
  EXPECT_EQ(real_embeddings(MaxRealCyclo2{4}), 4);
  EXPECT_EQ(real_embeddings(MaxRealCycloOdd{11}), 5);
  EXPECT_EQ(real_embeddings(RealQuadratic{6}), 2);
  EXPECT_EQ(real_embeddings(Rationals{}), 1);
  EXPECT_EQ(real_embeddings(Generic{7, 2, 0, true, std::nullopt}), 7);
  EXPECT_EQ(code_of([] { real_embeddings(RealQuadratic{12}); }), ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of([] { real_embeddings(MaxRealCycloOdd{15}); }), ErrorCode::InvalidSpec);
}

TEST(Fields, AParam) {
  EXPECT_EQ(a_param(RealQuadratic{2}), 3);
  EXPECT_EQ(a_param(MaxRealCyclo2{5}), 5);
  EXPECT_EQ(a_param(RealQuadratic{7}), 2);
  EXPECT_EQ(a_param(Rationals{}), 2);
  EXPECT_EQ(a_param(MaxRealCycloOdd{5}), 2);
  // Q(zeta 8)+ is Q(sqrt 2): both descriptions agree.
  EXPECT_EQ(a_param(MaxRealCyclo2{3}), a_param(RealQuadratic{2}));
  EXPECT_EQ(real_embeddings(MaxRealCyclo2{3}), real_embeddings(RealQuadratic{2}));
}

TEST(Fields, RegularityCriterionExamples) {
  EXPECT_TRUE(is_two_regular(RealQuadratic{5}).regular);
  EXPECT_FALSE(is_two_regular(RealQuadratic{34}).regular);
  EXPECT_FALSE(is_two_regular(MaxRealCycloOdd{29}).regular);
  EXPECT_TRUE(is_two_regular(MaxRealCycloOdd{11}).regular);
  EXPECT_TRUE(is_two_regular(MaxRealCycloOdd{83}).regular);   // Sophie Germain type, 83 = 3 mod 8
  EXPECT_TRUE(is_two_regular(MaxRealCycloOdd{107}).regular);  // 107 = 3 mod 8
  EXPECT_TRUE(is_two_regular(MaxRealCycloOdd{179}).regular);
  EXPECT_TRUE(is_two_regular(Rationals{}).regular);
  EXPECT_TRUE(is_two_regular(MaxRealCyclo2{9}).regular);
  EXPECT_EQ(code_of([] { is_two_regular(MaxRealCycloOdd{7}); }), ErrorCode::NotPrimitiveRoot);
  EXPECT_FALSE(is_two_regular(Generic{2, 2, 1, true, std::nullopt}).regular);
  EXPECT_TRUE(is_two_regular(Generic{2, 2, 0, true, std::nullopt}).regular);
  EXPECT_FALSE(is_two_regular(Generic{2, 2, 0, std::nullopt, std::nullopt}).regular);
  EXPECT_FALSE(is_two_regular(Generic{2, 2, 0, std::nullopt, RegularityInvariants{1, false, true}}).regular);
}

TEST(Fields, OracleExamples) {
  const auto o10 = two_regular_oracle(10);
  EXPECT_TRUE(o10.two_regular);
  EXPECT_EQ(o10.dyadic_count, 1);
  EXPECT_EQ(o10.pic_odd, Tri::True);

  const auto o34 = two_regular_oracle(34);
  EXPECT_FALSE(o34.two_regular);
  ASSERT_FALSE(o34.reasons.empty());
  EXPECT_EQ(o34.reasons.front(), "Pic(R_F) has even order");

  const auto o7 = two_regular_oracle(7);
  EXPECT_FALSE(o7.two_regular);
  EXPECT_EQ(o7.pic_odd, Tri::True);
  EXPECT_EQ(o7.units_indep_signs, Tri::False);

  const auto o17 = two_regular_oracle(17);
  EXPECT_FALSE(o17.two_regular);
  EXPECT_EQ(o17.dyadic_count, 2);
}

TEST(Fields, CriterionAgreesWithOracle) {
  for (std::int64_t d = 2; d <= 200; ++d) {
    if (!nt::is_squarefree(static_cast<std::uint64_t>(d))) continue;
    const auto inv = two_regular_oracle(d);
    EXPECT_EQ(is_two_regular(RealQuadratic{d}).regular, inv.two_regular) << d;
    if (inv.two_regular) {
      EXPECT_EQ(inv.dyadic_count, 1);
      EXPECT_EQ(inv.pic_odd, Tri::True);
      EXPECT_EQ(inv.units_indep_signs, Tri::True);
      EXPECT_EQ(inv.narrow_pic_odd, Tri::True);
    }
  }
}

TEST(Fields, AdmissibleQ) {
  EXPECT_TRUE(is_admissible_q(3, Rationals{}));
  EXPECT_FALSE(is_admissible_q(7, Rationals{}));
  EXPECT_FALSE(is_admissible_q(9, Rationals{}));
  EXPECT_EQ(find_q(RealQuadratic{2}), 7);
  EXPECT_EQ(find_q(Rationals{}), 3);
  EXPECT_EQ(find_q_for_a(4), 17);
  EXPECT_EQ(find_q_for_a(5), 31);
  for (std::int64_t a = 2; a <= 20; ++a) {
    const auto q = find_q_for_a(a);
    EXPECT_TRUE(is_admissible_q_for_a(q, a));
    for (std::int64_t p = 3; p < q; ++p) EXPECT_FALSE(is_admissible_q_for_a(p, a)) << a << " " << p;
  }
  for (std::int64_t d : {3, 5, 6, 10, 11, 13}) {
    const auto q = find_q(RealQuadratic{d});
    EXPECT_TRUE(q % 8 == 3 || q % 8 == 5);
  }
  for (std::int64_t q = 3; q < 500; ++q) {
    if (is_admissible_q_for_a(q, 3)) EXPECT_TRUE(nt::is_prime(static_cast<std::uint64_t>(q)) && q % 2 == 1);
  }
}

TEST(Fields, ParseAndFormat) {
  EXPECT_EQ(parse_field("Q"), FieldSpec(Rationals{}));
  EXPECT_EQ(parse_field("Q(sqrt 6)"), FieldSpec(RealQuadratic{6}));
  EXPECT_EQ(parse_field("Q(zeta 2^4)+"), FieldSpec(MaxRealCyclo2{4}));
  EXPECT_EQ(parse_field("Q(zeta 11)+"), FieldSpec(MaxRealCycloOdd{11}));
  EXPECT_EQ(parse_field("generic r=3 a=2 regular"), FieldSpec(Generic{3, 2, 0, true, std::nullopt}));
  EXPECT_EQ(code_of([] { parse_field("Q(i)"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_field("Q(sqrt 8)"); }), ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of([] { parse_field("generic r=3"); }), ErrorCode::Parse);
  for (const char* text : {"Q", "Q(sqrt 10)", "Q(zeta 2^7)+", "Q(zeta 59)+", "generic r=2 a=4 c=1 not-regular"}) {
    EXPECT_EQ(format_field(parse_field(text)), text);
  }
}

TEST(Fields, Bokstedt) {
  EXPECT_TRUE(bokstedt_cartesian(Rationals{}));
  EXPECT_FALSE(bokstedt_cartesian(RealQuadratic{34}));
  EXPECT_TRUE(bokstedt_cartesian(MaxRealCyclo2{3}));
}
