#include <gtest/gtest.h>

#include "kqtab/error.hpp"
#include "kqtab/verify.hpp"

using namespace kqtab;

namespace {

SequenceTerm term(const char* label, const FgAb2& g) { return {label, 0, g}; }

std::string failures(const std::vector<CheckReport>& reports) {
  std::string out;
  for (const auto& r : reports) {
    if (r.passed) continue;
    out += r.name;
    if (r.counterexample) out += " at n=" + std::to_string(r.counterexample->n) + ": expected " +
                                r.counterexample->expected + ", got " + r.counterexample->actual;
    out += "\n";
  }
  return out;
}

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

TEST(Verify, ForcedSegmentsCutAtZeroAndFiniteToFree) {
  const std::vector<SequenceTerm> seq{term("a", FgAb2::z()), term("b", FgAb2()), term("c", z2()),
                                      term("d", z2()),       term("e", FgAb2()), term("f", FgAb2::z())};
  const auto segs = forced_segments(seq);
  ASSERT_EQ(segs.size(), 1u);
  // the zero groups bounding the piece are not part of it
  ASSERT_EQ(segs[0].size(), 2u);
  EXPECT_EQ(segs[0][0].label, "c");
  EXPECT_EQ(segs[0][1].label, "d");

  // Z/2 -> Z is always zero, so the piece ends at the Z/2.
  const std::vector<SequenceTerm> seq2{term("a", FgAb2()), term("b", FgAb2::cyclic(4)), term("c", z2()),
                                       term("d", FgAb2::z()), term("e", FgAb2::z())};
  const auto segs2 = forced_segments(seq2);
  ASSERT_EQ(segs2.size(), 1u);
  EXPECT_EQ(segs2[0].back().label, "c");

  // Nothing forced: the whole list is open-ended.
  EXPECT_TRUE(forced_segments({term("a", FgAb2::z()), term("b", FgAb2::z())}).empty());
}

TEST(Verify, CheckSequenceFindsBrokenSegment) {
  const std::vector<SequenceTerm> good{term("a", FgAb2()), term("b", z2()), term("c", z2(2)), term("d", z2()),
                                       term("e", FgAb2()), term("f", FgAb2::z())};
  EXPECT_TRUE(check_sequence("good", good, "").passed);
  const std::vector<SequenceTerm> bad{term("a", FgAb2()), term("b", z2()), term("c", z2()), term("d", z2()),
                                      term("e", FgAb2()), term("f", FgAb2::z())};
  const auto rep = check_sequence("bad", bad, "x");
  EXPECT_FALSE(rep.passed);
  ASSERT_TRUE(rep.counterexample);
  EXPECT_EQ(rep.counterexample->params, "x");
}

TEST(Verify, TAndW) {
  const auto rep = check_t_w({2, 3, 4, 5}, 400);
  EXPECT_TRUE(rep.passed) << rep.details;
  EXPECT_FALSE(rep.counterexample);
}

TEST(Verify, SpecExamples) {
  auto reps = run_all(Rationals{}, 3, 64);
  EXPECT_TRUE(all_passed(reps)) << failures(reps);
  reps = run_all(RealQuadratic{2}, 7, 64);
  EXPECT_TRUE(all_passed(reps)) << failures(reps);
  EXPECT_EQ(code_of([] { run_all(RealQuadratic{34}, 3, 64); }), ErrorCode::NotTwoRegular);
  EXPECT_EQ(code_of([] { run_all(Rationals{}, 7, 64); }), ErrorCode::InadmissibleQ);
  EXPECT_EQ(code_of([] { run_all(Rationals{}, 3, 7); }), ErrorCode::DegreeOutOfRange);
}

TEST(Verify, ReportsSortedAndNamed) {
  const auto reps = run_all(Rationals{}, 3, 32);
  ASSERT_FALSE(reps.empty());
  for (std::size_t i = 1; i < reps.size(); ++i) EXPECT_LE(reps[i - 1].name, reps[i].name);
  const auto j = reports_to_json(reps);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), reps.size());
}

TEST(Verify, RegressionFields) {
  const std::vector<FieldSpec> specs{Rationals{},       RealQuadratic{2},  RealQuadratic{3},  RealQuadratic{5},
                                     RealQuadratic{6},  RealQuadratic{10}, RealQuadratic{11}, RealQuadratic{13},
                                     MaxRealCyclo2{2},  MaxRealCyclo2{3},  MaxRealCyclo2{4},  MaxRealCycloOdd{5},
                                     MaxRealCycloOdd{11}};
  for (const auto& spec : specs) {
    const auto q = find_q(spec);
    const auto reps = run_all(spec, q, 64);
    EXPECT_TRUE(all_passed(reps)) << format_field(spec) << "\n" << failures(reps);
  }
  EXPECT_EQ(code_of([] { run_all(RealQuadratic{14}, 3, 64); }), ErrorCode::NotTwoRegular);
}

TEST(Verify, GenericLargeR) {
  for (std::int64_t r : {8, 16}) {
    const FieldSpec spec = Generic{r, 2, 0, true, std::nullopt};
    const auto reps = run_all(spec, 3, 40);
    EXPECT_TRUE(all_passed(reps)) << r << "\n" << failures(reps);
  }
}

TEST(Verify, DetectsPerturbedRow) {
  const auto bad = perturbed(default_tables(), {ColumnId::KQminus, 3}, Mutation::AddZ2);
  const auto reps = run_all(Rationals{}, 3, 64, bad);
  EXPECT_FALSE(all_passed(reps));
  bool has_counterexample = false;
  for (const auto& r : reps) {
    if (!r.passed) {
      EXPECT_TRUE(r.counterexample);
      has_counterexample = true;
    }
  }
  EXPECT_TRUE(has_counterexample);
}
