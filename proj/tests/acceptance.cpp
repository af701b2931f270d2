// Acceptance criteria 1-10. Prints one line per criterion:
//   criterion N: PASS|FAIL (<ms> ms) <detail>
// With arguments, only the listed criteria run. Exit status is nonzero if any
// selected criterion fails.

#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kqtab/adams.hpp"
#include "kqtab/error.hpp"
#include "kqtab/fields.hpp"
#include "kqtab/numtheory.hpp"
#include "kqtab/tables.hpp"
#include "kqtab/verify.hpp"

using namespace kqtab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failures.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++cases_;
    if (ok) return;
    ++failed_;
    if (failed_ <= 3) first_ += (first_.empty() ? "" : "; ") + what;
  }
  Outcome outcome(const std::string& label) const {
    std::ostringstream s;
    s << cases_ << " " << label;
    if (failed_) s << ", " << failed_ << " failed: " << first_;
    return {failed_ == 0, s.str()};
  }

 private:
  std::size_t cases_ = 0, failed_ = 0;
  std::string first_;
};

std::string g(const FgAb2& x) { return format_group(x); }

bool squarefree(std::int64_t d) {
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

Outcome criterion1() {
  const FieldSpec q = Rationals{};
  Tally t;
  auto eq = [&t](const FgAb2& got, const char* want, const char* what) {
    t.expect(got == parse_group(want), std::string(what) + " = " + g(got) + ", want " + want);
  };
  eq(kq_rf(1, 1, q), "(Z/2)^3", "KQ+_1");
  eq(kq_rf(3, 1, q), "Z/16", "KQ+_3");
  eq(kq_rf(3, -1, q), "Z/16", "KQ-_3");
  eq(k_rf(3, q), "Z/16", "K_3");
  eq(kq_rf(0, -1, q), "Z", "KQ-_0");
  t.expect(a_param(q) == 2 && real_embeddings(q) == 1 && find_q(q) == 3, "r, a_F, q");
  return t.outcome("golden values for Q");
}

Outcome criterion2() {
  Tally t;
  std::size_t undecided = 0;
  for (std::int64_t d = 2; d <= 200; ++d) {
    if (!squarefree(d)) continue;
    try {
      const auto inv = two_regular_oracle(d);
      t.expect(inv.two_regular == is_two_regular(RealQuadratic{d}).regular, "d=" + std::to_string(d) + " disagree");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Undecided) throw;
      ++undecided;
    }
  }
  for (std::int64_t d : {2, 3, 5, 6, 10, 11, 13, 14}) {
    t.expect(is_two_regular(RealQuadratic{d}).regular, "d=" + std::to_string(d) + " expected regular, criterion says not");
    t.expect(two_regular_oracle(d).two_regular, "d=" + std::to_string(d) + " expected regular, oracle says not");
  }
  for (std::int64_t d : {7, 17, 33, 34}) {
    t.expect(!is_two_regular(RealQuadratic{d}).regular, "d=" + std::to_string(d) + " expected not regular");
    t.expect(!two_regular_oracle(d).two_regular, "d=" + std::to_string(d) + " oracle expected not regular");
  }
  const auto o7 = two_regular_oracle(7), o34 = two_regular_oracle(34);
  t.expect(!o7.reasons.empty() && o7.reasons.front() == "units of R_F do not have independent signs", "d=7 reason");
  t.expect(!o34.reasons.empty() && o34.reasons.front() == "Pic(R_F) has even order", "d=34 reason");
  return t.outcome("checks, " + std::to_string(undecided) + " undecided by the oracle");
}

Outcome criterion3() {
  Tally t;
  for (std::uint64_t q = 3; q <= 99; q += 2) {
    for (unsigned m = 1; m <= 64; ++m) {
      std::uint64_t p = 1;
      for (unsigned i = 0; i < m; ++i) p *= q;  // mod 2^64
      const std::uint64_t want = std::uint64_t{1} << std::countr_zero(p - 1);
      t.expect(nt::val2_q_power(static_cast<std::int64_t>(q), m) == want,
               "q=" + std::to_string(q) + " m=" + std::to_string(m));
    }
  }
  return t.outcome("(q, m) pairs against 64-bit modular powers");
}

Outcome criterion4() {
  Tally t;
  for (std::int64_t a = 2; a <= 5; ++a) {
    const auto q = find_q_for_a(a);
    for (std::int64_t n = 3; n <= 400; n += 4) {
      t.expect(kqtab::t(n, q) == w((n + 1) / 2, a), "a=" + std::to_string(a) + " n=" + std::to_string(n));
    }
  }
  const auto rep = check_t_w({2, 3, 4, 5}, 400);
  t.expect(rep.passed, "check_t_w: " + rep.details);
  return t.outcome("t_n = w_((n+1)/2) cases");
}

std::vector<FieldSpec> specs_for_r() { return {Rationals{}, RealQuadratic{6}, MaxRealCyclo2{4}, MaxRealCyclo2{5}}; }

Outcome criterion5() {
  Tally t;
  for (const auto& spec : specs_for_r()) {
    const auto reps = check_splittings(spec, find_q(spec), 64);
    t.expect(reps.size() == 5, "five identities for " + format_field(spec));
    for (const auto& r : reps) t.expect(r.passed, format_field(spec) + " " + r.name);
  }
  // the served K_(8k+7)(Rbar) against Z/w_(4k+4)
  for (std::int64_t k = 0; k < 8; ++k) {
    t.expect(k_bar(8 * k + 7, 2) == FgAb2::cyclic(w(4 * k + 4, 2)), "Kbar_" + std::to_string(8 * k + 7));
  }
  return t.outcome("identity reports and Kbar checks, r in {1,2,4,8}");
}

Outcome criterion6() {
  Tally t;
  for (const FieldSpec& spec : {FieldSpec(Rationals{}), FieldSpec(RealQuadratic{6}), FieldSpec(MaxRealCyclo2{4})}) {
    const auto r = static_cast<unsigned>(real_embeddings(spec));
    for (std::int64_t n = 0; n <= 64; ++n) {
      const auto v = v_rf(n, 1, spec);
      t.expect(v == n_copies(2 * r, ko(n)), format_field(spec) + " n=" + std::to_string(n) + " V+=" + g(v));
      t.expect(v == v_rf(n + 8, 1, spec), format_field(spec) + " n=" + std::to_string(n) + " periodicity");
    }
  }
  return t.outcome("V+ cases, r in {1,2,4}");
}

Outcome criterion7() {
  Tally t;
  for (const auto& spec : specs_for_r()) {
    for (const auto& r : check_les(spec, find_q(spec), 64)) t.expect(r.passed, format_field(spec) + " " + r.name);
  }
  // the two coWitt rows written out for r = 1..8
  for (unsigned r = 1; r <= 8; ++r) {
    t.expect(ses_consistent(FgAb2::free(r), FgAb2(r, {2}), z2(r + 1)), "coWitt row r=" + std::to_string(r));
    t.expect(ses_consistent(FgAb2::free(r), FgAb2::free(r), FgAb2()), "W' -> W row r=" + std::to_string(r));
  }
  return t.outcome("sequence checks over r in {1,2,4,8}");
}

Outcome criterion8() {
  const FieldSpec q_spec = Rationals{}, r2_spec = RealQuadratic{6};
  const auto& base = default_tables();
  Tally t;
  std::size_t tried = 0;
  for (const auto& id : published_rows()) {
    for (auto m : {Mutation::AddZ2, Mutation::AddZ, Mutation::DoubleTorsion}) {
      if (!mutation_applies(base[id.column][id.residue], m)) continue;
      ++tried;
      const auto bad = perturbed(base, id, m);
      bool caught = !all_passed(run_all(q_spec, 3, 64, bad));
      if (!caught) caught = !all_passed(run_all(r2_spec, find_q(r2_spec), 64, bad));
      t.expect(caught, column_name(id.column) + " row " + std::to_string(id.residue) + " " + mutation_name(m));
    }
  }
  t.expect(all_passed(run_all(q_spec, 3, 64)) && all_passed(run_all(r2_spec, find_q(r2_spec), 64)),
           "unperturbed tables pass");
  return t.outcome("checks over " + std::to_string(published_rows().size()) + " rows, " + std::to_string(tried) +
                   " mutations");
}

Outcome criterion9() {
  Tally t;
  for (std::int64_t q = 3; q <= 199; q += 2) {
    t.expect(check_obstruction(q), "q=" + std::to_string(q) + " coefficient even");
    mpz_class q4;
    mpz_ui_pow_ui(q4.get_mpz_t(), static_cast<unsigned long>(q), 4);
    t.expect(bracket(q, static_cast<std::size_t>(2 * q))[0] == 3 * (q4 - 1), "q=" + std::to_string(q) + " constant");
  }
  return t.outcome("odd q in [3, 199]");
}

Outcome criterion10() {
  Tally t;
  for (std::int64_t d = 2; d <= 200; ++d) {
    if (!squarefree(d)) continue;
    const auto u = nt::fundamental_unit(d);
    const mpz_class lhs = u.value.x * u.value.x - mpz_class(d) * u.value.y * u.value.y;
    t.expect(lhs == u.norm * u.value.denom * u.value.denom, "unit d=" + std::to_string(d));
  }
  t.expect(nt::class_numbers(10).h == 2, "h(10)");
  t.expect(nt::class_numbers(2).h == 1, "h(2)");
  t.expect(nt::class_numbers(15).h == 2, "h(15)");
  for (std::int64_t d : {2, 10, 15}) {
    t.expect(nt::count_form_cycles(nt::field_discriminant(d)) == nt::class_numbers(d).h_narrow,
             "form cycles d=" + std::to_string(d));
  }
  return t.outcome("unit equations and class numbers");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9, criterion10};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  bool all_ok = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << ms << " ms) " << o.detail << "\n";
    all_ok = all_ok && o.pass;
  }
  return all_ok ? 0 : 1;
}
