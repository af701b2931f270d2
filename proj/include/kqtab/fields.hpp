#pragma once

// Totally real number fields described by family and parameter, their
// invariants, the 2-regularity decision, and the auxiliary prime q.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace kqtab {

struct Rationals {
  friend bool operator==(const Rationals&, const Rationals&) = default;
};
struct RealQuadratic {
  std::int64_t d = 2;
  friend bool operator==(const RealQuadratic&, const RealQuadratic&) = default;
};
// Q(zeta_{2^b} + zeta_{2^b}^{-1})
struct MaxRealCyclo2 {
  std::int64_t b = 2;
  friend bool operator==(const MaxRealCyclo2&, const MaxRealCyclo2&) = default;
};
// Q(zeta_m)^+ for an odd prime power m
struct MaxRealCycloOdd {
  std::int64_t m = 3;
  friend bool operator==(const MaxRealCycloOdd&, const MaxRealCycloOdd&) = default;
};

// The three conditions characterizing 2-regularity of a totally real field.
struct RegularityInvariants {
  int dyadic_count = 1;
  bool pic_odd = true;
  bool units_indep_signs = true;
  friend bool operator==(const RegularityInvariants&, const RegularityInvariants&) = default;
};

// A field known only through its invariants. The caller vouches for them.
struct Generic {
  std::int64_t r = 1;
  std::int64_t a = 2;
  std::int64_t c = 0;
  std::optional<bool> regular_claim;
  std::optional<RegularityInvariants> invariants;
  friend bool operator==(const Generic&, const Generic&) = default;
};

using FieldSpec = std::variant<Rationals, RealQuadratic, MaxRealCyclo2, MaxRealCycloOdd, Generic>;

// Throws InvalidSpec on a malformed spec.
void validate(const FieldSpec& spec);

// "Q", "Q(sqrt D)", "Q(zeta 2^B)+", "Q(zeta M)+",
// "generic r=R a=A [c=C] [regular|not-regular]". Throws Parse or InvalidSpec.
FieldSpec parse_field(const std::string& text);
std::string format_field(const FieldSpec& spec);

std::int64_t real_embeddings(const FieldSpec& spec);
std::int64_t complex_places(const FieldSpec& spec);
std::int64_t a_param(const FieldSpec& spec);
bool is_generic(const FieldSpec& spec);

struct RegularityVerdict {
  bool regular = false;
  std::string reason;
};

// Closed-form criteria for each family. Odd cyclotomic fields need 2 to be a
// primitive root (NotPrimitiveRoot otherwise).
RegularityVerdict is_two_regular(const FieldSpec& spec);

enum class Tri { False, True, Unknown };
std::string tri_name(Tri t);

struct FieldInvariants {
  std::int64_t r = 0;
  std::int64_t c = 0;
  std::int64_t a_F = 2;
  std::optional<int> dyadic_count;
  Tri pic_odd = Tri::Unknown;
  Tri units_indep_signs = Tri::Unknown;
  Tri narrow_pic_odd = Tri::Unknown;
  bool two_regular = false;
  std::vector<std::string> reasons;
};

// Independent check for Q(sqrt d): dyadic splitting, parity of Pic(R_F) and
// unit signatures, computed from forms, units and norm equations.
// Throws Undecided when a search bound runs out before a verdict.
FieldInvariants two_regular_oracle(std::int64_t d);
FieldInvariants two_regular_oracle(const FieldSpec& spec);  // InvalidSpec unless quadratic

// q prime, q = +-1 mod 2^a, q != +-1 mod 2^(a+1).
bool is_admissible_q_for_a(std::int64_t q, std::int64_t a);
bool is_admissible_q(std::int64_t q, const FieldSpec& spec);
std::int64_t find_q_for_a(std::int64_t a);
std::int64_t find_q(const FieldSpec& spec);

// Whether the hermitian and algebraic K-theory squares are homotopy cartesian.
bool bokstedt_cartesian(const FieldSpec& spec);

}  // namespace kqtab
