#include "kqtab/fields.hpp"

#include <regex>
#include <sstream>

#include "kqtab/error.hpp"
#include "kqtab/numtheory.hpp"

namespace kqtab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::int64_t kMaxCyclo2Exponent = 40;
constexpr std::int64_t kMaxAParam = 60;

bool is_odd_prime_power(std::int64_t m) {
  if (m < 3 || m % 2 == 0) return false;
  const auto f = nt::factorize(static_cast<std::uint64_t>(m));
  return f.factors.front() == f.factors.back();
}

bool pm3_mod8(std::int64_t p) { return p % 8 == 3 || p % 8 == 5; }

}  // namespace

void validate(const FieldSpec& spec) {
  std::visit(overloaded{
                 [](const Rationals&) {},
                 [](const RealQuadratic& f) {
                   if (f.d < 2 || !nt::is_squarefree(static_cast<std::uint64_t>(f.d))) {
                     throw Error(ErrorCode::InvalidSpec, "Q(sqrt d) needs squarefree d >= 2, got " + std::to_string(f.d));
                   }
                 },
                 [](const MaxRealCyclo2& f) {
                   if (f.b < 2 || f.b > kMaxCyclo2Exponent) {
                     throw Error(ErrorCode::InvalidSpec, "Q(zeta 2^b)+ needs 2 <= b <= " +
                                                             std::to_string(kMaxCyclo2Exponent));
                   }
                 },
                 [](const MaxRealCycloOdd& f) {
                   if (!is_odd_prime_power(f.m)) {
                     throw Error(ErrorCode::InvalidSpec, std::to_string(f.m) + " is not an odd prime power >= 3");
                   }
                 },
                 [](const Generic& f) {
                   if (f.r < 1) throw Error(ErrorCode::InvalidSpec, "generic field needs r >= 1");
                   if (f.a < 2 || f.a > kMaxAParam) throw Error(ErrorCode::InvalidSpec, "generic field needs 2 <= a <= 60");
                   if (f.c < 0) throw Error(ErrorCode::InvalidSpec, "generic field needs c >= 0");
                   if (f.invariants && f.invariants->dyadic_count < 1) {
                     throw Error(ErrorCode::InvalidSpec, "dyadic count must be positive");
                   }
                 },
             },
             spec);
}

FieldSpec parse_field(const std::string& text) {
  static const std::regex kQ(R"(\s*Q\s*)");
  static const std::regex kSqrt(R"(\s*Q\(\s*sqrt\s*(\d+)\s*\)\s*)");
  static const std::regex kZeta2(R"(\s*Q\(\s*zeta\s*2\^(\d+)\s*\)\+\s*)");
  static const std::regex kZeta(R"(\s*Q\(\s*zeta\s*(\d+)\s*\)\+\s*)");
  static const std::regex kGeneric(R"(\s*generic\b(.*))");
  std::smatch m;
  auto number = [&](const std::string& s) {
    if (s.size() > 15) throw Error(ErrorCode::Parse, "number too large in '" + text + "'");
    return static_cast<std::int64_t>(std::stoll(s));
  };
  FieldSpec spec;
  if (std::regex_match(text, kQ)) {
    spec = Rationals{};
  } else if (std::regex_match(text, m, kSqrt)) {
    spec = RealQuadratic{number(m[1])};
  } else if (std::regex_match(text, m, kZeta2)) {
    spec = MaxRealCyclo2{number(m[1])};
  } else if (std::regex_match(text, m, kZeta)) {
    spec = MaxRealCycloOdd{number(m[1])};
  } else if (std::regex_match(text, m, kGeneric)) {
    Generic g;
    bool have_r = false, have_a = false;
    std::istringstream in(m[1].str());
    std::string tok;
    static const std::regex kKeyVal(R"((r|a|c)=(\d+))");
    while (in >> tok) {
      std::smatch kv;
      if (std::regex_match(tok, kv, kKeyVal)) {
        const auto v = number(kv[2]);
        if (kv[1] == "r") {
          g.r = v;
          have_r = true;
        } else if (kv[1] == "a") {
          g.a = v;
          have_a = true;
        } else {
          g.c = v;
        }
      } else if (tok == "regular") {
        g.regular_claim = true;
      } else if (tok == "not-regular") {
        g.regular_claim = false;
      } else {
        throw Error(ErrorCode::Parse, "unexpected '" + tok + "' in field '" + text + "'");
      }
    }
    if (!have_r || !have_a) throw Error(ErrorCode::Parse, "generic field needs r= and a=");
    spec = g;
  } else {
    throw Error(ErrorCode::Parse, "unrecognized field '" + text + "'");
  }
  validate(spec);
  return spec;
}

std::string format_field(const FieldSpec& spec) {
  return std::visit(overloaded{
                        [](const Rationals&) -> std::string { return "Q"; },
                        [](const RealQuadratic& f) { return "Q(sqrt " + std::to_string(f.d) + ")"; },
                        [](const MaxRealCyclo2& f) { return "Q(zeta 2^" + std::to_string(f.b) + ")+"; },
                        [](const MaxRealCycloOdd& f) { return "Q(zeta " + std::to_string(f.m) + ")+"; },
                        [](const Generic& f) {
                          std::string s = "generic r=" + std::to_string(f.r) + " a=" + std::to_string(f.a);
                          if (f.c) s += " c=" + std::to_string(f.c);
                          if (f.regular_claim) s += *f.regular_claim ? " regular" : " not-regular";
                          return s;
                        },
                    },
                    spec);
}

std::int64_t real_embeddings(const FieldSpec& spec) {
  validate(spec);
  return std::visit(overloaded{
                        [](const Rationals&) -> std::int64_t { return 1; },
                        [](const RealQuadratic&) -> std::int64_t { return 2; },
                        [](const MaxRealCyclo2& f) -> std::int64_t { return std::int64_t{1} << (f.b - 2); },
                        [](const MaxRealCycloOdd& f) -> std::int64_t {
                          return static_cast<std::int64_t>(nt::euler_phi(static_cast<std::uint64_t>(f.m)) / 2);
                        },
                        [](const Generic& f) { return f.r; },
                    },
                    spec);
}

std::int64_t complex_places(const FieldSpec& spec) {
  if (const auto* g = std::get_if<Generic>(&spec)) return g->c;
  return 0;
}

std::int64_t a_param(const FieldSpec& spec) {
  validate(spec);
  return std::visit(overloaded{
                        [](const Rationals&) -> std::int64_t { return 2; },
                        [](const RealQuadratic& f) -> std::int64_t { return f.d == 2 ? 3 : 2; },
                        [](const MaxRealCyclo2& f) { return f.b; },
                        [](const MaxRealCycloOdd&) -> std::int64_t { return 2; },
                        [](const Generic& f) { return f.a; },
                    },
                    spec);
}

bool is_generic(const FieldSpec& spec) { return std::holds_alternative<Generic>(spec); }

RegularityVerdict is_two_regular(const FieldSpec& spec) {
  validate(spec);
  return std::visit(
      overloaded{
          [](const Rationals&) -> RegularityVerdict { return {true, "Q is 2-regular"}; },
          [](const MaxRealCyclo2& f) -> RegularityVerdict {
            return {true, "Q(zeta 2^" + std::to_string(f.b) + ")+ is 2-regular for every b"};
          },
          [](const RealQuadratic& f) -> RegularityVerdict {
            const std::int64_t d = f.d;
            if (d == 2) return {true, "d = 2"};
            if (nt::is_prime(static_cast<std::uint64_t>(d))) {
              if (pm3_mod8(d)) return {true, "d = p prime with p = +-3 mod 8"};
              return {false, "d = p prime with p = +-1 mod 8"};
            }
            if (d % 2 == 0 && nt::is_prime(static_cast<std::uint64_t>(d / 2))) {
              if (pm3_mod8(d / 2)) return {true, "d = 2p with p prime, p = +-3 mod 8"};
              return {false, "d = 2p with p prime, p = +-1 mod 8"};
            }
            return {false, "d is not 2, p or 2p with p prime = +-3 mod 8"};
          },
          [](const MaxRealCycloOdd& f) -> RegularityVerdict {
            const auto m = static_cast<std::uint64_t>(f.m);
            if (!nt::is_primitive_root(2, m)) {
              throw Error(ErrorCode::NotPrimitiveRoot, "2 is not a primitive root mod " + std::to_string(m));
            }
            const auto phi = nt::euler_phi(m);
            if (phi <= 66 && m != 29) return {true, "phi(m) <= 66 and m != 29"};
            if (nt::is_sophie_germain_type(m) && m % 8 != 7) {
              return {true, "m and (m-1)/2 prime, m != 7 mod 8"};
            }
            if (m == 29) return {false, "m = 29 is the exception among phi(m) <= 66"};
            return {false, "outside the certified list (phi(m) <= 66, or Sophie Germain type with m != 7 mod 8)"};
          },
          [](const Generic& f) -> RegularityVerdict {
            if (f.c > 0) return {false, "not totally real (c > 0)"};
            if (f.invariants) {
              const auto& inv = *f.invariants;
              if (inv.dyadic_count != 1) return {false, "more than one dyadic prime (supplied)"};
              if (!inv.pic_odd) return {false, "Pic(R_F) has even order (supplied)"};
              if (!inv.units_indep_signs) return {false, "units of R_F do not have independent signs (supplied)"};
              return {true, "supplied invariants satisfy all three conditions (unverified)"};
            }
            if (f.regular_claim) {
              return {*f.regular_claim, *f.regular_claim ? "claimed regular (unverified)" : "claimed not regular"};
            }
            return {false, "no regularity claim supplied"};
          },
      },
      spec);
}

std::string tri_name(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

FieldInvariants two_regular_oracle(std::int64_t d) {
  validate(RealQuadratic{d});
  FieldInvariants inv;
  inv.r = 2;
  inv.c = 0;
  inv.a_F = d == 2 ? 3 : 2;
  inv.dyadic_count = nt::dyadic_prime_count(d);

  const nt::ClassData cd = nt::class_numbers(d);
  std::vector<nt::QuadNumber> s_generators;
  if (cd.dyadic_class_order) {
    const std::int64_t pic = cd.h / *cd.dyadic_class_order;
    inv.pic_odd = (pic % 2 == 1) ? Tri::True : Tri::False;
  }
  if (cd.dyadic_generator) {
    s_generators.push_back(*cd.dyadic_generator);
    if (*inv.dyadic_count == 2) s_generators.push_back(cd.dyadic_generator->conjugate());
  }
  const auto span = nt::unit_signature_span(d, s_generators);
  if (span.size() == 4) {
    inv.units_indep_signs = Tri::True;
  } else if (cd.dyadic_generator) {
    inv.units_indep_signs = Tri::False;
  }
  if (inv.pic_odd == Tri::True && inv.units_indep_signs == Tri::True) {
    inv.narrow_pic_odd = Tri::True;
  } else if (inv.pic_odd == Tri::False || inv.units_indep_signs == Tri::False) {
    inv.narrow_pic_odd = Tri::False;
  }

  const bool unique_dyadic = *inv.dyadic_count == 1;
  if (!unique_dyadic) inv.reasons.emplace_back("2 splits into two dyadic primes");
  if (inv.pic_odd == Tri::False) inv.reasons.emplace_back("Pic(R_F) has even order");
  if (inv.units_indep_signs == Tri::False) inv.reasons.emplace_back("units of R_F do not have independent signs");

  if (!inv.reasons.empty()) {
    inv.two_regular = false;
    return inv;
  }
  if (inv.pic_odd == Tri::Unknown || inv.units_indep_signs == Tri::Unknown) {
    throw Error(ErrorCode::Undecided, "dyadic norm search for d = " + std::to_string(d) + " ran out of bounds");
  }
  inv.two_regular = true;
  inv.reasons.emplace_back("unique dyadic prime, odd Pic(R_F), units of independent signs");
  return inv;
}

FieldInvariants two_regular_oracle(const FieldSpec& spec) {
  if (const auto* q = std::get_if<RealQuadratic>(&spec)) return two_regular_oracle(q->d);
  if (std::holds_alternative<Rationals>(spec)) {
    FieldInvariants inv;
    inv.r = 1;
    inv.a_F = 2;
    inv.dyadic_count = 1;
    inv.pic_odd = inv.units_indep_signs = inv.narrow_pic_odd = Tri::True;
    inv.two_regular = true;
    inv.reasons.emplace_back("Z[1/2] is a PID and -1 has sign -");
    return inv;
  }
  throw Error(ErrorCode::InvalidSpec, "the oracle handles Q and real quadratic fields only");
}

bool is_admissible_q_for_a(std::int64_t q, std::int64_t a) {
  if (a < 2 || a > kMaxAParam) throw Error(ErrorCode::InvalidSpec, "a must lie in [2, 60]");
  if (q < 3 || !nt::is_prime(static_cast<std::uint64_t>(q))) return false;
  const std::int64_t m = std::int64_t{1} << a;
  const std::int64_t r1 = q % m, r2 = q % (2 * m);
  const bool pm1 = r1 == 1 || r1 == m - 1;
  const bool pm1_next = r2 == 1 || r2 == 2 * m - 1;
  return pm1 && !pm1_next;
}

bool is_admissible_q(std::int64_t q, const FieldSpec& spec) { return is_admissible_q_for_a(q, a_param(spec)); }

std::int64_t find_q_for_a(std::int64_t a) {
  if (a < 2 || a > kMaxAParam) throw Error(ErrorCode::InvalidSpec, "a must lie in [2, 60]");
  // Admissible primes are exactly k 2^a +- 1 with k odd.
  const std::int64_t m = std::int64_t{1} << a;
  for (std::int64_t k = 1;; k += 2) {
    if (k > (INT64_MAX - 1) / m) throw Error(ErrorCode::BoundExceeded, "no admissible prime found");
    for (std::int64_t q : {k * m - 1, k * m + 1}) {
      if (is_admissible_q_for_a(q, a)) return q;
    }
  }
}

std::int64_t find_q(const FieldSpec& spec) { return find_q_for_a(a_param(spec)); }

bool bokstedt_cartesian(const FieldSpec& spec) { return is_two_regular(spec).regular; }

}  // namespace kqtab
