#pragma once

// Exact integer number theory for the regularity oracles: 2-adic valuations,
// primality, factorization, and units and class numbers of real quadratic
// fields.

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace kqtab::nt {

unsigned nu2(std::int64_t n);              // NonPositive for n < 1
std::uint64_t two_part(std::int64_t n);    // 2^nu2(n)

// (q^m - 1)_2 from the closed formulas: (q-1)_2 for odd m, (q^2-1)_2 (m/2)_2
// for even m. Throws EvenQ, NonPositive.
std::uint64_t val2_q_power(std::int64_t q, std::int64_t m);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(std::uint64_t n);

inline constexpr std::uint64_t kTrialDivisionBound = 1'000'000'000'000ULL;

struct Factorization {
  bool squarefree = true;
  std::vector<std::uint64_t> factors;  // prime factors with multiplicity, ascending
};

// Trial division; BoundExceeded above kTrialDivisionBound, NonPositive for 0.
Factorization factorize(std::uint64_t n);
inline Factorization squarefree_part(std::uint64_t n) { return factorize(n); }
bool is_squarefree(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t m);
// m must be an odd prime power >= 3 (BadModulus otherwise).
bool is_primitive_root(std::uint64_t g, std::uint64_t m);
// m and (m-1)/2 both prime.
bool is_sophie_germain_type(std::uint64_t m);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

// (x + y sqrt d) / denom, an element of the ring of integers of Q(sqrt d).
struct QuadNumber {
  mpz_class x;
  mpz_class y;
  int denom = 1;  // 1 or 2
  std::int64_t d = 2;

  mpz_class norm() const;  // exact; throws if the element is not integral
  QuadNumber conjugate() const { return {x, -y, denom, d}; }
  // Signs of the images under sqrt d -> +sqrt d and sqrt d -> -sqrt d.
  std::pair<int, int> signs() const;
  friend bool operator==(const QuadNumber&, const QuadNumber&) = default;
};

// Canonical representative: halves are removed when both numerators are even.
QuadNumber make_quad(mpz_class x, mpz_class y, int denom, std::int64_t d);
QuadNumber quad_mul(const QuadNumber& a, const QuadNumber& b);

struct QuadUnit {
  QuadNumber value;
  int norm = 1;  // +1 or -1
};

inline constexpr std::size_t kMaxContinuedFractionSteps = 1'000'000;

// Fundamental unit > 1 of the maximal order of Q(sqrt d), via the
// continued-fraction expansion of (b + sqrt D) / 2.
QuadUnit fundamental_unit(std::int64_t d);

// Number of partial quotients before the first unit appears; its parity
// decides the norm of the fundamental unit.
std::size_t continued_fraction_period(std::int64_t d);

inline constexpr std::int64_t kClassNumberBound = 1'000'000;

struct ClassData {
  std::int64_t d = 0;
  std::int64_t discriminant = 0;
  std::int64_t h = 0;
  std::int64_t h_narrow = 0;
  // Order of the class of a dyadic prime; empty when the search bound ran out.
  std::optional<std::int64_t> dyadic_class_order;
  // Element generating the dyadic prime power of that order, when found.
  std::optional<QuadNumber> dyadic_generator;
};

struct ReducedForm {
  std::int64_t a, b, c;
  friend bool operator==(const ReducedForm&, const ReducedForm&) = default;
  friend auto operator<=>(const ReducedForm&, const ReducedForm&) = default;
};

// All primitive Gauss-reduced indefinite forms of discriminant D.
std::vector<ReducedForm> reduced_forms(std::int64_t discriminant);
// Cycle successor of a reduced form.
ReducedForm rho(const ReducedForm& f, std::int64_t discriminant);
std::int64_t count_form_cycles(std::int64_t discriminant);

std::int64_t field_discriminant(std::int64_t d);

ClassData class_numbers(std::int64_t d);

// Smallest k in [1, k_max] admitting an element of norm +-2^k that is not
// divisible by 2, together with that element. Empty when none exists within
// the search bound.
std::optional<std::pair<std::int64_t, QuadNumber>> dyadic_norm_search(std::int64_t d, std::int64_t k_max);

// Number of primes of Q(sqrt d) above 2, from the factorization of the
// minimal polynomial of the ring generator modulo 2.
int dyadic_prime_count(std::int64_t d);

using SignVector = std::pair<int, int>;  // entries +1 / -1

// Subgroup of {+-1}^2 generated by the signs of -1, the fundamental unit and
// the supplied generators.
std::set<SignVector> unit_signature_span(std::int64_t d, const std::vector<QuadNumber>& generators);

}  // namespace kqtab::nt
