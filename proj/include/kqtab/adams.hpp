#pragma once

// Exact truncated power series in u, used to show that the coefficient of
// u^(2q) in the Adams-operation bracket is odd.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace kqtab {

class TruncSeries {
 public:
  // The zero series, coefficients of u^0 .. u^N.
  explicit TruncSeries(std::size_t N) : coeffs_(N + 1) {}
  // N = coeffs.size() - 1; an empty vector throws TruncationTooSmall.
  explicit TruncSeries(std::vector<mpz_class> coeffs);

  static TruncSeries constant(const mpz_class& c, std::size_t N);

  std::size_t truncation() const noexcept { return coeffs_.size() - 1; }
  const mpz_class& operator[](std::size_t i) const { return coeffs_.at(i); }
  mpz_class& operator[](std::size_t i) { return coeffs_.at(i); }
  const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }

  // Highest index with a nonzero coefficient, or -1 for the zero series.
  long degree() const;

  friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

 private:
  std::vector<mpz_class> coeffs_;
};

// All binary operations throw TruncationMismatch on different truncations.
TruncSeries add(const TruncSeries& a, const TruncSeries& b);
TruncSeries sub(const TruncSeries& a, const TruncSeries& b);
TruncSeries negate(const TruncSeries& a);
TruncSeries scale(const mpz_class& c, const TruncSeries& a);
TruncSeries multiply(const TruncSeries& a, const TruncSeries& b);

// (1 - u)^e through u^N for e >= 0, and (1 - u)^(-e) for e >= 0.
TruncSeries binomial_power(std::int64_t e, std::size_t N);
TruncSeries inverse_binomial_power(std::int64_t e, std::size_t N);

// q^4 (1-u)^(2q) - (1-u)^(q+1) + (q^4-1)(1-u)^q - (1-u)^(q-1) + q^4.
// Throws EvenQ, NonPositive (q < 3), TruncationTooSmall (N < 2q).
TruncSeries bracket(std::int64_t q, std::size_t N);

// Coefficient of u^(2q) in the bracket is odd. The prefactor (1-u)^(-q) has
// constant term 1, so multiplying by it cannot change 2-divisibility.
bool check_obstruction(std::int64_t q);

// Coefficients reduced mod 2 (0 or 1).
std::vector<int> reduce_mod2(const TruncSeries& s);

}  // namespace kqtab
