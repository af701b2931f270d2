#include "kqtab/adams.hpp"

#include <string>

#include "kqtab/error.hpp"

namespace kqtab {

namespace {

void same_truncation(const TruncSeries& a, const TruncSeries& b) {
  if (a.truncation() != b.truncation()) {
    throw Error(ErrorCode::TruncationMismatch, "truncations " + std::to_string(a.truncation()) + " and " +
                                                   std::to_string(b.truncation()) + " differ");
  }
}

void require_odd_q(std::int64_t q) {
  if (q % 2 == 0) throw Error(ErrorCode::EvenQ, "q must be odd, got " + std::to_string(q));
  if (q < 3) throw Error(ErrorCode::NonPositive, "q must be >= 3, got " + std::to_string(q));
}

}  // namespace

TruncSeries::TruncSeries(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(ErrorCode::TruncationTooSmall, "a series needs at least one coefficient");
}

TruncSeries TruncSeries::constant(const mpz_class& c, std::size_t N) {
  TruncSeries s(N);
  s[0] = c;
  return s;
}

long TruncSeries::degree() const {
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i] != 0) return static_cast<long>(i);
  }
  return -1;
}

TruncSeries add(const TruncSeries& a, const TruncSeries& b) {
  same_truncation(a, b);
  TruncSeries out(a.truncation());
  for (std::size_t i = 0; i <= a.truncation(); ++i) out[i] = a[i] + b[i];
  return out;
}

TruncSeries negate(const TruncSeries& a) { return scale(-1, a); }

TruncSeries sub(const TruncSeries& a, const TruncSeries& b) { return add(a, negate(b)); }

TruncSeries scale(const mpz_class& c, const TruncSeries& a) {
  TruncSeries out(a.truncation());
  for (std::size_t i = 0; i <= a.truncation(); ++i) out[i] = c * a[i];
  return out;
}

TruncSeries multiply(const TruncSeries& a, const TruncSeries& b) {
  same_truncation(a, b);
  const std::size_t N = a.truncation();
  TruncSeries out(N);
  for (std::size_t i = 0; i <= N; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= N; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

TruncSeries binomial_power(std::int64_t e, std::size_t N) {
  if (e < 0) throw Error(ErrorCode::NonPositive, "exponent must be >= 0");
  TruncSeries out(N);
  const auto ue = static_cast<unsigned long>(e);
  for (std::size_t i = 0; i <= N && i <= ue; ++i) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), ue, static_cast<unsigned long>(i));
    out[i] = (i % 2 == 0) ? c : mpz_class(-c);
  }
  return out;
}

TruncSeries inverse_binomial_power(std::int64_t e, std::size_t N) {
  if (e < 0) throw Error(ErrorCode::NonPositive, "exponent must be >= 0");
  // (1-u)^(-e) = sum C(e+i-1, i) u^i
  TruncSeries out(N);
  if (e == 0) {
    out[0] = 1;
    return out;
  }
  for (std::size_t i = 0; i <= N; ++i) {
    mpz_bin_uiui(out[i].get_mpz_t(), static_cast<unsigned long>(e) + i - 1, static_cast<unsigned long>(i));
  }
  return out;
}

TruncSeries bracket(std::int64_t q, std::size_t N) {
  require_odd_q(q);
  if (N < static_cast<std::size_t>(2 * q)) {
    throw Error(ErrorCode::TruncationTooSmall, "bracket has degree 2q = " + std::to_string(2 * q));
  }
  mpz_class q4 = q;
  q4 = q4 * q4 * q4 * q4;
  TruncSeries s = scale(q4, binomial_power(2 * q, N));
  s = sub(s, binomial_power(q + 1, N));
  s = add(s, scale(q4 - 1, binomial_power(q, N)));
  s = sub(s, binomial_power(q - 1, N));
  s = add(s, TruncSeries::constant(q4, N));
  return s;
}

bool check_obstruction(std::int64_t q) {
  const TruncSeries b = bracket(q, static_cast<std::size_t>(2 * q));
  return mpz_odd_p(b[static_cast<std::size_t>(2 * q)].get_mpz_t()) != 0;
}

std::vector<int> reduce_mod2(const TruncSeries& s) {
  std::vector<int> out;
  out.reserve(s.truncation() + 1);
  for (const auto& c : s.coeffs()) out.push_back(mpz_odd_p(c.get_mpz_t()) ? 1 : 0);
  return out;
}

}  // namespace kqtab
