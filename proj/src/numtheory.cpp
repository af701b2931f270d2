#include "kqtab/numtheory.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "kqtab/error.hpp"

namespace kqtab::nt {

unsigned nu2(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::NonPositive, "nu2 needs n >= 1, got " + std::to_string(n));
  return static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(n)));
}

std::uint64_t two_part(std::int64_t n) { return std::uint64_t{1} << nu2(n); }

std::uint64_t val2_q_power(std::int64_t q, std::int64_t m) {
  if (q % 2 == 0) throw Error(ErrorCode::EvenQ, "q must be odd, got " + std::to_string(q));
  if (q < 3) throw Error(ErrorCode::NonPositive, "q must be >= 3, got " + std::to_string(q));
  if (m < 1) throw Error(ErrorCode::NonPositive, "m must be >= 1, got " + std::to_string(m));
  if (m % 2 == 1) return two_part(q - 1);
  // (q^2 - 1)_2 = (q - 1)_2 (q + 1)_2, kept factored to avoid overflow.
  return two_part(q - 1) * two_part(q + 1) * two_part(m / 2);
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(const mpz_class& n, mpz_class& root) {
  if (n < 0) return false;
  return mpz_root(root.get_mpz_t(), n.get_mpz_t(), 2) != 0;
}

}  // namespace

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // These twelve bases are a proven witness set below 3.3 * 10^24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::NonPositive, "cannot factor 0");
  if (n > kTrialDivisionBound) {
    throw Error(ErrorCode::BoundExceeded, std::to_string(n) + " exceeds the trial-division bound");
  }
  Factorization f;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      f.factors.push_back(p);
      ++e;
    }
    if (e > 1) f.squarefree = false;
  }
  if (n > 1) f.factors.push_back(n);
  return f;
}

bool is_squarefree(std::uint64_t n) { return factorize(n).squarefree; }

std::uint64_t euler_phi(std::uint64_t m) {
  const auto f = factorize(m);
  std::uint64_t phi = m;
  std::uint64_t last = 0;
  for (auto p : f.factors) {
    if (p == last) continue;
    phi = phi / p * (p - 1);
    last = p;
  }
  return phi;
}

bool is_primitive_root(std::uint64_t g, std::uint64_t m) {
  if (m < 3 || m % 2 == 0) {
    throw Error(ErrorCode::BadModulus, "primitive-root test needs an odd prime power, got " + std::to_string(m));
  }
  const auto f = factorize(m);
  if (f.factors.front() != f.factors.back()) {
    throw Error(ErrorCode::BadModulus, std::to_string(m) + " is not a prime power");
  }
  if (std::gcd(g, m) != 1) return false;
  const std::uint64_t phi = euler_phi(m);
  const auto pf = factorize(phi);
  for (auto l : pf.factors) {
    if (pow_mod(g, phi / l, m) == 1) return false;
  }
  return true;
}

bool is_sophie_germain_type(std::uint64_t m) {
  return m >= 5 && is_prime(m) && is_prime((m - 1) / 2);
}

mpz_class QuadNumber::norm() const {
  mpz_class num = x * x - mpz_class(d) * y * y;
  const int den2 = denom * denom;
  if (num % den2 != 0) throw Error(ErrorCode::InvalidSpec, "element is not integral");
  return num / den2;
}

std::pair<int, int> QuadNumber::signs() const {
  auto sign_of = [this](const mpz_class& a, const mpz_class& b) {
    // sign of a + b sqrt d
    const int sa = sgn(a), sb = sgn(b);
    if (sa >= 0 && sb >= 0) return (sa + sb > 0) ? 1 : 0;
    if (sa <= 0 && sb <= 0) return -1;
    const mpz_class diff = a * a - mpz_class(d) * b * b;  // never 0 for squarefree d > 1
    return sa > 0 ? sgn(diff) : -sgn(diff);
  };
  return {sign_of(x, y), sign_of(x, -y)};
}

QuadNumber make_quad(mpz_class x, mpz_class y, int denom, std::int64_t d) {
  if (denom != 1 && denom != 2) throw Error(ErrorCode::InvalidSpec, "denominator must be 1 or 2");
  if (denom == 2) {
    if (mpz_even_p(x.get_mpz_t()) && mpz_even_p(y.get_mpz_t())) {
      return {x / 2, y / 2, 1, d};
    }
    const bool same_parity = mpz_odd_p(x.get_mpz_t()) == mpz_odd_p(y.get_mpz_t());
    if (((d % 4) + 4) % 4 != 1 || !same_parity) {
      throw Error(ErrorCode::InvalidSpec, "half-integral element outside the maximal order");
    }
  }
  return {std::move(x), std::move(y), denom, d};
}

QuadNumber quad_mul(const QuadNumber& a, const QuadNumber& b) {
  mpz_class x = a.x * b.x + mpz_class(a.d) * a.y * b.y;
  mpz_class y = a.x * b.y + a.y * b.x;
  int den = a.denom * b.denom;
  if (den == 4) {
    x /= 2;
    y /= 2;
    den = 2;
  }
  return make_quad(x, y, den, a.d);
}

std::int64_t field_discriminant(std::int64_t d) { return (d % 4 == 1) ? d : 4 * d; }

namespace {

void require_field_d(std::int64_t d) {
  if (d < 2 || !is_squarefree(static_cast<std::uint64_t>(d))) {
    throw Error(ErrorCode::InvalidSpec, "d must be a squarefree integer >= 2, got " + std::to_string(d));
  }
}

struct UnitSearch {
  QuadUnit unit;
  std::size_t steps = 0;
};

UnitSearch continued_fraction_unit(std::int64_t d) {
  require_field_d(d);
  const std::int64_t D = field_discriminant(d);
  const std::int64_t b = D % 2;
  const std::int64_t s = isqrt(D);
  // Complete quotients (P + sqrt D) / Q, starting from (b + sqrt D) / 2.
  std::int64_t P = b, Q = 2;
  mpz_class p_prev = 1, p_cur = 0;  // p_{-1}, p_{-2} shifted below
  mpz_class q_prev = 0, q_cur = 1;
  const mpz_class c0 = (b * b - D) / 4;
  for (std::size_t k = 0; k < kMaxContinuedFractionSteps; ++k) {
    if (Q <= 0) throw Error(ErrorCode::Undecided, "continued fraction left the reduced range");
    const std::int64_t a = (P + s) / Q;
    mpz_class p_next = a * p_prev + p_cur;
    mpz_class q_next = a * q_prev + q_cur;
    p_cur = p_prev;
    q_cur = q_prev;
    p_prev = p_next;
    q_prev = q_next;

    const mpz_class n = p_prev * p_prev - b * p_prev * q_prev + c0 * q_prev * q_prev;
    if (n == 1 || n == -1) {
      // p - q * conj(omega) = (2p - bq + q sqrt D) / 2
      mpz_class X = 2 * p_prev - b * q_prev;
      mpz_class Y = q_prev;
      QuadNumber value = (D == d) ? make_quad(X, Y, 2, d) : make_quad(X / 2, Y, 1, d);
      return {{value, n == 1 ? 1 : -1}, k + 1};
    }
    const std::int64_t P_next = a * Q - P;
    const std::int64_t Q_next = (D - P_next * P_next) / Q;
    P = P_next;
    Q = Q_next;
  }
  throw Error(ErrorCode::BoundExceeded, "continued fraction of sqrt " + std::to_string(d) + " too long");
}

bool divisible_by_two(const QuadNumber& a) {
  // a / 2 = (x + y sqrt d) / (2 denom)
  if (a.denom == 1) {
    const bool xe = mpz_even_p(a.x.get_mpz_t()), ye = mpz_even_p(a.y.get_mpz_t());
    if (xe && ye) return true;
    return (a.d % 4 == 1) && (xe == ye);
  }
  if (mpz_odd_p(a.x.get_mpz_t()) || mpz_odd_p(a.y.get_mpz_t())) return false;
  const mpz_class hx = a.x / 2, hy = a.y / 2;
  return (a.d % 4 == 1) && (mpz_odd_p(hx.get_mpz_t()) == mpz_odd_p(hy.get_mpz_t()));
}

}  // namespace

QuadUnit fundamental_unit(std::int64_t d) { return continued_fraction_unit(d).unit; }

std::size_t continued_fraction_period(std::int64_t d) { return continued_fraction_unit(d).steps; }

std::vector<ReducedForm> reduced_forms(std::int64_t D) {
  const std::int64_t s = isqrt(D);
  std::vector<ReducedForm> out;
  for (std::int64_t b = 1; b <= s; ++b) {
    if ((b - D) % 2 != 0) continue;
    const std::int64_t N = (D - b * b) / 4;
    // sqrt D - b < 2|a| < sqrt D + b
    const std::int64_t lo = std::max<std::int64_t>(1, (s - b + 2) / 2);
    const std::int64_t hi = (s + b) / 2;
    for (std::int64_t A = lo; A <= hi; ++A) {
      if (N % A != 0) continue;
      const std::int64_t C = N / A;
      if (std::gcd(std::gcd(A, b), C) != 1) continue;
      out.push_back({A, b, -C});
      out.push_back({-A, b, C});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ReducedForm rho(const ReducedForm& f, std::int64_t D) {
  const std::int64_t s = isqrt(D);
  const std::int64_t m = 2 * std::abs(f.c);
  const std::int64_t b = s - (((s + f.b) % m) + m) % m;
  return {f.c, b, (b * b - D) / (4 * f.c)};
}

std::int64_t count_form_cycles(std::int64_t D) {
  const auto forms = reduced_forms(D);
  std::set<ReducedForm> seen;
  std::int64_t cycles = 0;
  for (const auto& f : forms) {
    if (seen.count(f)) continue;
    ++cycles;
    ReducedForm g = f;
    do {
      seen.insert(g);
      g = rho(g, D);
    } while (!(g == f));
  }
  return cycles;
}

int dyadic_prime_count(std::int64_t d) {
  // Monic ring-generator polynomial x^2 + c1 x + c0 reduced mod 2.
  std::int64_t c1, c0;
  if (d % 4 == 1) {
    c1 = 1;  // x^2 - x + (1 - d) / 4
    c0 = ((1 - d) / 4) & 1;
  } else {
    c1 = 0;  // x^2 - d
    c0 = d & 1;
  }
  int roots = 0;
  for (int x = 0; x < 2; ++x) {
    if ((x * x + c1 * x + c0) % 2 == 0) ++roots;
  }
  // Two simple roots: split. One double root: ramified. None: inert.
  return roots == 2 ? 2 : 1;
}

std::optional<std::pair<std::int64_t, QuadNumber>> dyadic_norm_search(std::int64_t d, std::int64_t k_max) {
  require_field_d(d);
  const std::int64_t D = field_discriminant(d);
  const QuadUnit eps = fundamental_unit(d);
  const QuadNumber eps_plus = eps.norm == 1 ? eps.value : quad_mul(eps.value, eps.value);
  const double e = (mpz_class(eps_plus.x * eps_plus.denom).get_d() +
                    std::sqrt(static_cast<double>(d)) * mpz_class(eps_plus.y).get_d() * eps_plus.denom) /
                   (eps_plus.denom * eps_plus.denom);
  if (!std::isfinite(e)) return std::nullopt;
  constexpr long double kMaxIterations = 2e8L;
  for (std::int64_t k = 1; k <= k_max && k < 62; ++k) {
    const std::int64_t m = std::int64_t{1} << k;
    // Some associate lies in [sqrt(m / e), sqrt(m e)], which bounds |Y|.
    const long double bound = std::sqrt(static_cast<long double>(m)) *
                              (std::sqrt(static_cast<long double>(e)) + 1.0L / std::sqrt(static_cast<long double>(e))) /
                              std::sqrt(static_cast<long double>(D));
    if (bound > kMaxIterations) return std::nullopt;
    const auto y_max = static_cast<std::int64_t>(bound) + 1;
    for (std::int64_t Y = 0; Y <= y_max; ++Y) {
      for (int sign : {1, -1}) {
        const mpz_class X2 = mpz_class(D) * Y * Y + sign * 4 * mpz_class(m);
        mpz_class X;
        if (!is_square(X2, X)) continue;
        QuadNumber alpha = (D == d) ? make_quad(X, Y, 2, d) : make_quad(X / 2, Y, 1, d);
        if (divisible_by_two(alpha)) continue;
        return std::make_pair(k, alpha);
      }
    }
  }
  return std::nullopt;
}

ClassData class_numbers(std::int64_t d) {
  require_field_d(d);
  if (d > kClassNumberBound) {
    throw Error(ErrorCode::BoundExceeded, "d = " + std::to_string(d) + " exceeds the class-number bound");
  }
  ClassData out;
  out.d = d;
  out.discriminant = field_discriminant(d);
  out.h_narrow = count_form_cycles(out.discriminant);
  const QuadUnit eps = fundamental_unit(d);
  out.h = (eps.norm == 1) ? out.h_narrow / 2 : out.h_narrow;

  const QuadNumber two = make_quad(2, 0, 1, d);
  const std::int64_t r = ((d % 8) + 8) % 8;
  if (r == 5) {
    // 2 stays prime.
    out.dyadic_class_order = 1;
    out.dyadic_generator = two;
  } else if (r == 1) {
    if (auto found = dyadic_norm_search(d, out.h)) {
      out.dyadic_class_order = found->first;
      out.dyadic_generator = found->second;
    }
  } else {
    // Ramified: the square of the dyadic prime is (2).
    if (auto found = dyadic_norm_search(d, 1)) {
      out.dyadic_class_order = 1;
      out.dyadic_generator = found->second;
    } else {
      out.dyadic_class_order = 2;
      out.dyadic_generator = two;
    }
  }
  return out;
}

std::set<SignVector> unit_signature_span(std::int64_t d, const std::vector<QuadNumber>& generators) {
  std::vector<SignVector> gens{{-1, -1}, fundamental_unit(d).value.signs()};
  for (const auto& g : generators) gens.push_back(g.signs());
  std::set<SignVector> span{{1, 1}};
  for (const auto& v : gens) {
    std::set<SignVector> next = span;
    for (const auto& s : span) next.insert({s.first * v.first, s.second * v.second});
    span = std::move(next);
  }
  return span;
}

}  // namespace kqtab::nt
