#pragma once

// Exact multiplicative arithmetic on 64-bit integers and the elementary
// analytic bounds (omega, totient, f(n)) used by the sieve criteria.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace primdiv {

/// Raised when an operation is called outside its documented domain.
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::uint64_t max_factorizable = (std::uint64_t{1} << 63) - 1;

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// n together with its prime factorization, primes strictly increasing.
class Factorization {
 public:
  Factorization() = default;

  /// Checks the invariants; throws precondition_error if they fail.
  Factorization(std::uint64_t n, std::vector<PrimePower> factors)
      : n_(n), factors_(std::move(factors)) {
    if (n_ == 0) throw precondition_error("factorization of zero");
    unsigned __int128 prod = 1;
    std::uint64_t prev = 1;
    for (const auto& pp : factors_) {
      if (pp.prime <= prev || pp.exponent == 0)
        throw precondition_error("factor list not strictly increasing");
      prev = pp.prime;
      for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
      if (prod > n_) throw precondition_error("factor product exceeds n");
    }
    if (prod != n_) throw precondition_error("factor product differs from n");
  }

  std::uint64_t value() const noexcept { return n_; }
  const std::vector<PrimePower>& factors() const noexcept { return factors_; }

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::uint64_t n_ = 1;
  std::vector<PrimePower> factors_;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Brent's variant; returns a non-trivial factor of the odd composite n.
inline std::uint64_t pollard_brent(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t block = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += block) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(block, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out);

}  // namespace detail

/// Deterministic Miller-Rabin; the base set is exact for all 64-bit n.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {
inline void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}
}  // namespace detail

inline constexpr std::uint64_t trial_division_limit = 1'000'000;

/// Trial division up to 10^6, then Pollard-Brent on the cofactor.
inline Factorization factorize(std::uint64_t n) {
  if (n == 0) throw precondition_error("factorize: n must be positive");
  if (n > max_factorizable) throw precondition_error("factorize: n exceeds 2^63-1");
  std::vector<PrimePower> factors;
  std::uint64_t m = n;
  auto strip = [&](std::uint64_t p) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) factors.push_back({p, e});
  };
  strip(2);
  for (std::uint64_t p = 3; p <= trial_division_limit && p * p <= m; p += 2) strip(p);
  if (m > 1) {
    std::vector<std::uint64_t> rest;
    if (m <= trial_division_limit * trial_division_limit || is_prime(m))
      rest.push_back(m);
    else
      detail::factor_rec(m, rest);
    std::sort(rest.begin(), rest.end());
    for (std::size_t i = 0; i < rest.size();) {
      std::size_t j = i;
      while (j < rest.size() && rest[j] == rest[i]) ++j;
      factors.push_back({rest[i], static_cast<unsigned>(j - i)});
      i = j;
    }
  }
  return Factorization(n, std::move(factors));
}

/// Smallest-prime-factor table on [0, limit]; gives O(log n) factorization.
class SmallestPrimeFactorTable {
 public:
  explicit SmallestPrimeFactorTable(std::uint32_t limit) : spf_(std::size_t{limit} + 1, 0) {
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (spf_[i]) continue;
      spf_[i] = i;
      for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += i)
        if (!spf_[j]) spf_[j] = i;
    }
  }

  std::uint32_t limit() const noexcept { return static_cast<std::uint32_t>(spf_.size() - 1); }
  std::uint32_t smallest_factor(std::uint32_t n) const { return spf_.at(n); }
  bool is_prime(std::uint32_t n) const { return n >= 2 && spf_.at(n) == n; }

  Factorization factorize(std::uint32_t n) const {
    if (n == 0) throw precondition_error("factorize: n must be positive");
    if (n > limit()) throw precondition_error("factorize: n beyond table limit");
    std::vector<PrimePower> factors;
    for (std::uint32_t m = n; m > 1;) {
      std::uint32_t p = spf_[m];
      unsigned e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      factors.push_back({p, e});
    }
    return Factorization(n, std::move(factors));
  }

 private:
  std::vector<std::uint32_t> spf_;
};

/// omega(n) for every n <= limit, one byte each.
inline std::vector<std::uint8_t> omega_table(std::uint32_t limit) {
  std::vector<std::uint8_t> omega(std::size_t{limit} + 1, 0);
  for (std::uint32_t p = 2; p <= limit; ++p) {
    if (omega[p]) continue;
    for (std::uint64_t j = p; j <= limit; j += p) ++omega[j];
  }
  return omega;
}

inline unsigned omega(const Factorization& f) noexcept {
  return static_cast<unsigned>(f.factors().size());
}

inline std::uint64_t phi(const Factorization& f) noexcept {
  std::uint64_t r = f.value();
  for (const auto& pp : f.factors()) r = r / pp.prime * (pp.prime - 1);
  return r;
}

inline int mu(const Factorization& f) noexcept {
  for (const auto& pp : f.factors())
    if (pp.exponent > 1) return 0;
  return (f.factors().size() % 2) ? -1 : 1;
}

/// Odd-part-of-two: n / gcd(n, 2).
inline std::uint64_t n_star(std::uint64_t n) {
  if (n == 0) throw precondition_error("n_star: n must be positive");
  return (n % 2 == 0) ? n / 2 : n;
}

/// Squarefree divisors with an even number of prime factors, ascending.
inline std::vector<std::uint64_t> mu_one_divisors(const Factorization& f) {
  const auto& ps = f.factors();
  std::vector<std::uint64_t> out{1};
  std::vector<std::uint64_t> odd;  // divisors with an odd number of primes
  for (const auto& pp : ps) {
    const std::size_t ne = out.size(), no = odd.size();
    for (std::size_t i = 0; i < no; ++i) out.push_back(odd[i] * pp.prime);
    for (std::size_t i = 0; i < ne; ++i) odd.push_back(out[i] * pp.prime);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All positive divisors, ascending.
inline std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> out{1};
  for (const auto& pp : f.factors()) {
    const std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pk *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Sum of log^2(n/m) over the divisors m of n with mu(m) = 1.
inline double f_of_n(const Factorization& f) {
  const double n = static_cast<double>(f.value());
  double sum = 0.0;
  for (std::uint64_t m : mu_one_divisors(f)) {
    double l = std::log(n / static_cast<double>(m));
    sum += l * l;
  }
  return sum;
}

// Euler's constant, 30 significant digits.
inline constexpr const char* euler_gamma_digits = "0.577215664901532860606512090082";
inline constexpr double euler_gamma = 0.577215664901532860606512090082;

/// Upper bound for omega(n): 1.3841 log n / log log n, n >= 3.
inline double omega_bound(std::uint64_t n) {
  if (n < 3) throw precondition_error("omega_bound: n must be >= 3");
  const double l = std::log(static_cast<double>(n));
  return 1.3841 * l / std::log(l);
}

/// Rosser-Schoenfeld lower bound n / (e^gamma log log n + 2.50637 / log log n).
inline double phi_lower_rs(std::uint64_t n) {
  if (n < 3) throw precondition_error("phi_lower_rs: n must be >= 3");
  const double ll = std::log(std::log(static_cast<double>(n)));
  return static_cast<double>(n) / (std::exp(euler_gamma) * ll + 2.50637 / ll);
}

inline constexpr std::array<std::uint64_t, 10> first_primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

/// n * prod_{i <= omega(n)} (p_i - 1)/p_i over the first omega(n) primes.
inline double phi_lower_primorial(const Factorization& f) {
  const unsigned w = omega(f);
  if (w < 2) throw precondition_error("phi_lower_primorial: omega(n) must be >= 2");
  if (w > first_primes.size()) throw precondition_error("phi_lower_primorial: omega(n) too large");
  double r = static_cast<double>(f.value());
  for (unsigned i = 0; i < w; ++i)
    r *= static_cast<double>(first_primes[i] - 1) / static_cast<double>(first_primes[i]);
  return r;
}

struct QuadraticCoefficients {
  double square, linear, constant;
};

/// (a, b, c) with f(n) < a log^2 n + b log n + c for omega(n) = 2..8.
inline QuadraticCoefficients f_poly_coefficients(unsigned w) {
  static constexpr std::array<QuadraticCoefficients, 7> table{{
      {2, -3.5, 3.5},
      {4, -13.4, 15.5},
      {8, -41, 71},
      {16, -117, 264},
      {32, -309, 883},
      {64, -775, 2718},
      {128, -1886, 7913},
  }};
  if (w < 2 || w > 8) throw precondition_error("f_poly_bound: omega must be in 2..8");
  return table[w - 2];
}

inline double f_poly_bound(double log_n, unsigned w) {
  const auto c = f_poly_coefficients(w);
  return c.square * log_n * log_n + c.linear * log_n + c.constant;
}

}  // namespace primdiv
