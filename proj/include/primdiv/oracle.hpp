#pragma once

// Exact Lucas and Lehmer numbers, cyclotomic values Phi_n(alpha, beta) and
// primitive-divisor detection, used as ground truth for the analytic side.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "primdiv/arith.hpp"
#include "primdiv/numeric.hpp"
#include "primdiv/quadratic.hpp"

namespace primdiv {

struct oracle_fault : std::logic_error {
  using std::logic_error::logic_error;
};

inline constexpr std::uint64_t oracle_max_index = 10'000;
inline constexpr std::uint64_t pollard_iteration_cap = 100'000'000;

enum class PairKind { lucas, lehmer };

inline const char* to_string(PairKind k) { return k == PairKind::lucas ? "lucas" : "lehmer"; }

/// (alpha + beta)^2 = R and alpha * beta = Q. For Lucas pairs P = alpha + beta
/// is an integer and R = P^2.
struct LehmerPair {
  PairKind kind = PairKind::lehmer;
  BigInt R = 0;
  BigInt Q = 0;
  BigInt P = 0;  // Lucas only

  BigInt discriminant() const { return R - 4 * Q; }  // (alpha - beta)^2
  // alpha, beta are complex conjugates with |alpha|^2 = Q.
  bool complex_conjugate() const { return R > 0 && discriminant() < 0; }
};

namespace detail {

// u_0 .. u_n by integer recurrence, no validation.
inline std::vector<BigInt> raw_sequence(const LehmerPair& p, std::uint64_t n) {
  std::vector<BigInt> u(std::max<std::uint64_t>(n + 1, 2));
  u[0] = 0;
  u[1] = 1;
  for (std::uint64_t k = 2; k <= n; ++k) {
    if (p.kind == PairKind::lucas)
      u[k] = p.P * u[k - 1] - p.Q * u[k - 2];
    else
      u[k] = (k % 2 ? p.R : BigInt(1)) * u[k - 1] - p.Q * u[k - 2];
  }
  u.resize(n + 1);
  return u;
}

inline void validate_pair(const LehmerPair& p) {
  if (p.R == 0 || p.Q == 0) throw precondition_error("pair: R and Q must be non-zero");
  if (boost::multiprecision::gcd(p.R, p.Q) != 1) throw precondition_error("pair: gcd(R, Q) must be 1");
  if (p.discriminant() == 0) throw precondition_error("pair: alpha = beta");
  // alpha/beta is a root of unity iff u_m = 0 for some m; quadratic roots of
  // unity have order at most 6.
  const auto u = raw_sequence(p, 12);
  for (std::uint64_t m = 1; m <= 12; ++m)
    if (u[m] == 0) throw precondition_error("pair: alpha/beta is a root of unity (u_" + std::to_string(m) + " = 0)");
}

}  // namespace detail

inline LehmerPair make_lehmer(BigInt R, BigInt Q) {
  LehmerPair p{PairKind::lehmer, std::move(R), std::move(Q), 0};
  detail::validate_pair(p);
  return p;
}

inline LehmerPair make_lucas(BigInt P, BigInt Q) {
  LehmerPair p{PairKind::lucas, P * P, std::move(Q), P};
  if (P == 0) throw precondition_error("pair: P must be non-zero");
  detail::validate_pair(p);
  return p;
}

struct SequenceValue {
  std::uint64_t n = 0;
  BigInt value = 0;
  unsigned delta = 1;
};

inline unsigned delta_of(const LehmerPair& p, std::uint64_t n) {
  return p.kind == PairKind::lehmer && n % 2 == 0 ? 2 : 1;
}

inline void require_oracle_index(std::uint64_t n) {
  if (n > oracle_max_index) throw precondition_error("oracle: n exceeds " + std::to_string(oracle_max_index));
}

/// u_0 .. u_n.
inline std::vector<BigInt> lehmer_sequence(const LehmerPair& p, std::uint64_t n) {
  require_oracle_index(n);
  detail::validate_pair(p);
  return detail::raw_sequence(p, n);
}

/// u_n = (alpha^n - beta^n)/(alpha^delta - beta^delta).
inline SequenceValue lehmer_u(const LehmerPair& p, std::uint64_t n) {
  auto u = lehmer_sequence(p, n);
  return {n, std::move(u[n]), delta_of(p, n)};
}

/// U_0 .. U_n with U_k = (alpha^k - beta^k)/(alpha - beta) in Z[sqrt R],
/// from U_k = sqrt(R) U_{k-1} - Q U_{k-2}.
inline std::vector<QuadraticInteger> ring_sequence(const LehmerPair& p, std::uint64_t n) {
  require_oracle_index(n);
  const QuadraticInteger s = QuadraticInteger::root(p.R);
  std::vector<QuadraticInteger> U;
  U.reserve(n + 1);
  U.push_back(QuadraticInteger::integer(0, p.R));
  if (n >= 1) U.push_back(QuadraticInteger::integer(1, p.R));
  for (std::uint64_t k = 2; k <= n; ++k) U.push_back(s * U[k - 1] - p.Q * U[k - 2]);
  return U;
}

/// u_n read off the ring representation.
inline BigInt u_from_ring(const LehmerPair& p, const QuadraticInteger& U, std::uint64_t n) {
  if (p.kind == PairKind::lucas) return U.x() + U.y() * p.P;
  if (n % 2) {
    if (!U.is_rational()) throw oracle_fault("odd-index U_n is not rational");
    return U.x();
  }
  if (U.x() != 0) throw oracle_fault("even-index U_n is not a multiple of sqrt(R)");
  return U.y();
}

/// Phi_n(alpha, beta) = prod_{d|n} u_d^{mu(n/d)}, exact. For Lehmer pairs
/// Phi_2 = sqrt(R) is not a rational integer and is rejected.
inline BigInt phi_n_exact(const LehmerPair& p, std::uint64_t n) {
  if (n < 2) throw precondition_error("phi_n_exact: n must be >= 2");
  if (n == 2 && p.kind == PairKind::lehmer) throw precondition_error("phi_n_exact: Phi_2 = sqrt(R) for Lehmer pairs");
  if (n == 2) return p.P;
  const auto u = lehmer_sequence(p, n);
  BigInt num = 1, den = 1;
  for (std::uint64_t d : divisors(factorize(n))) {
    const int m = mu(factorize(n / d));
    if (m == 1) num *= u[d];
    if (m == -1) den *= u[d];
  }
  if (den == 0 || num % den != 0) throw oracle_fault("phi_n_exact: inexact division at n = " + std::to_string(n));
  return num / den;
}

/// Same product carried out in the quadratic ring.
inline QuadraticInteger phi_n_ring(const LehmerPair& p, std::uint64_t n) {
  if (n < 2) throw precondition_error("phi_n_ring: n must be >= 2");
  const auto U = ring_sequence(p, n);
  QuadraticInteger num = QuadraticInteger::integer(1, p.R), den = num;
  for (std::uint64_t d : divisors(factorize(n))) {
    const int m = mu(factorize(n / d));
    if (m == 1) num = num * U[d];
    if (m == -1) den = den * U[d];
  }
  try {
    return num / den;
  } catch (const inexact_division&) {
    throw oracle_fault("phi_n_ring: inexact division at n = " + std::to_string(n));
  }
}

// ---------------------------------------------------------------------------
// Factoring of sequence values.

struct BigFactorization {
  std::vector<BigInt> primes;  // distinct, ascending
  bool complete = true;        // false if the Pollard budget ran out
  bool probable = false;       // some prime above 2^64 certified by Miller-Rabin only
  BigInt unfactored = 1;       // product of composites left over
};

namespace detail {

inline bool big_is_prime(const BigInt& n, bool& probable) {
  if (n < 2) return false;
  if (n <= std::numeric_limits<std::uint64_t>::max()) return is_prime(n.convert_to<std::uint64_t>());
  std::mt19937_64 rng(0x5eed);
  const bool r = boost::multiprecision::miller_rabin_test(n, 32, rng);
  if (r) probable = true;
  return r;
}

inline std::optional<BigInt> big_pollard_brent(const BigInt& n, std::uint64_t& budget) {
  for (unsigned c = 1; c < 64; ++c) {
    auto f = [&](const BigInt& x) { return (x * x + c) % n; };
    BigInt y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t block = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      if (budget < r) return std::nullopt;
      budget -= r;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += block) {
        ys = y;
        const std::uint64_t steps = std::min(block, r - k);
        if (budget < steps) return std::nullopt;
        budget -= steps;
        for (std::uint64_t i = 0; i < steps; ++i) {
          y = f(y);
          q = q * (x > y ? x - y : y - x) % n;
        }
        g = boost::multiprecision::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        if (budget-- == 0) return std::nullopt;
        ys = f(ys);
        g = boost::multiprecision::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return std::nullopt;
}

inline void big_factor_rec(const BigInt& n, std::vector<BigInt>& out, BigFactorization& res,
                           std::uint64_t& budget) {
  if (n == 1) return;
  if (big_is_prime(n, res.probable)) {
    out.push_back(n);
    return;
  }
  if (n <= max_factorizable) {
    const auto f = factorize(n.convert_to<std::uint64_t>());
    for (const auto& pp : f.factors()) out.push_back(pp.prime);
    return;
  }
  auto d = big_pollard_brent(n, budget);
  if (!d) {
    res.complete = false;
    res.unfactored *= n;
    return;
  }
  big_factor_rec(*d, out, res, budget);
  big_factor_rec(n / *d, out, res, budget);
}

}  // namespace detail

/// Distinct primes of |n|: trial division to 10^6, then Pollard-Brent.
inline BigFactorization factor_big(BigInt n, std::uint64_t iteration_cap = pollard_iteration_cap) {
  if (n < 0) n = -n;
  if (n == 0) throw precondition_error("factor_big: n must be non-zero");
  BigFactorization res;
  std::vector<BigInt> out;
  auto strip = [&](std::uint64_t p) {
    if (n % p == 0) {
      out.emplace_back(p);
      while (n % p == 0) n /= p;
    }
  };
  strip(2);
  for (std::uint64_t p = 3; p <= trial_division_limit && BigInt(p) * p <= n; p += 2) strip(p);
  if (n > 1 && n <= max_factorizable) {
    const auto f = factorize(n.convert_to<std::uint64_t>());
    for (const auto& pp : f.factors()) out.emplace_back(pp.prime);
  } else {
    std::uint64_t budget = iteration_cap;
    detail::big_factor_rec(n, out, res, budget);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  res.primes = std::move(out);
  return res;
}

// ---------------------------------------------------------------------------
// Primitive divisors.

struct PrimitiveDivisorResult {
  std::uint64_t n = 0;
  bool has_primitive = false;
  // Largest divisor of u_n coprime to the discriminant term and to every
  // earlier term; has_primitive <=> primitive_part > 1.
  BigInt primitive_part = 1;
  std::vector<BigInt> witnesses;
  bool witnesses_complete = true;
  bool witnesses_probable = false;
};

/// Smallest index at which the primitive-divisor definition applies.
inline std::uint64_t primitive_min_index(const LehmerPair& p) { return p.kind == PairKind::lucas ? 3 : 4; }

/// Exact verdict by removing from |u_n| every prime it shares with the
/// discriminant term and with the earlier terms; witnesses are the primes of
/// what remains.
inline PrimitiveDivisorResult primitive_divisor_check(const LehmerPair& p, std::uint64_t n,
                                                      bool want_witnesses = true) {
  if (n < primitive_min_index(p))
    throw precondition_error("primitive_divisor_check: n must be >= " + std::to_string(primitive_min_index(p)));
  const auto u = lehmer_sequence(p, n);
  BigInt g = abs(u[n]);
  auto strip = [&](const BigInt& x) {
    for (BigInt c = gcd(g, x); c != 1; c = gcd(g, x)) g /= c;
  };
  if (p.kind == PairKind::lucas) {
    strip(p.discriminant());
    for (std::uint64_t k = 2; k < n && g > 1; ++k) strip(u[k]);
  } else {
    strip(p.R * p.discriminant());
    for (std::uint64_t k = 3; k < n && g > 1; ++k) strip(u[k]);
  }
  PrimitiveDivisorResult r;
  r.n = n;
  r.has_primitive = g > 1;
  r.primitive_part = g;
  if (want_witnesses && r.has_primitive) {
    auto f = factor_big(g);
    r.witnesses = std::move(f.primes);
    r.witnesses_complete = f.complete;
    r.witnesses_probable = f.probable;
  }
  return r;
}

// ---------------------------------------------------------------------------
// |Phi_n| > n implies a primitive divisor.

struct StewartEntry {
  std::uint64_t n = 0;
  BigInt abs_phi = 0;
  bool phi_exceeds_n = false;
  bool has_primitive = false;
  bool asserted = false;  // false at n in {2, 3, 4, 6}: recorded only
};

struct StewartReport {
  std::uint64_t n_lo = 0, n_hi = 0;
  std::vector<StewartEntry> entries;
  std::vector<std::uint64_t> small_phi;       // |Phi_n| <= n
  std::vector<std::uint64_t> counterexamples; // asserted n with |Phi_n| > n and no primitive divisor
  std::vector<std::uint64_t> recorded_exceptions;  // unasserted n with |Phi_n| > n and no primitive divisor
};

inline bool stewart_asserted(std::uint64_t n) { return n >= 5 && n != 6; }

/// Throws oracle_fault on a counterexample unless `strict` is false.
inline StewartReport stewart_crosscheck(const LehmerPair& p, std::uint64_t n_lo, std::uint64_t n_hi,
                                        bool strict = true) {
  if (n_lo > n_hi) throw precondition_error("stewart_crosscheck: empty range");
  require_oracle_index(n_hi);
  StewartReport rep;
  rep.n_lo = n_lo;
  rep.n_hi = n_hi;
  for (std::uint64_t n = std::max(n_lo, primitive_min_index(p)); n <= n_hi; ++n) {
    StewartEntry e;
    e.n = n;
    e.abs_phi = abs(phi_n_exact(p, n));
    e.phi_exceeds_n = e.abs_phi > n;
    e.has_primitive = primitive_divisor_check(p, n, false).has_primitive;
    e.asserted = stewart_asserted(n);
    if (!e.phi_exceeds_n) rep.small_phi.push_back(n);
    if (e.phi_exceeds_n && !e.has_primitive) (e.asserted ? rep.counterexamples : rep.recorded_exceptions).push_back(n);
    rep.entries.push_back(std::move(e));
  }
  if (strict && !rep.counterexamples.empty())
    throw oracle_fault("stewart_crosscheck: |Phi_n| > n without a primitive divisor at n = " +
                       std::to_string(rep.counterexamples.front()));
  return rep;
}

// ---------------------------------------------------------------------------
// High-precision logarithms for the Lemma 6 sandwich.

/// log|alpha^n - beta^n| = log|alpha - beta| + log|U_n| for a complex
/// conjugate pair.
inline wide256 log_abs_power_difference(const LehmerPair& p, std::uint64_t n) {
  using boost::multiprecision::log;
  if (!p.complex_conjugate()) throw precondition_error("log_abs_power_difference: pair must be complex conjugate");
  if (n == 0) throw precondition_error("log_abs_power_difference: n must be positive");
  const BigInt u = abs(lehmer_u(p, n).value);
  wide256 r = log(wide256(abs(p.discriminant()))) / 2 + log(wide256(u));
  if (p.kind == PairKind::lehmer && n % 2 == 0) r += log(wide256(p.R)) / 2;
  return r;
}

/// log|alpha| = (log Q)/2 for a complex conjugate pair.
inline wide256 log_abs_alpha(const LehmerPair& p) {
  using boost::multiprecision::log;
  if (!p.complex_conjugate()) throw precondition_error("log_abs_alpha: pair must be complex conjugate");
  return log(wide256(p.Q)) / 2;
}

}  // namespace primdiv
