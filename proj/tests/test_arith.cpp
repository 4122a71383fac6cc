#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "primdiv/arith.hpp"

using namespace primdiv;

namespace {

// Plain Eratosthenes, kept separate from the library's tables.
std::vector<std::uint32_t> primes_upto(std::uint32_t n) {
  std::vector<bool> comp(n + 1, false);
  std::vector<std::uint32_t> ps;
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    ps.push_back(i);
    for (std::uint64_t j = std::uint64_t{i} * i; j <= n; j += i) comp[j] = true;
  }
  return ps;
}

std::vector<PrimePower> naive_factor(std::uint64_t n, const std::vector<std::uint32_t>& ps) {
  std::vector<PrimePower> out;
  for (std::uint32_t p : ps) {
    if (std::uint64_t{p} * p > n) break;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

}  // namespace

TEST(Factorize, Examples) {
  EXPECT_TRUE(factorize(1).factors().empty());
  const auto f = factorize(30030);
  ASSERT_EQ(f.factors().size(), 6u);
  const std::uint64_t want[] = {2, 3, 5, 7, 11, 13};
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(f.factors()[i].prime, want[i]);
    EXPECT_EQ(f.factors()[i].exponent, 1u);
  }
  const auto g = factorize(24576);
  ASSERT_EQ(g.factors().size(), 2u);
  EXPECT_EQ(g.factors()[0], (PrimePower{2, 13}));
  EXPECT_EQ(g.factors()[1], (PrimePower{3, 1}));
}

TEST(Factorize, RejectsOutOfRange) {
  EXPECT_THROW(factorize(0), precondition_error);
  EXPECT_THROW(factorize(max_factorizable + 1), precondition_error);
  EXPECT_NO_THROW(factorize(max_factorizable));
}

TEST(Factorize, InvariantsEnforced) {
  EXPECT_THROW(Factorization(12, {{3, 1}, {2, 2}}), precondition_error);
  EXPECT_THROW(Factorization(12, {{2, 1}, {3, 1}}), precondition_error);
  EXPECT_THROW(Factorization(12, {{2, 2}, {3, 0}}), precondition_error);
  EXPECT_NO_THROW(Factorization(12, {{2, 2}, {3, 1}}));
}

TEST(Factorize, AgreesWithSieveOracleToOneMillion) {
  const auto ps = primes_upto(1000);
  const SmallestPrimeFactorTable table(1'000'000);
  for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
    const auto want = naive_factor(n, ps);
    ASSERT_EQ(factorize(n).factors(), want) << n;
    ASSERT_EQ(table.factorize(static_cast<std::uint32_t>(n)).factors(), want) << n;
  }
}

TEST(Factorize, LargeSemiprimesAndRandom) {
  const std::uint64_t p = 1'000'000'007, q = 998'244'353;
  const auto f = factorize(p * q);
  ASSERT_EQ(f.factors().size(), 2u);
  EXPECT_EQ(f.factors()[0].prime, q);
  EXPECT_EQ(f.factors()[1].prime, p);

  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = (rng() >> 1) | 1;
    const auto g = factorize(n);
    unsigned __int128 prod = 1;
    for (const auto& pp : g.factors()) {
      EXPECT_TRUE(is_prime(pp.prime)) << pp.prime;
      for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
    }
    EXPECT_EQ(static_cast<std::uint64_t>(prod), n);
  }
}

TEST(IsPrime, MatchesSieveAndKnownHardCases) {
  const auto ps = primes_upto(1'000'000);
  std::vector<bool> prime(1'000'001, false);
  for (auto p : ps) prime[p] = true;
  for (std::uint64_t n = 0; n <= 1'000'000; ++n) ASSERT_EQ(is_prime(n), prime[n]) << n;
  EXPECT_TRUE(is_prime((std::uint64_t{1} << 61) - 1));
  EXPECT_FALSE(is_prime(3'215'031'751ull));           // strong pseudoprime to 2, 3, 5, 7
  EXPECT_FALSE(is_prime(3'825'123'056'546'413'051ull));  // strong pseudoprime to the first nine prime bases
  EXPECT_TRUE(is_prime(18'446'744'073'709'551'557ull));  // largest 64-bit prime
}

TEST(Arith, OmegaPhiMuNstar) {
  const auto f = factorize(30030);
  EXPECT_EQ(phi(f), 5760u);
  EXPECT_EQ(omega(f), 6u);
  EXPECT_EQ(mu(factorize(1)), 1);
  EXPECT_EQ(mu(factorize(6)), 1);
  EXPECT_EQ(mu(factorize(30)), -1);
  EXPECT_EQ(mu(factorize(4)), 0);
  EXPECT_EQ(n_star(510510), 255255u);
  EXPECT_EQ(n_star(15015), 15015u);
  EXPECT_THROW(n_star(0), precondition_error);
}

TEST(Arith, MuOneDivisors) {
  EXPECT_EQ(mu_one_divisors(factorize(12)), (std::vector<std::uint64_t>{1, 6}));
  EXPECT_EQ(mu_one_divisors(factorize(30)), (std::vector<std::uint64_t>{1, 6, 10, 15}));
  const auto d = mu_one_divisors(factorize(30030));
  ASSERT_EQ(d.size(), 32u);
  EXPECT_EQ(d.front(), 1u);
  EXPECT_EQ(d.back(), 30030u);
  EXPECT_EQ(mu_one_divisors(factorize(1)), (std::vector<std::uint64_t>{1}));
}

TEST(Arith, FOfN) {
  EXPECT_DOUBLE_EQ(f_of_n(factorize(1)), 0.0);
  EXPECT_NEAR(f_of_n(factorize(101)), std::pow(std::log(101.0), 2), 1e-12);
  EXPECT_NEAR(f_of_n(factorize(12)), std::pow(std::log(12.0), 2) + std::pow(std::log(2.0), 2), 1e-12);
  EXPECT_NEAR(f_of_n(factorize(12)), 6.655, 5e-4);
}

TEST(Arith, AnalyticBoundsExamples) {
  EXPECT_NEAR(omega_bound(30030), 1.3841 * std::log(30030.0) / std::log(std::log(30030.0)), 1e-12);
  EXPECT_NEAR(omega_bound(30030), 6.116, 1e-3);
  EXPECT_GE(omega_bound(30030), 6.0);
  EXPECT_LE(phi_lower_rs(30030), 5760.0);
  const auto f = factorize(30030);
  EXPECT_LE(phi_lower_primorial(f), 5760.0 + 1e-9);
  EXPECT_THROW(omega_bound(2), precondition_error);
  EXPECT_THROW(phi_lower_rs(2), precondition_error);
}

TEST(Arith, FPolyBound) {
  EXPECT_NEAR(f_poly_bound(std::log(12.0), 2), 7.15, 0.01);
  EXPECT_GT(f_poly_bound(std::log(12.0), 2), f_of_n(factorize(12)));
  const auto c6 = f_poly_coefficients(6);
  EXPECT_EQ(c6.square, 32);
  EXPECT_EQ(c6.linear, -309);
  EXPECT_EQ(c6.constant, 883);
  const auto c8 = f_poly_coefficients(8);
  EXPECT_EQ(c8.square, 128);
  EXPECT_EQ(c8.linear, -1886);
  EXPECT_EQ(c8.constant, 7913);
  EXPECT_THROW(f_poly_bound(1.0, 1), precondition_error);
  EXPECT_THROW(f_poly_bound(1.0, 9), precondition_error);
}

TEST(ArithProperty, IdentitiesAndBoundsToOneMillion) {
  const SmallestPrimeFactorTable table(1'000'000);
  for (std::uint32_t n = 2; n <= 1'000'000; ++n) {
    const auto f = table.factorize(n);
    const unsigned w = omega(f);
    std::int64_t s = 0;
    for (std::uint64_t m : divisors(f)) s += mu(table.factorize(static_cast<std::uint32_t>(m))) * static_cast<std::int64_t>(n / m);
    ASSERT_EQ(s, static_cast<std::int64_t>(phi(f))) << n;
    ASSERT_EQ(mu_one_divisors(f).size(), std::size_t{1} << (w - 1)) << n;
    if (n >= 3) {
      ASSERT_LT(w, omega_bound(n)) << n;
      ASSERT_GE(static_cast<double>(phi(f)), phi_lower_rs(n)) << n;
    }
    if (w >= 2 && w <= 8) {
      const double fn = f_of_n(f);
      const double l = std::log(static_cast<double>(n));
      ASSERT_LT(fn, f_poly_bound(l, w)) << n;
      ASSERT_LT(fn, std::ldexp(l * l, static_cast<int>(w) - 1)) << n;
      ASSERT_LE(phi_lower_primorial(f), static_cast<double>(phi(f)) * (1 + 1e-12)) << n;
    }
  }
}

TEST(ArithProperty, OmegaTableMatchesFactorization) {
  const auto w = omega_table(200'000);
  for (std::uint32_t n = 1; n <= 200'000; ++n) ASSERT_EQ(w[n], omega(factorize(n))) << n;
}
