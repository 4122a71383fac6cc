#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <thread>

#include "primdiv/cyclotomic.hpp"

using namespace primdiv;

namespace {

// F(n) straight from the printed definition: explicit double loops over r and m.
double f_brute(std::uint64_t n, double* at_r = nullptr, std::uint64_t r_fixed = 0) {
  const auto f = factorize(n);
  const auto mu1 = mu_one_divisors(f);
  const double lead = std::ldexp(std::log(2.0), static_cast<int>(omega(f)) - 3);
  double best = INFINITY;
  for (std::uint64_t r : mu1) {
    const std::uint64_t x = n_star(n / r);
    const double term = x >= 2 ? 8 * c3(x) * std::pow(std::log(static_cast<double>(x)), 2) : 0.0;
    double v = static_cast<double>(phi(f)) - lead;
    for (std::uint64_t m : mu1) {
      if (m > r) v -= std::log(static_cast<double>(m)) / 4;
      else v -= std::max(1.0, term);
    }
    if (r == r_fixed && at_r) *at_r = v;
    best = std::min(best, v);
  }
  return best;
}

}  // namespace

TEST(SecondIneq, Examples) {
  EXPECT_NEAR(secondineq_lhs(24576).lhs, -94.09, 0.05);
  EXPECT_FALSE(secondineq_lhs(24576).holds);
  EXPECT_LE(secondineq_lhs(480480).lhs, 0.0);
  EXPECT_LE(secondineq_lhs(482790).lhs, 0.0);
  EXPECT_GT(secondineq_lhs(241395).lhs, 0.0);
  EXPECT_TRUE(secondineq_lhs(241395).holds);
  EXPECT_EQ(secondineq_lhs(241395).threshold, 0.0);
  EXPECT_THROW(secondineq_lhs(2), precondition_error);
}

TEST(FValue, Examples) {
  const auto a = f_value(15015);
  EXPECT_NEAR(a.lhs, -691.61, 0.05);
  EXPECT_NEAR(a.threshold, std::log(15015.0) / 4, 1e-12);
  EXPECT_FALSE(a.holds);
  EXPECT_NEAR(f_value(26880).lhs, -173.84, 0.05);
  EXPECT_NEAR(f_value(23040).lhs, -6.5, 0.5);
  for (std::uint64_t n : {15015u, 26880u, 23040u, 28980u}) {
    const auto v = f_value(n);
    ASSERT_TRUE(v.minimizer.has_value());
    EXPECT_EQ(*v.minimizer, 1u) << n;
  }
}

TEST(FValue, MatchesBruteForceDefinition) {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t n = 3 + rng() % 2'000'000;
    const double want = f_brute(n);
    ASSERT_NEAR(f_value(n).lhs, want, 1e-9 * std::max(1.0, std::abs(want))) << n;
  }
}

TEST(FValue, NotAboveAnyBracket) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t n = 3 + rng() % 1'000'000;
    const auto mu1 = mu_one_divisors(factorize(n));
    double bracket = 0;
    f_brute(n, &bracket, mu1.back());
    ASSERT_LE(f_value(n).lhs, bracket + 1e-9 * std::abs(bracket)) << n;
  }
}

TEST(Theta, Examples) {
  const auto v = theta_threshold(36);
  EXPECT_NEAR(v.lhs, 12 - (std::log(2.0) + 2.001 * std::log(36.0)) / 2, 1e-12);
  EXPECT_NEAR(v.threshold, std::log(36.0) / 4, 1e-12);
  EXPECT_THROW(theta_threshold(30), precondition_error);
  EXPECT_EQ(criterion_from_string("theta"), Criterion::theta_threshold);
}

TEST(Theta, HoldsFrom31ToOneMillion) {
  const SmallestPrimeFactorTable t(1'000'000);
  for (std::uint32_t n = 31; n <= 1'000'000; ++n) ASSERT_TRUE(theta_threshold(t.factorize(n)).holds) << n;
}

TEST(Aux, ScansToTenMillion) {
  const auto w = omega_table(10'000'000);
  for (std::uint64_t n = 43; n <= 10'000'000; ++n) ASSERT_TRUE(aux_n14(n, w[n]).holds) << n;
  for (std::uint64_t n = 211; n <= 10'000'000; ++n) ASSERT_TRUE(aux_2n14(n, w[n]).holds) << n;
  // Below the stated ranges the values are informational only.
  const auto v16 = aux_n14(16);
  EXPECT_NEAR(v16.lhs, 2.0, 1e-12);
  EXPECT_NEAR(v16.threshold, std::log(16.0) / 4 + std::log(2.0) / 4 + 1, 1e-12);
}

TEST(Global, FailsLowHoldsHigh) {
  EXPECT_FALSE(global_inequality(100'000).holds);
  EXPECT_TRUE(global_inequality(18'000'001).holds);
  for (std::uint64_t n = 18'000'001; n <= 1'000'000'000; n += 997'001) ASSERT_TRUE(global_inequality(n).holds) << n;
}

TEST(Global, CrossoverBelowEighteenMillion) {
  std::uint64_t last_fail = 0;
  for (std::uint64_t n = 17'000'000; n <= 18'500'000; ++n)
    if (!global_inequality(n).holds) last_fail = n;
  ASSERT_GT(last_fail, 0u);
  EXPECT_LE(last_fail, 18'000'000u);
}

TEST(PrimeCase, Examples) {
  EXPECT_LT(prime_case(13).lhs, 0.0);
  EXPECT_THROW(prime_case(15), precondition_error);
  const SmallestPrimeFactorTable t(1'000'000);
  std::uint64_t largest_fail = 0;
  for (std::uint32_t p = 2; p <= 1'000'000; ++p) {
    if (!t.is_prime(p)) continue;
    if (!prime_case(p).holds) largest_fail = p;
  }
  EXPECT_GT(largest_fail, 0u);
  EXPECT_LE(largest_fail, 5400u);
}

TEST(Lemma6, Examples) {
  const HeightContext ctx{2, 5.0, true};
  EXPECT_NEAR(lemma6_lower(1, ctx, 5.0), 5.0 - 5.0, 1e-12);
  EXPECT_NEAR(lemma6_upper(2, 5.0), std::log(2.0) + 10.0, 1e-12);
  EXPECT_NEAR(lemma6_lower(4, ctx, 5.0), 20.0 - c3(2) * 8 * 5.0 * std::pow(std::log(2.0), 2), 1e-12);
  EXPECT_NEAR(lemma6_lower(15, ctx, 5.0), 75.0 - c3(15) * 8 * 5.0 * std::pow(std::log(15.0), 2), 1e-12);
  EXPECT_THROW(lemma6_upper(0, 1.0), precondition_error);
  EXPECT_THROW(lemma6_lower(5, HeightContext{2, 4.0, true}, 4.0), precondition_error);
  for (std::uint64_t n = 1; n < 200; ++n) EXPECT_LT(lemma6_lower(n, ctx, 5.0), lemma6_upper(n, 5.0)) << n;
}

TEST(PhiLb, Examples) {
  const double h = 4.5;
  const HeightContext ctx{2, h, true};
  const std::uint64_t p = 101;
  EXPECT_NEAR(philb_lower(p, ctx), h * (p - 1) - std::log(2.0) - h - 8 * h * c3(p) * std::pow(std::log(101.0), 2),
              1e-9);
  EXPECT_EQ(mu_one_divisors(factorize(6)), (std::vector<std::uint64_t>{1, 6}));
  EXPECT_TRUE(std::isfinite(philb_lower(6, ctx)));
  EXPECT_THROW(philb_lower(2, ctx), precondition_error);
  // Linear in h: grows with h exactly when phi(n) > 1 + 8 sum c3 log^2.
  for (std::uint64_t n : {101u, 30030u, 510510u}) {
    const bool grows = philb_lower(n, HeightContext{2, 6.0, true}) > philb_lower(n, ctx);
    EXPECT_EQ(grows, secondineq_lhs(n).lhs + std::pow(static_cast<double>(n), 0.25) > 1.0) << n;
  }
}

TEST(CyclotomicProperty, DominanceAndLemma5Consistency) {
  const SmallestPrimeFactorTable t(1'000'000);
  for (std::uint32_t n = 3; n <= 1'000'000; ++n) {
    const auto f = t.factorize(n);
    const double q = std::pow(static_cast<double>(n), 0.25);
    const double lhs = secondineq_lhs(f).lhs;
    ASSERT_LE(lhs, static_cast<double>(phi(f)) - q + 1e-9) << n;
    if (n <= 100'000) {
      // The sum, with c3 capped, is at most 8 * 9.12 * f(n) since (n/m)* <= n/m.
      const double sum = static_cast<double>(phi(f)) - q - lhs;
      ASSERT_LE(sum, 8 * c3_cap * f_of_n(f) * (1 + 1e-12) + 1e-9) << n;
    }
  }
}

TEST(CyclotomicProperty, BitIdenticalAcrossRunsAndThreads) {
  std::vector<std::uint64_t> ns;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) ns.push_back(31 + rng() % 5'000'000);
  auto eval_all = [&] {
    std::vector<CriterionValue> out;
    for (auto n : ns) {
      out.push_back(secondineq_lhs(n));
      out.push_back(f_value(n));
      out.push_back(theta_threshold(n));
      out.push_back(global_inequality(n));
    }
    return out;
  };
  const auto a = eval_all();
  std::vector<CriterionValue> b, c;
  std::thread t1([&] { b = eval_all(); }), t2([&] { c = eval_all(); });
  t1.join();
  t2.join();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(Guard, WidePolicyAgreesWithDefault) {
  const GuardPolicy wide{1e-3, 256};
  const auto v = secondineq_lhs(31, wide);
  const auto d = secondineq_lhs(31);
  EXPECT_EQ(v.holds, d.holds);
  EXPECT_NEAR(v.lhs, d.lhs, 1e-12 * std::abs(d.lhs));
}
