#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "primdiv/linform.hpp"

using namespace primdiv;

namespace {

// Branches re-typed from the printed formulas, independent of linform.hpp.
double liouville_ref(double B, double d) {
  const double l = std::log(B);
  return std::log(2.0) / (16 * d * l * l) + B / (2 * d * d * l * l);
}
double lmn_ref(double B, double d) {
  const double l = std::log(B);
  const double t = 0.5 + 0.28 / l + 1.8 / (d * l);
  return 22.36 * t * t;
}

struct InstanceGen {
  std::mt19937_64 rng;
  explicit InstanceGen(std::uint64_t seed) : rng(seed) {}

  // D in {1, 2, 3}, h in (4/D, 50], b1, b2 in [1, 10^9]; b drawn log-uniformly
  // so small and large B are both covered.
  LinearFormInstance operator()() {
    const unsigned D = 1 + rng() % 3;
    std::uniform_real_distribution<double> hd(4.0 / D, 50.0);
    double h = hd(rng);
    if (!(D * h > 4.0)) h = std::nextafter(4.0 / D, 100.0);
    std::uniform_real_distribution<double> ld(0.0, std::log(1e9));
    auto b = [&] { return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::exp(ld(rng)))); };
    return make_instance(2 * D, h, b(), b());
  }
};

}  // namespace

TEST(C1, Examples) {
  EXPECT_NEAR(c1(2, 2), 0.5654, 5e-5);
  EXPECT_NEAR(c1(2, 2), c1_liouville_branch(2, 2), 1e-15);
  EXPECT_LT(c1(5358, 2), 9.1);
  const auto s = c1_scan(2, 1'000'000);
  EXPECT_LE(s.max_value - c1(5358, 2), 0.01);
  for (std::uint64_t B = 2; B <= 100'000; ++B) ASSERT_LE(c1(B, 4), c1(B, 2)) << B;
  EXPECT_THROW(c1(1, 2), precondition_error);
  EXPECT_THROW(c1(10, 1), precondition_error);
}

TEST(C1, BranchConsistencyToTenMillion) {
  for (unsigned d : {2u, 4u, 6u}) {
    for (std::uint64_t B = 2; B <= 10'000'000; ++B) {
      const double b = static_cast<double>(B);
      const double want = std::min(liouville_ref(b, d), lmn_ref(b, d));
      ASSERT_NEAR(c1(B, d), want, 1e-12 * want) << "B=" << B << " d=" << d;
    }
  }
}

TEST(C1, SixOverDLogBBranchOnlyWhereLiouvilleWins) {
  // Where 6/(d log B) dominates the bracket, B <= 38 and the Liouville
  // branch is already smaller.
  for (unsigned d : {2u, 4u, 6u, 8u}) {
    for (std::uint64_t B = 2; B <= 100'000; ++B) {
      const double l = std::log(static_cast<double>(B));
      const double alt = 6 / (d * l);
      if (alt >= 0.5 + 0.28 / l + 1.8 / (d * l)) {
        ASSERT_LE(B, 38u);
        ASSERT_LE(c1_liouville_branch(B, d), 22.36 * alt * alt);
      }
    }
  }
}

TEST(C3, Examples) {
  EXPECT_EQ(c3(1), c3(2));
  EXPECT_NEAR(c3(5358), c1(5358, 2) + 0.02, 1e-15);
  EXPECT_GT(c3(5358), 9.10);
  EXPECT_THROW(c3(0), precondition_error);
  for (std::uint64_t x = 1; x <= 2'000'000; ++x) ASSERT_LE(c3(x), c3_cap) << x;
}

TEST(C1Scan, DegreeTwoAndFour) {
  const auto s2 = c1_scan(2, 1'000'000);
  EXPECT_LT(s2.max_value, 9.1);
  EXPECT_GT(s2.max_value, 9.0);
  EXPECT_GE(s2.argmax, 5300u);
  EXPECT_LE(s2.argmax, 5420u);
  EXPECT_TRUE(s2.tail_certified);
  const auto s4 = c1_scan(4, 1'000'000);
  EXPECT_LT(s4.max_value, 9.1);
  EXPECT_THROW(c1_scan(2, 999'999), precondition_error);
}

TEST(Liouville, Examples) {
  EXPECT_NEAR(liouville_log_lower(make_instance(2, 5.0, 1, 2)), -std::log(2.0) - 10.0, 1e-12);
  const auto base = make_instance(4, 3.0, 10, 7);
  EXPECT_GT(liouville_log_lower(base), liouville_log_lower(make_instance(6, 3.0, 10, 7)));
  EXPECT_GT(liouville_log_lower(base), liouville_log_lower(make_instance(4, 3.5, 10, 7)));
  EXPECT_GT(liouville_log_lower(base), liouville_log_lower(make_instance(4, 3.0, 11, 7)));
}

TEST(Liouville, BranchIsWeakerThanRawBoundWhenDhAboveEight) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const unsigned d = 2 * (1 + rng() % 3);
    const double h = 8.0 / d + std::uniform_real_distribution<double>(1e-3, 40.0)(rng);
    const std::uint64_t b1 = 1 + rng() % 1'000'000, b2 = 1 + rng() % 1'000'000;
    const auto inst = make_instance(d, h, b1, b2);
    const double B = static_cast<double>(inst.B());
    const double l = std::log(B);
    // The B-dependent parts agree exactly...
    EXPECT_NEAR(B / (2.0 * d * d * l * l) * d * d * d * h * l * l, inst.D() * B * h, 1e-9 * B * h);
    // ...and the log 2 part only majorizes.
    const double branch = -c1_liouville_branch(inst.B(), d) * d * d * d * h * l * l;
    EXPECT_LT(branch, liouville_log_lower(inst));
  }
}

TEST(Theorem2, Examples) {
  const auto small = make_instance(2, 4.5, 1, 2);
  const auto t = theorem2_log_lower(small);
  EXPECT_GE(t.with_c1, t.with_cap);
  EXPECT_NEAR(t.with_c1, -c1_liouville_branch(2, 2) * 8 * 4.5 * std::pow(std::log(2.0), 2), 1e-12);
  const auto big = make_instance(2, 4.5, 1'000'000, 3);
  EXPECT_NEAR(theorem2_log_lower(big).with_c1, -c1_lmn_branch(1'000'000, 2) * 8 * 4.5 * std::pow(std::log(1e6), 2), 1e-9);
  EXPECT_THROW(theorem2_log_lower(make_instance(2, 4.0, 3, 3)), precondition_error);
}

TEST(Instance, Validation) {
  EXPECT_THROW(make_instance(3, 5.0, 1, 1), precondition_error);
  EXPECT_THROW(make_instance(0, 5.0, 1, 1), precondition_error);
  EXPECT_THROW(make_instance(2, 0.0, 1, 1), precondition_error);
  EXPECT_THROW(make_instance(2, 5.0, 0, 1), precondition_error);
  EXPECT_EQ(make_instance(2, 5.0, 1, 1).B(), 2u);
  EXPECT_EQ(make_instance(2, 5.0, 9, 4).B(), 9u);
}

TEST(Lemma2, ParameterExample) {
  const auto inst = make_instance(2, 4.5, 1000, 1);
  const auto p = lemma2_params(inst);
  EXPECT_EQ(p.L, 9u);
  EXPECT_EQ(p.K, 745u);
  EXPECT_EQ(p.S, p.S1 + p.S2 - 1);
  EXPECT_EQ(p.N, p.K * p.L);
  EXPECT_THROW(lemma2_params(make_instance(2, 4.0, 3, 3)), precondition_error);
  const double lk2 = std::log(6.0) * 0.15756 / 2 - std::sqrt(0.15756) / 3 - 1 / (36 * M_PI);
  // k is chosen so this is barely positive.
  EXPECT_GT(lk2, 0.0);
  EXPECT_LT(lk2, 1e-6);
}

TEST(Lemma2Property, RandomInstancesSatisfyEveryStatedInequality) {
  InstanceGen gen(1993);
  for (int i = 0; i < 1000; ++i) {
    const auto inst = gen();
    const auto p = lemma2_params(inst);
    const double lambda = std::log(6.0);
    ASSERT_EQ(p.L, 2 + static_cast<std::uint64_t>(std::floor(2 * p.h / lambda)));
    ASSERT_GE(p.L, 6u);
    ASSERT_LE(static_cast<double>(p.L), 2 * p.H / lambda + 1e-12);
    ASSERT_GE(2 * p.K, 159 * p.L);
    ASSERT_GE(p.K, 477u);
    ASSERT_GE(2 * p.S1, p.L);
    ASSERT_GE(p.R, 65u);
    ASSERT_LE(static_cast<double>(p.S1 - 1), 0.07 * static_cast<double>(p.S2 - 1));
    ASSERT_GE(static_cast<double>(p.K - 1), 476.0 / 477.0 * 0.15756 * 6 * M_PI * p.a * p.L);
    ASSERT_GT(p.a, 26.8);
    const auto rep = verify_eq_cond(p, inst);
    for (const auto& c : rep.checks) ASSERT_TRUE(c.holds) << c.name << " at instance " << i;
    ASSERT_TRUE(rep.all_ok);
    ASSERT_TRUE(rep.lemma10_ok);
    ASSERT_TRUE(rep.lemma11_ok);
    ASSERT_GT(rep.phi21, 0.0);
    ASSERT_GT(rep.phi22, 0.0);
    ASSERT_GT(rep.phi_total, 0.0);
  }
}

TEST(Lemma2Property, HMajorization) {
  InstanceGen gen(42);
  for (int i = 0; i < 1000; ++i) {
    const auto inst = gen();
    const auto p = lemma2_params(inst);
    const double rhs = std::max(6.0, inst.D() * std::log(static_cast<double>(inst.B())) + 0.28 * inst.d + 1.8);
    ASSERT_LE(p.H, rhs + 1e-12) << i;
    ASSERT_LT(1 / p.a + 1 / (6 * M_PI), 0.0904);
  }
}

TEST(Lemma3, StepsAndBound) {
  InstanceGen gen(2718);
  for (int i = 0; i < 300; ++i) {
    const auto inst = gen();
    const auto p = lemma2_params(inst);
    const double v = lemma3_log_lower(inst);
    EXPECT_NEAR(v, -6.66 * p.a * p.H * p.H, 1e-9 * std::abs(v));
    EXPECT_LT(v, -6.66 * 26.8 * 36);
    const auto rep = verify_lemma3_steps(inst);
    for (const auto& c : rep.checks) ASSERT_TRUE(c.holds) << c.name << " at instance " << i;
    EXPECT_TRUE(rep.all_ok);
  }
}

TEST(Lemma3, FloorOfHGivesEqualityInOneLink) {
  const auto inst = make_instance(2, 4.5, 1, 1);
  ASSERT_EQ(lemma2_params(inst).H, 6.0);
  const auto rep = verify_lemma3_steps(inst);
  EXPECT_TRUE(rep.all_ok);
  for (const auto& c : rep.checks) {
    if (c.name != "8_4aH_at_most_1_4aH2") continue;
    EXPECT_TRUE(c.escalated);
    EXPECT_NEAR(c.lhs, c.rhs, 1e-9 * c.rhs);
  }
}

TEST(Guard, ExactTieIsUndecided) {
  const auto r = resolve([]<class Real>(std::type_identity<Real>) { return Margin<Real>{Real(1), Real(1), Real(1)}; });
  EXPECT_TRUE(r.escalated);
  EXPECT_TRUE(r.undecided);
  EXPECT_FALSE(r.holds);
}

TEST(Guard, NearTieResolvedWide) {
  // 1 + 2^-100 > 1 is invisible in binary64 but clear at 256 bits.
  const GuardPolicy p{1e-9, 256};
  const auto r = resolve(
      []<class Real>(std::type_identity<Real>) {
        return Margin<Real>{Real(1) + pow2<Real>(-100), Real(1), Real(2)};
      },
      p);
  EXPECT_TRUE(r.escalated);
  EXPECT_FALSE(r.undecided);
  EXPECT_TRUE(r.holds);
  const auto r128 = resolve(
      []<class Real>(std::type_identity<Real>) {
        return Margin<Real>{Real(1) + pow2<Real>(-100), Real(1), Real(2)};
      },
      GuardPolicy{1e-9, 128});
  EXPECT_TRUE(r128.undecided);
  EXPECT_FALSE(r128.holds);
}

TEST(Guard, PolicyValidation) {
  EXPECT_THROW((GuardPolicy{0.0, 128}).validate(), precondition_error);
  EXPECT_THROW((GuardPolicy{1e-2, 128}).validate(), precondition_error);
  EXPECT_THROW((GuardPolicy{1e-9, 32}).validate(), precondition_error);
  EXPECT_NO_THROW((GuardPolicy{1e-3, 64}).validate());
}
