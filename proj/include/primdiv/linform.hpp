#pragma once

// Lower bounds for linear forms in two logarithms
//     Lambda = b1 * i * pi - b2 * log(gamma),  |gamma| = 1,
// and a numeric re-check of the interpolation-determinant parameter choice
// (rho = 6, k = 0.15756) that produces the -6.66 a H^2 bound.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include "primdiv/arith.hpp"
#include "primdiv/numeric.hpp"

namespace primdiv {

// Liouville branch: log 2/(16 d log^2 B) + B/(2 d^2 log^2 B).
template <class Real = double>
Real c1_liouville_branch(std::uint64_t B, unsigned d) {
  using std::log;
  const Real lb = log(to_real<Real>(B));
  const Real dd = Real(d);
  return real_log2<Real>() / (16 * dd * lb * lb) + to_real<Real>(B) / (2 * dd * dd * lb * lb);
}

// Laurent-Mignotte-Nesterenko branch: 22.36 (1/2 + 0.28/log B + 1.8/(d log B))^2.
template <class Real = double>
Real c1_lmn_branch(std::uint64_t B, unsigned d) {
  using std::log;
  const Real lb = log(to_real<Real>(B));
  const Real t = Real(1) / 2 + dec<Real>("0.28") / lb + dec<Real>("1.8") / (Real(d) * lb);
  return dec<Real>("22.36") * t * t;
}

/// c1(B) for a degree-d algebraic gamma; B >= 2, d >= 2.
template <class Real = double>
Real c1(std::uint64_t B, unsigned d = 2) {
  if (B < 2) throw precondition_error("c1: B must be >= 2");
  if (d < 2) throw precondition_error("c1: d must be >= 2");
  Real lv = c1_liouville_branch<Real>(B, d);
  Real lmn = c1_lmn_branch<Real>(B, d);
  return lv < lmn ? lv : lmn;
}

/// c3(x) = c1(max(2, x)) + 0.02 with d = 2.
template <class Real = double>
Real c3(std::uint64_t n_star_value) {
  if (n_star_value == 0) throw precondition_error("c3: argument must be positive");
  return c1<Real>(std::max<std::uint64_t>(2, n_star_value), 2) + dec<Real>("0.02");
}

inline constexpr double c1_cap_d2 = 9.1;
inline constexpr double c3_cap = 9.12;

struct C1Scan {
  unsigned d = 2;
  std::uint64_t b_max = 0;
  double max_value = 0.0;
  std::uint64_t argmax = 0;
  // First B at which the Liouville branch is no longer the smaller one.
  std::uint64_t crossover = 0;
  // Upper bound for c1 on (b_max, inf): the LMN branch at b_max, since the
  // LMN branch decreases in B and c1 never exceeds it.
  double tail_bound = 0.0;
  bool tail_certified = false;
};

/// Exhaustive maximum of c1(., d) on [2, b_max] plus a certificate for B > b_max.
inline C1Scan c1_scan(unsigned d, std::uint64_t b_max) {
  if (d < 2) throw precondition_error("c1_scan: d must be >= 2");
  if (b_max < 1'000'000) throw precondition_error("c1_scan: b_max must be >= 10^6");
  C1Scan s;
  s.d = d;
  s.b_max = b_max;
  for (std::uint64_t B = 2; B <= b_max; ++B) {
    const double lv = c1_liouville_branch(B, d);
    const double lmn = c1_lmn_branch(B, d);
    const double v = std::min(lv, lmn);
    if (v > s.max_value) {
      s.max_value = v;
      s.argmax = B;
    }
    if (s.crossover == 0 && B > 38 && lv >= lmn) s.crossover = B;
  }
  s.tail_bound = c1_lmn_branch(b_max, d);
  // The LMN branch is (1/2 + c/log B)^2 with c > 0, hence strictly decreasing;
  // the check below confirms the tail bound does not exceed the scanned max.
  s.tail_certified = s.crossover != 0 && s.crossover < b_max && s.tail_bound <= s.max_value;
  return s;
}

struct LinearFormInstance {
  unsigned d = 2;        // degree of gamma over Q, even
  double h_gamma = 0.0;  // absolute logarithmic height
  std::uint64_t b1 = 1;
  std::uint64_t b2 = 1;

  double D() const noexcept { return d / 2.0; }
  std::uint64_t B() const noexcept { return std::max<std::uint64_t>({2, b1, b2}); }

  void validate() const {
    if (d < 2 || d % 2 != 0) throw precondition_error("instance: d must be even and >= 2");
    if (!(h_gamma > 0.0) || !std::isfinite(h_gamma))
      throw precondition_error("instance: h(gamma) must be positive");
    if (b1 == 0 || b2 == 0) throw precondition_error("instance: b1, b2 must be positive");
  }
};

inline LinearFormInstance make_instance(unsigned d, double h_gamma, std::uint64_t b1,
                                        std::uint64_t b2) {
  LinearFormInstance inst{d, h_gamma, b1, b2};
  inst.validate();
  return inst;
}

/// Liouville: log|Lambda| >= -D log 2 - D B h(gamma).
inline double liouville_log_lower(const LinearFormInstance& inst) {
  inst.validate();
  const double D = inst.D();
  return -D * std::log(2.0) - D * static_cast<double>(inst.B()) * inst.h_gamma;
}

struct Theorem2Bound {
  double with_c1 = 0.0;   // -c1(B) d^3 h log^2 B
  double with_cap = 0.0;  // -9.1 d^3 h log^2 B
};

/// Requires d h(gamma) > 8.
inline Theorem2Bound theorem2_log_lower(const LinearFormInstance& inst) {
  inst.validate();
  if (!(inst.d * inst.h_gamma > 8.0))
    throw precondition_error("theorem2: requires d * h(gamma) > 8");
  const double lb = std::log(static_cast<double>(inst.B()));
  const double scale = std::pow(inst.d, 3) * inst.h_gamma * lb * lb;
  return {-c1(inst.B(), inst.d) * scale, -c1_cap_d2 * scale};
}

// ---------------------------------------------------------------------------
// Parameter machinery.

inline constexpr double lmn_k = 0.15756;
inline constexpr double lmn_rho = 6.0;

struct LMNParams {
  double rho = lmn_rho;
  double lambda = 0.0;
  double a = 0.0;
  double H = 0.0;
  double h = 0.0;
  double b_prime = 0.0;
  std::uint64_t L = 0, K = 0, R = 0, S1 = 0, S2 = 0, S = 0, N = 0;
  double g = 0.0;
  double log_b = 0.0;
  double k_const = lmn_k;
  double phi_total = 0.0, phi1 = 0.0, phi2 = 0.0, phi21 = 0.0, phi22 = 0.0;
};

namespace detail {

template <class Real>
Real lmn_a(const LinearFormInstance& inst) {
  return 6 * real_pi<Real>() + 2 * Real(inst.d / 2) * Real(inst.h_gamma);
}

template <class Real>
Real lmn_H(const LinearFormInstance& inst) {
  using std::log;
  const Real D = Real(inst.d / 2);
  const Real a = lmn_a<Real>(inst);
  const Real inner = D * log(to_real<Real>(inst.b1) / a + to_real<Real>(inst.b2) / (6 * real_pi<Real>())) +
                     dec<Real>("2.95") * D + dec<Real>("1.8");
  return inner > Real(6) ? inner : Real(6);
}

// All real-valued quantities for fixed integer parameters.
template <class Real>
struct LmnReals {
  Real rho, rho_pi, lambda, k, a, H, h, b_prime, g, log_b, lemma10_shift;
  Real phi, phi1, phi2, phi21, phi22, lemma11_lhs, lemma11_rhs;
};

template <class Real>
LmnReals<Real> lmn_reals(const LinearFormInstance& inst, const LMNParams& p) {
  using std::log;
  using std::sqrt;
  using std::exp;
  LmnReals<Real> q;
  const Real D = Real(inst.d / 2);
  const Real L = to_real<Real>(p.L), K = to_real<Real>(p.K), R = to_real<Real>(p.R);
  const Real S = to_real<Real>(p.S), N = to_real<Real>(p.N);
  const Real b1 = to_real<Real>(inst.b1), b2 = to_real<Real>(inst.b2);
  q.rho = Real(6);
  q.rho_pi = q.rho * real_pi<Real>();
  q.lambda = log(q.rho);
  q.k = dec<Real>("0.15756");
  q.a = lmn_a<Real>(inst);
  q.H = lmn_H<Real>(inst);
  q.h = q.H - q.lambda;
  q.b_prime = b1 / q.a + b2 / q.rho_pi;
  q.g = Real(1) / 4 - N / (12 * R * S);
  // log prod_{j=1}^{K-1} j! = sum_{j=1}^{K-1} (K - j) log j
  Real log_fact_prod = 0;
  for (std::uint64_t j = 2; j < p.K; ++j) log_fact_prod += to_real<Real>(p.K - j) * log(to_real<Real>(j));
  q.log_b = log((R - 1) * b2 + (S - 1) * b1) - 2 * log_fact_prod / (K * K - K);
  const Real log2 = real_log2<Real>();
  q.lemma11_lhs = q.g * L * (q.rho_pi * R + q.a * S);
  const Real c = sqrt(q.k) / 3 + 1 / (6 * q.rho_pi);
  q.lemma11_rhs = c * q.a * q.rho_pi * L * L + dec<Real>("0.64") * q.a * L;
  q.lemma10_shift = log(2 * real_pi<Real>() * K / sqrt(exp(Real(1)))) / (K - 1);
  q.phi = K * (L - 1) * q.lambda + (K - 1) * log2 - (D + 1) * log(N) - D * (K - 1) * q.log_b -
          q.lemma11_lhs;
  q.phi1 = K * L * q.lambda / 2 - c * q.rho_pi * q.a * L * L;
  q.phi2 = (dec<Real>("0.45") * D + log2 - q.lambda / 2) * K + q.h - dec<Real>("0.64") * q.a * L -
           log(K) - (D + 1) * log(L) + dec<Real>("0.88") * D - log2;
  q.phi21 = dec<Real>("0.005") * K - log(L) + dec<Real>("0.88");
  q.phi22 = dec<Real>("0.025") * K - log(K * L) - log2;
  return q;
}

}  // namespace detail

/// Derives (L, K, R, S1, S2, ...) for an instance with D h(gamma) > 4.
inline LMNParams lemma2_params(const LinearFormInstance& inst) {
  inst.validate();
  if (!(inst.D() * inst.h_gamma > 4.0))
    throw precondition_error("lemma2_params: requires D * h(gamma) > 4");
  LMNParams p;
  p.lambda = std::log(p.rho);
  p.a = detail::lmn_a<double>(inst);
  p.H = detail::lmn_H<double>(inst);
  p.h = p.H - p.lambda;
  p.b_prime = static_cast<double>(inst.b1) / p.a + static_cast<double>(inst.b2) / (p.rho * M_PI);

  p.L = 2 + guarded_floor([&]<class Real>(std::type_identity<Real>) {
          using std::log;
          return 2 * (detail::lmn_H<Real>(inst) - log(Real(6))) / log(Real(6));
        });
  p.K = 1 + guarded_floor([&]<class Real>(std::type_identity<Real>) {
          return dec<Real>("0.15756") * 6 * real_pi<Real>() * detail::lmn_a<Real>(inst) * to_real<Real>(p.L);
        });
  p.R = 2 + guarded_floor([&]<class Real>(std::type_identity<Real>) {
          using std::sqrt;
          return sqrt(to_real<Real>(p.K - 1) * to_real<Real>(p.L) * detail::lmn_a<Real>(inst) /
                      (6 * real_pi<Real>()));
        });
  p.S1 = (p.L + 1) / 2;
  p.S2 = 1 + guarded_floor([&]<class Real>(std::type_identity<Real>) {
           using std::sqrt;
           return sqrt(6 * real_pi<Real>() * to_real<Real>(p.K - 1) * to_real<Real>(p.L) /
                       detail::lmn_a<Real>(inst));
         });
  p.S = p.S1 + p.S2 - 1;
  p.N = p.K * p.L;

  const auto q = detail::lmn_reals<double>(inst, p);
  p.g = q.g;
  p.log_b = q.log_b;
  p.phi_total = q.phi;
  p.phi1 = q.phi1;
  p.phi2 = q.phi2;
  p.phi21 = q.phi21;
  p.phi22 = q.phi22;
  return p;
}

/// One certified inequality `lhs > rhs`.
struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  bool escalated = false;
  bool tight = false;  // relative margin below 1%
};

struct EqCondReport {
  double phi_total = 0.0, phi1 = 0.0, phi2 = 0.0, phi21 = 0.0, phi22 = 0.0;
  bool lemma10_ok = false;
  bool lemma11_ok = false;
  // Distinct-products branch of the zero estimate: only the count
  // (R-1) S2 > (K-1) L is checked, distinctness itself is assumed.
  bool zero_estimate_assumed = true;
  bool all_ok = false;
  std::vector<InequalityCheck> checks;

  const InequalityCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

// strict: lhs > rhs; otherwise lhs >= rhs, where an exact tie counts as holding.
template <class Side>
InequalityCheck certify(std::string name, Side&& side, const GuardPolicy& policy, bool strict = true) {
  auto res = resolve(
      [&]<class Real>(std::type_identity<Real> tag) {
        auto [lhs, rhs] = side(tag);
        using std::abs;
        using boost::multiprecision::abs;
        return Margin<Real>{lhs, rhs, abs(lhs) + abs(rhs)};
      },
      policy);
  const bool holds = res.holds || (!strict && res.undecided);
  InequalityCheck c{std::move(name), res.lhs, res.threshold, holds, res.escalated, false};
  const double margin = res.lhs - res.threshold;
  c.tight = std::abs(margin) < 0.01 * std::max(std::abs(res.lhs), std::abs(res.threshold));
  return c;
}

template <class Real>
std::pair<Real, Real> sides(Real lhs, Real rhs) {
  return {std::move(lhs), std::move(rhs)};
}

}  // namespace detail

/// Re-checks every inequality the parameter choice is claimed to satisfy.
inline EqCondReport verify_eq_cond(const LMNParams& p, const LinearFormInstance& inst,
                                   const GuardPolicy& policy = {}) {
  EqCondReport rep;
  rep.phi_total = p.phi_total;
  rep.phi1 = p.phi1;
  rep.phi2 = p.phi2;
  rep.phi21 = p.phi21;
  rep.phi22 = p.phi22;

  auto add = [&](std::string name, auto&& f) {
    rep.checks.push_back(detail::certify(std::move(name),
                                         [&]<class Real>(std::type_identity<Real>) {
                                           const auto q = detail::lmn_reals<Real>(inst, p);
                                           return f(q, Real(inst.d / 2));
                                         },
                                         policy));
  };
  auto exact = [&](std::string name, bool holds, double lhs, double rhs) {
    rep.checks.push_back({std::move(name), lhs, rhs, holds, false, false});
  };

  const std::uint64_t L = p.L, K = p.K;
  const auto dbl = [](std::uint64_t v) { return static_cast<double>(v); };
  exact("K_at_least_3", K >= 3, dbl(K), 3);
  exact("L_at_least_2", L >= 2, dbl(L), 2);
  exact("R_at_least_2", p.R >= 2, dbl(p.R), 2);
  exact("S2_at_least_1", p.S2 >= 1, dbl(p.S2), 1);
  exact("two_S1_at_least_L", 2 * p.S1 >= L, dbl(2 * p.S1), dbl(L));
  exact("L_at_least_6", L >= 6, dbl(L), 6);
  exact("K_at_least_79_5_L", 2 * K >= 159 * L, dbl(K), 79.5 * dbl(L));
  exact("79_5_L_at_least_477", 159 * L >= 954, 79.5 * dbl(L), 477);
  exact("R_minus_2_at_least_63", p.R >= 65, dbl(p.R) - 2, 63);
  exact("S_ratio_below_0_07", 100 * (p.S1 - 1) < 7 * (p.S2 - 1),
        dbl(p.S1 - 1) / dbl(p.S2 - 1), 0.07);
  exact("zero_estimate_count", (p.R - 1) * p.S2 > (K - 1) * L, dbl(p.R - 1) * dbl(p.S2),
        dbl(K - 1) * dbl(L));

  add("eq_cond", [](const auto& q, const auto&) { return detail::sides(q.phi, decltype(q.phi)(0)); });
  add("L_upper", [&](const auto& q, const auto&) {
    using R_ = std::decay_t<decltype(q.a)>;
    return detail::sides(2 * q.H / q.lambda, to_real<R_>(L));
  });
  add("a_above_26_8", [](const auto& q, const auto&) {
    using R_ = std::decay_t<decltype(q.a)>;
    return detail::sides(q.a, dec<R_>("26.8"));
  });
  add("K_minus_1_lower", [&](const auto& q, const auto&) {
    using R_ = std::decay_t<decltype(q.a)>;
    return detail::sides(to_real<R_>(K - 1) * 477, 476 * q.k * q.rho_pi * q.a * to_real<R_>(L));
  });
  add("h_lower", [](const auto& q, const auto& D) {
    using std::log;
    using R_ = std::decay_t<decltype(q.a)>;
    return detail::sides(q.h, D * log(q.b_prime) + dec<R_>("2.95") * D);
  });
  add("lemma10_first", [](const auto& q, const auto&) {
    using std::log;
    using R_ = std::decay_t<decltype(q.a)>;
    return detail::sides(log(q.b_prime) + dec<R_>("2.5") - q.lemma10_shift, q.log_b);
  });
  add("lemma10_second", [](const auto& q, const auto& D) {
    using std::log;
    using R_ = std::decay_t<decltype(q.a)>;
    return detail::sides(q.h / D - dec<R_>("0.45") - q.lemma10_shift,
                         log(q.b_prime) + dec<R_>("2.5") - q.lemma10_shift);
  });
  add("lemma11", [](const auto& q, const auto&) { return detail::sides(q.lemma11_rhs, q.lemma11_lhs); });
  add("phi_split", [](const auto& q, const auto&) { return detail::sides(q.phi, q.phi1 + q.phi2); });
  add("phi1_positive", [](const auto& q, const auto&) { return detail::sides(q.phi1, decltype(q.phi1)(0)); });
  add("k_choice", [](const auto& q, const auto&) {
    using std::sqrt;
    return detail::sides(q.lambda * q.k / 2, sqrt(q.k) / 3 + 1 / (6 * q.rho_pi));
  });
  add("phi2_split", [](const auto& q, const auto& D) { return detail::sides(q.phi2, D * q.phi21 + q.phi22); });
  add("phi21_positive", [](const auto& q, const auto&) { return detail::sides(q.phi21, decltype(q.phi21)(0)); });
  add("phi22_positive", [](const auto& q, const auto&) { return detail::sides(q.phi22, decltype(q.phi22)(0)); });
  add("aL_below_0_337K", [&](const auto& q, const auto&) {
    using R_ = std::decay_t<decltype(q.a)>;
    return detail::sides(dec<R_>("0.337") * to_real<R_>(K), q.a * to_real<R_>(L));
  });
  exact("0_013K_at_least_L", 13 * K >= 1000 * L, 0.013 * dbl(K), dbl(L));

  auto ok = [&](const char* name) {
    const auto* c = rep.find(name);
    return c && c->holds;
  };
  rep.lemma10_ok = ok("lemma10_first") && ok("lemma10_second");
  rep.lemma11_ok = ok("lemma11");
  rep.all_ok = std::all_of(rep.checks.begin(), rep.checks.end(), [](const auto& c) { return c.holds; });
  return rep;
}

/// log|Lambda| > -6.66 a H^2, for D h(gamma) > 4.
inline double lemma3_log_lower(const LinearFormInstance& inst) {
  const LMNParams p = lemma2_params(inst);
  return -6.66 * p.a * p.H * p.H;
}

struct Lemma3Report {
  double bound = 0.0;
  std::vector<InequalityCheck> checks;
  bool all_ok = false;
};

/// The numeric steps that turn the interpolation estimate into -6.66 a H^2.
inline Lemma3Report verify_lemma3_steps(const LinearFormInstance& inst, const GuardPolicy& policy = {}) {
  const LMNParams p = lemma2_params(inst);
  Lemma3Report rep;
  rep.bound = -6.66 * p.a * p.H * p.H;
  auto add = [&](std::string name, auto&& f, bool strict = true) {
    rep.checks.push_back(detail::certify(std::move(name),
                                         [&]<class Real>(std::type_identity<Real>) {
                                           const auto q = detail::lmn_reals<Real>(inst, p);
                                           return f(q, Real(inst.d / 2));
                                         },
                                         policy, strict));
  };
  const std::uint64_t L = p.L, K = p.K;

  add("lambda_KL_below_6_65aH2", [&](const auto& q, const auto&) {
    using R_ = std::decay_t<decltype(q.a)>;
    return detail::sides(dec<R_>("6.65") * q.a * q.H * q.H, q.lambda * to_real<R_>(K) * to_real<R_>(L));
  });
  add("liouville_case_below_1_03aH2", [&](const auto& q, const auto& D) {
    using std::sqrt;
    using R_ = std::decay_t<decltype(q.a)>;
    return detail::sides(dec<R_>("1.03") * q.a * q.H * q.H,
                         D * real_log2<R_>() + sqrt(q.k) * q.rho_pi * q.a * to_real<R_>(L) / 2);
  });
  add("rho_pi_a_sqrtk_L_below_8_4aH", [&](const auto& q, const auto&) {
    using std::sqrt;
    using R_ = std::decay_t<decltype(q.a)>;
    return detail::sides(dec<R_>("8.4") * q.a * q.H, q.rho_pi * q.a * sqrt(q.k) * to_real<R_>(L));
  });
  // Equality at H = 6; the chain stays strict through the previous link.
  add("8_4aH_at_most_1_4aH2", [](const auto& q, const auto&) {
    using R_ = std::decay_t<decltype(q.a)>;
    return detail::sides(dec<R_>("1.4") * q.a * q.H * q.H, dec<R_>("8.4") * q.a * q.H);
  }, false);
  add("Dlog2_below_52H", [](const auto& q, const auto& D) {
    using R_ = std::decay_t<decltype(q.a)>;
    return detail::sides(52 * q.H, D * real_log2<R_>());
  });
  add("Dlog2_below_0_33aH2", [](const auto& q, const auto& D) {
    using R_ = std::decay_t<decltype(q.a)>;
    return detail::sides(dec<R_>("0.33") * q.a * q.H * q.H, D * real_log2<R_>());
  });
  add("max_LS_LR_below_0_5aH2", [&](const auto& q, const auto&) {
    using R_ = std::decay_t<decltype(q.a)>;
    const R_ m = to_real<R_>(std::max(p.L * p.S, p.L * p.R)) / 2;
    return detail::sides(q.a * q.H * q.H / 2, m);
  });
  add("contradiction_margin", [](const auto& q, const auto&) {
    using std::log;
    using R_ = std::decay_t<decltype(q.a)>;
    const R_ x = q.a * q.H * q.H;
    return detail::sides(dec<R_>("6.66") - log(dec<R_>("0.55") * x) / x, dec<R_>("6.653"));
  });
  add("small_terms_2", [&](const auto& q, const auto&) {
    using std::sqrt;
    using R_ = std::decay_t<decltype(q.a)>;
    return detail::sides(dec<R_>("0.04") * sqrt(q.k) * q.a * to_real<R_>(L), R_(2));
  });
  add("small_terms_half", [&](const auto& q, const auto&) {
    using std::sqrt;
    using R_ = std::decay_t<decltype(q.a)>;
    return detail::sides(dec<R_>("0.02") * sqrt(q.k) * q.rho_pi * to_real<R_>(L), R_(1) / 2);
  });
  add("small_terms_L", [&](const auto& q, const auto&) {
    using std::sqrt;
    using R_ = std::decay_t<decltype(q.a)>;
    return detail::sides(dec<R_>("0.07") * sqrt(q.k) * q.rho_pi * to_real<R_>(L), to_real<R_>(L) / 2);
  });
  if (p.H > 6.0) {
    // H is the logarithmic expression here; it must sit below the B-only form.
    add("H_majorization", [&](const auto& q, const auto&) {
      using std::log;
      using R_ = std::decay_t<decltype(q.a)>;
      const R_ d = R_(inst.d);
      return detail::sides(d / 2 * log(to_real<R_>(inst.B())) + dec<R_>("0.28") * d + dec<R_>("1.8"), q.H);
    });
  } else {
    rep.checks.push_back({"H_majorization", 6.0, p.H, true, false, false});
  }
  if (inst.d * inst.h_gamma > 8.0) {
    add("a_below_3_357dh", [&](const auto& q, const auto&) {
      using R_ = std::decay_t<decltype(q.a)>;
      return detail::sides(dec<R_>("3.357") * R_(inst.d) * R_(inst.h_gamma), q.a);
    });
  }
  rep.all_ok = std::all_of(rep.checks.begin(), rep.checks.end(), [](const auto& c) { return c.holds; });
  return rep;
}

}  // namespace primdiv
