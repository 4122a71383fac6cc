#pragma once

// Sufficient conditions for log|Phi_n(alpha, beta)| > log n when alpha, beta
// are complex conjugates with h(beta/alpha) = log|alpha| > 4. Each criterion
// is a template over the scalar type so it can be re-evaluated wide inside
// the guard band.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "primdiv/arith.hpp"
#include "primdiv/linform.hpp"
#include "primdiv/numeric.hpp"

namespace primdiv {

enum class Criterion { secondineq, F, theta_threshold, aux_n14, aux_2n14, global, prime_case };

inline std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::secondineq: return "secondineq";
    case Criterion::F: return "F";
    case Criterion::theta_threshold: return "theta_threshold";
    case Criterion::aux_n14: return "aux_n14";
    case Criterion::aux_2n14: return "aux_2n14";
    case Criterion::global: return "global";
    case Criterion::prime_case: return "prime_case";
  }
  return "?";
}

inline std::optional<Criterion> criterion_from_string(std::string_view s) {
  for (auto c : {Criterion::secondineq, Criterion::F, Criterion::theta_threshold, Criterion::aux_n14,
                 Criterion::aux_2n14, Criterion::global, Criterion::prime_case})
    if (to_string(c) == s) return c;
  if (s == "theta") return Criterion::theta_threshold;
  return std::nullopt;
}

/// One evaluated criterion; holds <=> lhs > threshold after guard resolution.
struct CriterionValue {
  std::uint64_t n = 0;
  Criterion name = Criterion::secondineq;
  double lhs = 0.0;
  double threshold = 0.0;
  bool holds = false;
  bool guard_escalated = false;
  bool undecided = false;
  // F only: the divisor r attaining the minimum.
  std::optional<std::uint64_t> minimizer;

  double margin() const noexcept { return lhs - threshold; }
  friend bool operator==(const CriterionValue&, const CriterionValue&) = default;
};

struct HeightContext {
  unsigned d = 2;
  double h = 0.0;  // h(beta/alpha) = log|alpha|
  bool assumed_h_gt4 = true;
};

// ---------------------------------------------------------------------------
// Margins, generic in the scalar type.

namespace detail {

template <class Real>
Real fourth_root(std::uint64_t n) {
  using std::sqrt;
  return sqrt(sqrt(to_real<Real>(n)));
}

template <class Real>
Real log_sq(std::uint64_t x) {
  using std::log;
  const Real l = log(to_real<Real>(x));
  return l * l;
}

// 8 * sum over m | n, mu(m) = 1 of c3((n/m)*) log^2((n/m)*)
template <class Real>
Real weighted_divisor_sum(std::uint64_t n, std::span<const std::uint64_t> mu1) {
  Real s = 0;
  for (std::uint64_t m : mu1) {
    const std::uint64_t x = n_star(n / m);
    if (x >= 2) s += c3<Real>(x) * log_sq<Real>(x);
  }
  return 8 * s;
}

}  // namespace detail

template <class Real>
Margin<Real> secondineq_margin(const Factorization& f, std::span<const std::uint64_t> mu1) {
  const Real ph = to_real<Real>(phi(f));
  const Real s = detail::weighted_divisor_sum<Real>(f.value(), mu1);
  const Real q = detail::fourth_root<Real>(f.value());
  return {ph - s - q, Real(0), ph + s + q};
}

/// F(n) minimised over r | n with mu(r) = 1; `argmin` receives the minimising r.
template <class Real>
Margin<Real> f_margin(const Factorization& f, std::span<const std::uint64_t> mu1,
                      std::uint64_t* argmin = nullptr) {
  using std::log;
  const std::uint64_t n = f.value();
  const Real ph = to_real<Real>(phi(f));
  const Real lead = pow2<Real>(static_cast<int>(omega(f)) - 3) * real_log2<Real>();
  // suffix[i] = sum_{j >= i} log m_j
  std::vector<Real> suffix(mu1.size() + 1, Real(0));
  for (std::size_t i = mu1.size(); i-- > 0;) suffix[i] = suffix[i + 1] + log(to_real<Real>(mu1[i]));
  Real best = 0, best_scale = 0;
  for (std::size_t i = 0; i < mu1.size(); ++i) {
    const std::uint64_t r = mu1[i];
    const std::uint64_t x = n_star(n / r);
    Real term = x >= 2 ? 8 * c3<Real>(x) * detail::log_sq<Real>(x) : Real(0);
    if (term < Real(1)) term = Real(1);
    const Real count = Real(static_cast<unsigned>(i + 1));  // m <= r, mu(m) = 1
    const Real bracket = ph - lead - suffix[i + 1] / 4 - count * term;
    if (i == 0 || bracket < best) {
      best = bracket;
      best_scale = ph + lead + suffix[i + 1] / 4 + count * term;
      if (argmin) *argmin = r;
    }
  }
  using std::log;
  return {best, log(to_real<Real>(n)) / 4, best_scale};
}

template <class Real>
Margin<Real> theta_margin(const Factorization& f) {
  using std::log;
  const Real ln = log(to_real<Real>(f.value()));
  const Real ph = to_real<Real>(phi(f));
  const Real t = pow2<Real>(static_cast<int>(omega(f)) - 3) * (real_log2<Real>() + dec<Real>("2.001") * ln);
  return {ph - t, ln / 4, ph + t + ln};
}

// lhs = n^{1/4}; threshold = log(c n)/4 + 2^{w-3} log 2 + 1 with c in {1, 2}.
template <class Real>
Margin<Real> aux_margin(std::uint64_t n, unsigned w, unsigned c) {
  using std::log;
  const Real q = detail::fourth_root<Real>(n);
  const Real t = log(to_real<Real>(n) * c) / 4 + pow2<Real>(static_cast<int>(w) - 3) * real_log2<Real>() + 1;
  return {q, t, q + t};
}

template <class Real>
Margin<Real> global_margin(std::uint64_t n) {
  using std::exp;
  using std::log;
  const Real ln = log(to_real<Real>(n));
  const Real ll = log(ln);
  const Real first = to_real<Real>(n) / (exp(real_euler<Real>()) * ll + dec<Real>("2.50637") / ll);
  const Real second = dec<Real>("36.5") * exp(dec<Real>("1.3841") * ln / ll * real_log2<Real>()) * ln * ln;
  const Real q = detail::fourth_root<Real>(n);
  return {first - second - q, Real(0), first + second + q};
}

template <class Real>
Margin<Real> prime_case_margin(std::uint64_t n) {
  const Real x = to_real<Real>(n);
  const Real s = dec<Real>("9.12") * 8 * detail::log_sq<Real>(n);
  const Real q = detail::fourth_root<Real>(n);
  return {x - 1 - s - q, Real(0), x + 1 + s + q};
}

// ---------------------------------------------------------------------------
// Evaluated criteria.

namespace detail {

template <class Eval>
CriterionValue evaluate(std::uint64_t n, Criterion c, Eval&& eval, const GuardPolicy& policy) {
  const Resolution r = resolve(eval, policy);
  CriterionValue v;
  v.n = n;
  v.name = c;
  v.lhs = r.lhs;
  v.threshold = r.threshold;
  v.holds = r.holds;
  v.guard_escalated = r.escalated;
  v.undecided = r.undecided;
  return v;
}

inline void require_at_least(std::uint64_t n, std::uint64_t lo, const char* what) {
  if (n < lo) throw precondition_error(std::string(what) + ": n must be >= " + std::to_string(lo));
}

}  // namespace detail

/// phi(n) - 8 sum c3((n/m)*) log^2((n/m)*) - n^{1/4} > 0.
inline CriterionValue secondineq_lhs(const Factorization& f, const GuardPolicy& policy = {}) {
  detail::require_at_least(f.value(), 3, "secondineq");
  const auto mu1 = mu_one_divisors(f);
  return detail::evaluate(
      f.value(), Criterion::secondineq,
      [&]<class Real>(std::type_identity<Real>) { return secondineq_margin<Real>(f, mu1); }, policy);
}

/// F(n) > (log n)/4.
inline CriterionValue f_value(const Factorization& f, const GuardPolicy& policy = {}) {
  detail::require_at_least(f.value(), 3, "F");
  const auto mu1 = mu_one_divisors(f);
  std::uint64_t argmin = 0;
  auto v = detail::evaluate(
      f.value(), Criterion::F,
      [&]<class Real>(std::type_identity<Real>) {
        return f_margin<Real>(f, mu1, std::is_same_v<Real, double> ? &argmin : nullptr);
      },
      policy);
  v.minimizer = argmin;
  return v;
}

/// phi(n) - 2^{w-3}(log 2 + 2.001 log n) > (log n)/4, for n > 30.
inline CriterionValue theta_threshold(const Factorization& f, const GuardPolicy& policy = {}) {
  if (f.value() <= 30) throw precondition_error("theta_threshold: n must be > 30");
  return detail::evaluate(
      f.value(), Criterion::theta_threshold,
      [&]<class Real>(std::type_identity<Real>) { return theta_margin<Real>(f); }, policy);
}

/// n^{1/4} > (log n)/4 + 2^{w-3} log 2 + 1.
inline CriterionValue aux_n14(std::uint64_t n, unsigned w, const GuardPolicy& policy = {}) {
  detail::require_at_least(n, 3, "aux_n14");
  return detail::evaluate(
      n, Criterion::aux_n14, [&]<class Real>(std::type_identity<Real>) { return aux_margin<Real>(n, w, 1); },
      policy);
}

/// n^{1/4} > (log 2n)/4 + 2^{w-3} log 2 + 1, where n is the odd half-index.
inline CriterionValue aux_2n14(std::uint64_t n, unsigned w, const GuardPolicy& policy = {}) {
  detail::require_at_least(n, 3, "aux_2n14");
  return detail::evaluate(
      n, Criterion::aux_2n14, [&]<class Real>(std::type_identity<Real>) { return aux_margin<Real>(n, w, 2); },
      policy);
}

/// The omega-free inequality closing every n above the campaign range.
inline CriterionValue global_inequality(std::uint64_t n, const GuardPolicy& policy = {}) {
  detail::require_at_least(n, 3, "global_inequality");
  return detail::evaluate(
      n, Criterion::global, [&]<class Real>(std::type_identity<Real>) { return global_margin<Real>(n); },
      policy);
}

/// n - 1 - 9.12 * 8 log^2 n - n^{1/4} > 0 for prime n.
inline CriterionValue prime_case(std::uint64_t n, const GuardPolicy& policy = {}) {
  if (!is_prime(n)) throw precondition_error("prime_case: n must be prime");
  return detail::evaluate(
      n, Criterion::prime_case, [&]<class Real>(std::type_identity<Real>) { return prime_case_margin<Real>(n); },
      policy);
}

// Convenience overloads that factor n themselves.
inline CriterionValue secondineq_lhs(std::uint64_t n, const GuardPolicy& p = {}) {
  detail::require_at_least(n, 3, "secondineq");
  return secondineq_lhs(factorize(n), p);
}
inline CriterionValue f_value(std::uint64_t n, const GuardPolicy& p = {}) {
  detail::require_at_least(n, 3, "F");
  return f_value(factorize(n), p);
}
inline CriterionValue theta_threshold(std::uint64_t n, const GuardPolicy& p = {}) {
  if (n <= 30) throw precondition_error("theta_threshold: n must be > 30");
  return theta_threshold(factorize(n), p);
}
inline CriterionValue aux_n14(std::uint64_t n, const GuardPolicy& p = {}) {
  detail::require_at_least(n, 3, "aux_n14");
  return aux_n14(n, omega(factorize(n)), p);
}
inline CriterionValue aux_2n14(std::uint64_t n, const GuardPolicy& p = {}) {
  detail::require_at_least(n, 3, "aux_2n14");
  return aux_2n14(n, omega(factorize(n)), p);
}

/// Dispatch by name; used by the CLI.
inline CriterionValue evaluate_criterion(Criterion c, std::uint64_t n, const GuardPolicy& p = {}) {
  switch (c) {
    case Criterion::secondineq: return secondineq_lhs(n, p);
    case Criterion::F: return f_value(n, p);
    case Criterion::theta_threshold: return theta_threshold(n, p);
    case Criterion::aux_n14: return aux_n14(n, p);
    case Criterion::aux_2n14: return aux_2n14(n, p);
    case Criterion::global: return global_inequality(n, p);
    case Criterion::prime_case: return prime_case(n, p);
  }
  throw precondition_error("unknown criterion");
}

// ---------------------------------------------------------------------------
// Bounds on log|alpha^n - beta^n| and log|Phi_n(alpha, beta)|.

/// log 2 + n log|alpha|.
inline double lemma6_upper(std::uint64_t n, double log_alpha) {
  if (n == 0) throw precondition_error("lemma6_upper: n must be positive");
  return std::log(2.0) + static_cast<double>(n) * log_alpha;
}

/// Lower bound for log|alpha^n - beta^n|: Liouville for n <= 2, the
/// linear-form bound with c3(n*) for n >= 3 (needs d h > 8).
inline double lemma6_lower(std::uint64_t n, const HeightContext& ctx, double log_alpha) {
  if (n == 0) throw precondition_error("lemma6_lower: n must be positive");
  const double d = ctx.d;
  const double nn = static_cast<double>(n);
  if (n <= 2) return nn * log_alpha - (d / 2 - 1) * std::log(2.0) - d * ctx.h / 2;
  if (!(d * ctx.h > 8.0)) throw precondition_error("lemma6_lower: requires d * h > 8 for n >= 3");
  const std::uint64_t ns = n_star(n);
  const double l = std::log(static_cast<double>(ns));
  return nn * log_alpha - c3(ns) * d * d * d * ctx.h * l * l;
}

/// h phi(n) - 2^{w-1} log 2 - h - 8 h sum c3((n/m)*) log^2((n/m)*), d = 2.
inline double philb_lower(const Factorization& f, const HeightContext& ctx) {
  if (f.value() < 3) throw precondition_error("philb_lower: n must be >= 3");
  if (ctx.d != 2) throw precondition_error("philb_lower: campaign mode requires d = 2");
  const auto mu1 = mu_one_divisors(f);
  const double s = detail::weighted_divisor_sum<double>(f.value(), mu1);
  return ctx.h * static_cast<double>(phi(f)) - std::ldexp(std::log(2.0), static_cast<int>(omega(f)) - 1) -
         ctx.h - ctx.h * s;
}

inline double philb_lower(std::uint64_t n, const HeightContext& ctx) {
  if (n < 3) throw precondition_error("philb_lower: n must be >= 3");
  return philb_lower(factorize(n), ctx);
}

}  // namespace primdiv
