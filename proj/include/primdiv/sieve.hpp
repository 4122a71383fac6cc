#pragma once

// The per-omega campaign: enumerate n class by class, run the criterion
// cascade, close each class above its search bound with a closed-form
// minorant, and collect everything that is left.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "primdiv/arith.hpp"
#include "primdiv/cyclotomic.hpp"
#include "primdiv/numeric.hpp"

namespace primdiv {

inline constexpr std::uint64_t campaign_envelope = 10'000'000;
inline constexpr std::uint64_t global_closure_start = 18'000'001;
inline constexpr std::uint64_t theorem_threshold = 30030;
inline constexpr double c3_sum_weight = 8 * c3_cap;  // 72.96

struct ClassBound {
  unsigned k = 0;
  std::uint64_t n_k = 0;
  friend bool operator==(const ClassBound&, const ClassBound&) = default;
};

inline constexpr std::array<ClassBound, 8> table1{{
    {1, 5400}, {2, 43000}, {3, 109000}, {4, 256000}, {5, 527000}, {6, 1'100'000}, {7, 2'000'000}, {8, 4'000'000},
}};

inline std::uint64_t primorial_of_count(unsigned k) {
  static constexpr std::array<std::uint64_t, 16> ps{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  if (k > ps.size()) throw precondition_error("primorial_of_count: k too large");
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) r *= ps[i];
  return r;
}

/// All n <= n_max with omega(n) = k, ascending.
inline std::vector<std::uint64_t> enumerate_class(unsigned k, std::uint64_t n_max) {
  if (k > 15) throw precondition_error("enumerate_class: k must be <= 15");
  if (n_max > campaign_envelope) throw precondition_error("enumerate_class: n_max above 10^7");
  std::vector<std::uint64_t> out;
  if (primorial_of_count(k) > n_max) return out;
  const auto w = omega_table(static_cast<std::uint32_t>(n_max));
  for (std::uint64_t n = 1; n <= n_max; ++n)
    if (w[n] == k) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------
// Cascade.

enum class Step { secondineq, secondineq_half, f_value, f_half, prime_case };
enum class PassedBy { SECONDINEQ, SECONDINEQ_HALF, F_VALUE, F_HALF, PRIME_CASE, NONE };

inline std::string_view to_string(PassedBy p) {
  switch (p) {
    case PassedBy::SECONDINEQ: return "SECONDINEQ";
    case PassedBy::SECONDINEQ_HALF: return "SECONDINEQ_HALF";
    case PassedBy::F_VALUE: return "F_VALUE";
    case PassedBy::F_HALF: return "F_HALF";
    case PassedBy::PRIME_CASE: return "PRIME_CASE";
    case PassedBy::NONE: return "NONE";
  }
  return "?";
}

inline std::optional<PassedBy> passed_by_from_string(std::string_view s) {
  for (auto p : {PassedBy::SECONDINEQ, PassedBy::SECONDINEQ_HALF, PassedBy::F_VALUE, PassedBy::F_HALF,
                 PassedBy::PRIME_CASE, PassedBy::NONE})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

inline PassedBy passed_by_of(Step s) {
  switch (s) {
    case Step::secondineq: return PassedBy::SECONDINEQ;
    case Step::secondineq_half: return PassedBy::SECONDINEQ_HALF;
    case Step::f_value: return PassedBy::F_VALUE;
    case Step::f_half: return PassedBy::F_HALF;
    case Step::prime_case: return PassedBy::PRIME_CASE;
  }
  return PassedBy::NONE;
}

using Cascade = std::vector<Step>;

inline const Cascade full_cascade{Step::secondineq, Step::secondineq_half, Step::f_value, Step::f_half};

struct CheckVerdict {
  std::uint64_t n = 0;
  unsigned omega = 0;
  PassedBy passed_by = PassedBy::NONE;
  std::vector<CriterionValue> values;  // in evaluation order, auxiliaries included
  bool half_applicable = false;        // n = 2 mod 4

  friend bool operator==(const CheckVerdict&, const CheckVerdict&) = default;
};

/// Supplies factorizations; the campaign uses a sieve table, ad hoc calls
/// fall back to trial division.
struct Factorizer {
  const SmallestPrimeFactorTable* table = nullptr;
  Factorization operator()(std::uint64_t n) const {
    if (table && n <= table->limit()) return table->factorize(static_cast<std::uint32_t>(n));
    return factorize(n);
  }
};

namespace detail {

// F(m) against (log n)/4 for the odd half m = n/2.
inline CriterionValue f_half_value(const Factorization& half, std::uint64_t n, const GuardPolicy& policy) {
  const auto mu1 = mu_one_divisors(half);
  std::uint64_t argmin = 0;
  auto v = evaluate(
      half.value(), Criterion::F,
      [&]<class Real>(std::type_identity<Real>) {
        using std::log;
        auto m = f_margin<Real>(half, mu1, std::is_same_v<Real, double> ? &argmin : nullptr);
        m.threshold = log(to_real<Real>(n)) / 4;
        return m;
      },
      policy);
  v.minimizer = argmin;
  return v;
}

}  // namespace detail

/// Runs the cascade lazily; steps whose preconditions fail at n are skipped.
inline CheckVerdict check_n(std::uint64_t n, const Cascade& cascade, const GuardPolicy& policy = {},
                            const Factorizer& fz = {}) {
  if (n < 3) throw precondition_error("check_n: n must be >= 3");
  const Factorization f = fz(n);
  CheckVerdict v;
  v.n = n;
  v.omega = omega(f);
  v.half_applicable = n % 4 == 2;
  std::optional<Factorization> half;
  auto half_f = [&]() -> const Factorization& {
    if (!half) half = fz(n / 2);
    return *half;
  };
  for (Step s : cascade) {
    bool ok = false;
    switch (s) {
      case Step::secondineq: {
        auto a = secondineq_lhs(f, policy);
        ok = a.holds;
        v.values.push_back(a);
        if (ok) {
          auto aux = aux_n14(n, v.omega, policy);
          ok = aux.holds;
          v.values.push_back(aux);
        }
        break;
      }
      case Step::secondineq_half: {
        if (!v.half_applicable || n / 2 < 3) continue;
        const auto& h = half_f();
        auto a = secondineq_lhs(h, policy);
        ok = a.holds;
        v.values.push_back(a);
        if (ok) {
          auto aux = aux_2n14(h.value(), omega(h), policy);
          ok = aux.holds;
          v.values.push_back(aux);
        }
        break;
      }
      case Step::f_value: {
        if (n <= 30) continue;
        auto a = f_value(f, policy);
        ok = a.holds;
        v.values.push_back(a);
        break;
      }
      case Step::f_half: {
        if (!v.half_applicable || n / 2 <= 30) continue;
        auto a = detail::f_half_value(half_f(), n, policy);
        ok = a.holds;
        v.values.push_back(a);
        break;
      }
      case Step::prime_case: {
        if (v.omega != 1 || f.factors().front().exponent != 1) continue;
        auto a = prime_case(n, policy);
        ok = a.holds;
        v.values.push_back(a);
        break;
      }
    }
    if (ok) {
      v.passed_by = passed_by_of(s);
      return v;
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Closed-form class minorants.

/// G(x) = P x - offset - 72.96 (square L^2 + linear L + constant) - x^{1/4}, L = log x: a lower
/// bound for the secondineq left side of every n >= x in the class.
struct ClosureForm {
  double P = 1.0;
  double offset = 0.0;
  QuadraticCoefficients poly{1, 0, 0};

  double poly_at(double L) const { return poly.square * L * L + poly.linear * L + poly.constant; }
  double operator()(double x) const {
    return P * x - offset - c3_sum_weight * poly_at(std::log(x)) - std::sqrt(std::sqrt(x));
  }
  // Lower bound on [x0, x1]: the quadratic is convex in L so its maximum is
  // at an endpoint.
  double lower_on(double x0, double x1) const {
    const double pm = std::max(poly_at(std::log(x0)), poly_at(std::log(x1)));
    return P * x0 - offset - c3_sum_weight * pm - std::sqrt(std::sqrt(x1));
  }
};

/// k = 1 splits into primes (phi = n - 1) and higher prime powers (phi >= n/2).
inline ClosureForm closure_form(unsigned k, bool prime_powers = false) {
  if (k == 1) return prime_powers ? ClosureForm{0.5, 0.0, {1, 0, 0}} : ClosureForm{1.0, 1.0, {1, 0, 0}};
  if (k < 2 || k > 8) throw precondition_error("closure_form: k must lie in 1..8");
  double P = 1.0;
  for (unsigned i = 0; i < k; ++i) P *= static_cast<double>(first_primes[i] - 1) / static_cast<double>(first_primes[i]);
  return {P, 0.0, f_poly_coefficients(k)};
}

struct ClosureCertificate {
  double root = 0.0;            // largest x in [3, upper] with G(x) <= 0 (0 if none)
  std::uint64_t from = 0;       // certified start
  std::uint64_t upper = 0;      // certified end
  bool certified = false;
  std::uint64_t intervals = 0;
  friend bool operator==(const ClosureCertificate&, const ClosureCertificate&) = default;
};

/// Largest zero of G below `upper`, by a downward scan plus bisection.
inline double closure_root(const ClosureForm& g, double upper) {
  if (g(upper) <= 0) return upper;
  double hi = upper;
  double lo = hi;
  while (lo > 3 && g(lo) > 0) lo = std::max(3.0, lo / 1.01);
  if (g(lo) > 0) return 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    (g(mid) > 0 ? hi : lo) = mid;
  }
  return lo;
}

/// Certifies G > 0 on [from, upper] by interval lower bounds on a geometric
/// grid, splitting any cell whose bound is not positive.
inline ClosureCertificate certify_closure(const ClosureForm& g, std::uint64_t from, std::uint64_t upper) {
  ClosureCertificate c;
  c.from = from;
  c.upper = upper;
  c.root = closure_root(g, static_cast<double>(upper));
  if (from < 3 || from > upper) return c;
  struct Cell {
    double a, b;
    int depth;
  };
  std::vector<Cell> stack;
  const double ratio = 1.0 + 1e-4;
  for (double x = static_cast<double>(from); x < static_cast<double>(upper);) {
    const double y = std::min(x * ratio, static_cast<double>(upper));
    stack.push_back({x, y, 0});
    x = y;
  }
  while (!stack.empty()) {
    Cell cell = stack.back();
    stack.pop_back();
    ++c.intervals;
    const double lb = g.lower_on(cell.a, cell.b);
    if (lb > 1e-9 * cell.b) continue;
    if (cell.depth >= 40) return c;
    const double mid = (cell.a + cell.b) / 2;
    stack.push_back({cell.a, mid, cell.depth + 1});
    stack.push_back({mid, cell.b, cell.depth + 1});
  }
  c.certified = true;
  return c;
}

// ---------------------------------------------------------------------------
// Campaign.

enum class CascadeMode { paper, maximal };

inline std::string_view to_string(CascadeMode m) { return m == CascadeMode::paper ? "paper" : "maximal"; }

struct CampaignConfig {
  CascadeMode mode = CascadeMode::paper;
  std::map<unsigned, std::uint64_t> class_bounds;  // overrides of table1
  unsigned workers = 1;
  GuardPolicy guard{};
  double near_margin = 0.5;  // passing n with margin below this are listed

  std::uint64_t bound(unsigned k) const {
    auto it = class_bounds.find(k);
    return it != class_bounds.end() ? it->second : table1.at(k - 1).n_k;
  }

  void validate() const {
    guard.validate();
    if (!(near_margin >= 0.0)) throw precondition_error("near_margin must be non-negative");
    for (const auto& [k, b] : class_bounds) {
      if (k < 1 || k > 8) throw precondition_error("class bound override for omega outside 1..8");
      if (b > campaign_envelope) throw precondition_error("class bound above 10^7 is outside the validated envelope");
      if (b < 3) throw precondition_error("class bound must be >= 3");
    }
  }
};

/// Paper cascade for class k; for k = 1 primes and prime powers differ.
inline Cascade paper_cascade(unsigned k, bool prime) {
  if (k == 1) return prime ? Cascade{Step::prime_case} : Cascade{Step::secondineq};
  if (k == 2) return {Step::secondineq};
  if (k == 7) return {Step::secondineq, Step::secondineq_half};
  return full_cascade;
}

inline Cascade maximal_cascade(unsigned k, bool prime) {
  Cascade c;
  if (k == 1 && prime) c.push_back(Step::prime_case);
  c.insert(c.end(), full_cascade.begin(), full_cascade.end());
  return c;
}

struct ClassReport {
  unsigned omega = 0;
  std::uint64_t n_k = 0;
  std::uint64_t scan_bound = 0;           // largest n examined
  std::uint64_t candidates = 0;           // omega(n) = k, n <= n_k
  std::uint64_t candidates_below = 0;     // omega(n) = k, n < n_k
  bool boundary_flag = false;             // n_k itself lies in the class
  std::uint64_t scanned = 0;              // omega(n) = k, 3 <= n <= scan_bound
  std::map<std::string, std::uint64_t> passed_by;
  std::vector<CheckVerdict> failing;
  std::vector<CheckVerdict> near_margin;
  std::vector<std::uint64_t> rescued_beyond_paper;
  std::optional<std::uint64_t> max_failing;
  std::vector<ClosureCertificate> closures;  // two for k = 1
  bool closed = false;

  friend bool operator==(const ClassReport&, const ClassReport&) = default;
};

struct CampaignSummary {
  std::optional<std::uint64_t> global_max_failing;
  bool coverage_complete = false;
  bool reproduced = false;
  CriterionValue global_closure;
  std::uint64_t f_evaluations = 0;
  std::uint64_t f_minimizer_r1 = 0;
  std::vector<std::string> diagnostics;

  friend bool operator==(const CampaignSummary&, const CampaignSummary&) = default;
};

struct CampaignReport {
  int schema = 1;
  CampaignConfig config;
  std::vector<ClassReport> classes;
  CampaignSummary summary;
};

inline bool operator==(const CampaignConfig& a, const CampaignConfig& b) {
  return a.class_bounds == b.class_bounds && a.mode == b.mode && a.guard.relative_guard == b.guard.relative_guard &&
         a.guard.precision_bits == b.guard.precision_bits && a.near_margin == b.near_margin;
}

inline bool operator==(const CampaignReport& a, const CampaignReport& b) {
  return a.schema == b.schema && a.config == b.config && a.classes == b.classes && a.summary == b.summary;
}

namespace detail {

inline constexpr std::size_t campaign_chunk = 2048;

// Evaluates f on every item, splitting into fixed chunks so the result does
// not depend on the number of workers.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, unsigned workers, F&& f) {
  using R = decltype(f(items.front()));
  std::vector<R> out(items.size());
  const std::size_t chunks = (items.size() + campaign_chunk - 1) / campaign_chunk;
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t c = next++; c < chunks && !failed; c = next++) {
      try {
        const std::size_t end = std::min(items.size(), (c + 1) * campaign_chunk);
        for (std::size_t i = c * campaign_chunk; i < end; ++i) out[i] = f(items[i]);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  const unsigned w = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(chunks, 1))));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < w; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

// Smallest margin among the criteria that decided a passing verdict.
inline double deciding_margin(const CheckVerdict& v) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : v.values)
    if (c.holds) m = std::min(m, c.margin());
  return m;
}

inline bool cascade_contains(const Cascade& c, PassedBy p) {
  return std::any_of(c.begin(), c.end(), [&](Step s) { return passed_by_of(s) == p; });
}

}  // namespace detail

inline CampaignReport run_campaign(const CampaignConfig& config) {
  config.validate();
  CampaignReport rep;
  rep.config = config;

  std::array<std::uint64_t, 9> scan{};
  std::array<std::vector<ClosureForm>, 9> forms;
  std::uint64_t table_limit = 0;
  for (unsigned k = 1; k <= 8; ++k) {
    forms[k] = k == 1 ? std::vector<ClosureForm>{closure_form(1, false), closure_form(1, true)}
                      : std::vector<ClosureForm>{closure_form(k)};
    // With the table bound, extend the scan past n_k when the minorant is not
    // yet positive there. An explicit override is scanned exactly as given.
    scan[k] = config.bound(k);
    if (!config.class_bounds.count(k)) {
      double root = 0;
      for (const auto& g : forms[k]) root = std::max(root, closure_root(g, static_cast<double>(global_closure_start)));
      scan[k] = std::max<std::uint64_t>(scan[k], static_cast<std::uint64_t>(std::floor(root)) + 1);
      scan[k] = std::min(scan[k], campaign_envelope);
    }
    table_limit = std::max(table_limit, scan[k]);
  }
  const SmallestPrimeFactorTable table(static_cast<std::uint32_t>(table_limit));
  const auto w = omega_table(static_cast<std::uint32_t>(table_limit));
  const Factorizer fz{&table};

  auto& sum = rep.summary;
  sum.coverage_complete = true;
  for (unsigned k = 1; k <= 8; ++k) {
    ClassReport cr;
    cr.omega = k;
    cr.n_k = config.bound(k);
    cr.scan_bound = scan[k];
    std::vector<std::uint64_t> cand;
    for (std::uint64_t n = 1; n <= scan[k]; ++n) {
      if (w[n] != k) continue;
      if (n <= cr.n_k) ++cr.candidates;
      if (n < cr.n_k) ++cr.candidates_below;
      if (n >= 3) cand.push_back(n);
    }
    cr.boundary_flag = cr.n_k <= table_limit && w[cr.n_k] == k;
    cr.scanned = cand.size();

    auto verdicts = detail::parallel_map(cand, config.workers, [&](std::uint64_t n) {
      const bool prime = k == 1 && table.is_prime(static_cast<std::uint32_t>(n));
      const Cascade c = config.mode == CascadeMode::paper ? paper_cascade(k, prime) : maximal_cascade(k, prime);
      return check_n(n, c, config.guard, fz);
    });

    for (auto& v : verdicts) {
      ++cr.passed_by[std::string(to_string(v.passed_by))];
      for (const auto& c : v.values) {
        if (c.name == Criterion::F) {
          ++sum.f_evaluations;
          if (c.minimizer == 1u) ++sum.f_minimizer_r1;
        }
      }
      if (v.passed_by == PassedBy::NONE) {
        cr.max_failing = v.n;
        cr.failing.push_back(std::move(v));
        continue;
      }
      if (config.mode == CascadeMode::maximal) {
        const bool prime = k == 1 && table.is_prime(static_cast<std::uint32_t>(v.n));
        if (!detail::cascade_contains(paper_cascade(k, prime), v.passed_by)) cr.rescued_beyond_paper.push_back(v.n);
      }
      const bool escalated = std::any_of(v.values.begin(), v.values.end(), [](const auto& c) { return c.guard_escalated; });
      if (escalated || detail::deciding_margin(v) < config.near_margin) cr.near_margin.push_back(std::move(v));
    }

    cr.closed = true;
    for (const auto& g : forms[k]) {
      cr.closures.push_back(certify_closure(g, scan[k], global_closure_start));
      cr.closed = cr.closed && cr.closures.back().certified;
    }
    if (!cr.closed) {
      sum.coverage_complete = false;
      sum.diagnostics.push_back("omega=" + std::to_string(k) + ": closed-form minorant not positive from " +
                                std::to_string(scan[k]) + "; search bound too small to certify the class");
    }
    if (cr.boundary_flag)
      sum.diagnostics.push_back("omega=" + std::to_string(k) + ": boundary element n_k = " + std::to_string(cr.n_k) +
                                " lies in the class (count " + std::to_string(cr.candidates) + " with n <= n_k, " +
                                std::to_string(cr.candidates_below) + " with n < n_k)");
    if (cr.max_failing && (!sum.global_max_failing || *cr.max_failing > *sum.global_max_failing))
      sum.global_max_failing = cr.max_failing;
    rep.classes.push_back(std::move(cr));
  }

  sum.global_closure = global_inequality(global_closure_start, config.guard);
  if (!sum.global_closure.holds) {
    sum.coverage_complete = false;
    sum.diagnostics.push_back("global inequality fails at " + std::to_string(global_closure_start));
  }
  if (primorial_of_count(9) <= global_closure_start) {
    sum.coverage_complete = false;
    sum.diagnostics.push_back("omega >= 9 reaches below the global closure start");
  }
  sum.reproduced = sum.coverage_complete && sum.global_max_failing == theorem_threshold;
  if (sum.f_minimizer_r1)
    sum.diagnostics.push_back("F minimum attained at r = 1 in " + std::to_string(sum.f_minimizer_r1) + " of " +
                              std::to_string(sum.f_evaluations) + " evaluations");
  return rep;
}

// ---------------------------------------------------------------------------
// Shape of the omega = 7 candidates.

struct Omega7Structure {
  std::uint64_t n_max = 0;
  std::uint64_t candidates = 0;
  std::vector<std::uint64_t> mismatches;
  std::uint64_t smallest_odd = 0;         // 3*5*...*19
  std::uint64_t smallest_without_3 = 0;   // 2*5*7*...*19
  bool conforms() const { return mismatches.empty(); }
};

inline bool omega7_shape(const Factorization& f) {
  const auto& ps = f.factors();
  if (ps.size() != 7) return false;
  auto in = [](std::uint64_t p, std::initializer_list<std::uint64_t> s) {
    return std::find(s.begin(), s.end(), p) != s.end();
  };
  if (ps[0].prime != 2 || ps[1].prime != 3) return false;
  if (ps[0].exponent > 2 || ps[1].exponent > 2) return false;
  for (std::size_t i = 2; i < 7; ++i)
    if (ps[i].exponent != 1) return false;
  return in(ps[2].prime, {5, 7}) && in(ps[3].prime, {7, 11}) && in(ps[4].prime, {11, 13, 17}) &&
         in(ps[5].prime, {13, 17, 19, 23}) && ps[6].prime >= 17 && ps[6].prime <= 61;
}

inline Omega7Structure omega7_structure(std::uint64_t n_max = 2'000'000) {
  if (n_max > campaign_envelope) throw precondition_error("omega7_structure: n_max above 10^7");
  Omega7Structure s;
  s.n_max = n_max;
  s.smallest_odd = 3ull * 5 * 7 * 11 * 13 * 17 * 19;
  s.smallest_without_3 = 2ull * 5 * 7 * 11 * 13 * 17 * 19;
  for (std::uint64_t n : enumerate_class(7, n_max)) {
    ++s.candidates;
    if (!omega7_shape(factorize(n))) s.mismatches.push_back(n);
  }
  return s;
}

}  // namespace primdiv
