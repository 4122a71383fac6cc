#pragma once

// Floating-point contract for inequality certification.
//
// Every criterion is a template over the scalar type. It is evaluated first
// in binary64; if |lhs - threshold| falls inside the relative guard the same
// expression is re-evaluated with a wide binary significand and decided only
// when the difference clears an error allowance scaled by the sum of the
// absolute values of the terms. Anything still inside that allowance is
// reported as undecided and never counts as holding.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <type_traits>

#include "primdiv/arith.hpp"

namespace primdiv {

template <unsigned Bits>
using binary_float = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<Bits, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

using wide128 = binary_float<128>;
using wide256 = binary_float<256>;
using wide512 = binary_float<512>;

inline constexpr double default_guard = 1e-9;
inline constexpr unsigned default_precision_bits = 128;
inline constexpr unsigned max_precision_bits = 512;

struct GuardPolicy {
  double relative_guard = default_guard;
  unsigned precision_bits = default_precision_bits;

  void validate() const {
    if (!(relative_guard > 0.0 && relative_guard <= 1e-3))
      throw precondition_error("guard must lie in (0, 1e-3]");
    if (precision_bits < 64 || precision_bits > max_precision_bits)
      throw precondition_error("precision_bits must lie in [64, 512]");
  }
};

template <class Real>
Real real_pi() {
  return boost::math::constants::pi<Real>();
}

template <class Real>
Real real_log2() {
  return boost::math::constants::ln_two<Real>();
}

template <class Real>
Real real_euler() {
  if constexpr (std::is_same_v<Real, double>)
    return euler_gamma;
  else
    return Real(euler_gamma_digits);
}

/// Decimal literal parsed at the target precision (so 2.50637 is not rounded
/// through binary64 before widening).
template <class Real>
Real dec(const char* digits) {
  if constexpr (std::is_same_v<Real, double>)
    return std::strtod(digits, nullptr);
  else
    return Real(digits);
}

template <class Real>
Real to_real(std::uint64_t n) {
  if constexpr (std::is_same_v<Real, double>)
    return static_cast<double>(n);
  else
    return Real(n);
}

/// 2^e exactly, e may be negative.
template <class Real>
Real pow2(int e) {
  using std::ldexp;
  using boost::multiprecision::ldexp;
  return ldexp(Real(1), e);
}

template <class Real>
double to_double(const Real& x) {
  if constexpr (std::is_same_v<Real, double>)
    return x;
  else
    return x.template convert_to<double>();
}

/// lhs > threshold is the inequality being certified; scale bounds the
/// magnitude of the intermediate terms.
template <class Real>
struct Margin {
  Real lhs;
  Real threshold;
  Real scale;
};

struct Resolution {
  double lhs = 0.0;
  double threshold = 0.0;
  bool holds = false;
  bool escalated = false;
  bool undecided = false;
};

namespace detail {

template <class Real, class Eval>
Resolution resolve_wide(Eval& eval, unsigned bits) {
  using boost::multiprecision::abs;
  using boost::multiprecision::ldexp;
  Margin<Real> m = eval(std::type_identity<Real>{});
  Real diff = m.lhs - m.threshold;
  // A few thousand correctly rounded operations lose far fewer than 32 bits.
  Real allowance = ldexp(abs(m.scale) + 1, -static_cast<int>(bits) + 32);
  Resolution r;
  r.lhs = to_double(m.lhs);
  r.threshold = to_double(m.threshold);
  r.escalated = true;
  if (abs(diff) > allowance) {
    r.holds = diff > 0;
  } else {
    r.undecided = true;
    r.holds = false;
  }
  return r;
}

}  // namespace detail

/// Evaluates `eval(std::type_identity<Real>{})` in binary64 and escalates
/// to wide precision inside the guard band.
template <class Eval>
Resolution resolve(Eval&& eval, const GuardPolicy& policy = {}) {
  Margin<double> m = eval(std::type_identity<double>{});
  const double diff = m.lhs - m.threshold;
  const double band = policy.relative_guard * std::max(std::abs(m.scale), 1.0);
  if (std::isfinite(diff) && std::abs(diff) > band) {
    return {m.lhs, m.threshold, diff > 0, false, false};
  }
  if (policy.precision_bits <= 128) return detail::resolve_wide<wide128>(eval, 128);
  if (policy.precision_bits <= 256) return detail::resolve_wide<wide256>(eval, 256);
  return detail::resolve_wide<wide512>(eval, 512);
}

/// Floor of a non-negative quantity; near-integers are recomputed wide.
template <class Eval>
std::uint64_t guarded_floor(Eval&& eval, double guard = default_guard) {
  const double x = eval(std::type_identity<double>{});
  const double nearest = std::round(x);
  if (std::abs(x - nearest) > guard * std::max(1.0, std::abs(x)))
    return static_cast<std::uint64_t>(std::floor(x));
  wide256 w = eval(std::type_identity<wide256>{});
  return floor(w).convert_to<std::uint64_t>();
}

}  // namespace primdiv
