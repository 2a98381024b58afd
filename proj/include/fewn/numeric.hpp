#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>

#include "fewn/errors.hpp"
#include "fewn/types.hpp"

namespace fewn {

/// Regularized incomplete beta function I_x(a, b).
///
/// `complement` must equal 1 - x; passing it separately keeps precision when
/// x is close to one (the caller usually has both in closed form).
double incomplete_beta(double a, double b, double x, double complement);

inline double incomplete_beta(double a, double b, double x) {
  return incomplete_beta(a, b, x, 1.0 - x);
}

/// P(T <= x) for Student's t with `df` degrees of freedom.
Probability t_cdf(double x, DegreesOfFreedom df);

/// Inverse of t_cdf, found by bisection.
double t_quantile(Probability p, DegreesOfFreedom df);

/// P(X >= k) for X ~ Binomial(n, q). Terms are summed smallest first.
Probability binom_tail(std::size_t k, std::size_t n, Probability q);

struct RootBracket {
  double lo;
  double hi;
  double tol;
};

/// Bisection on a bracket where `f` changes sign. Stops when f hits exactly
/// zero, when the bracket is narrower than `tol`, or when the midpoint can no
/// longer be split in double precision.
template <std::invocable<double> F>
double bisect(F&& f, RootBracket bracket) {
  double lo = bracket.lo;
  double hi = bracket.hi;
  if (!(lo < hi) || !(bracket.tol > 0.0)) {
    throw DomainError("bisect: need lo < hi and tol > 0");
  }
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (std::isnan(f_lo) || std::isnan(f_hi)) {
    throw BracketError("bisect: function is NaN at bracket end");
  }
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw BracketError("bisect: no sign change on bracket");
  }
  while (hi - lo > bracket.tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace fewn
