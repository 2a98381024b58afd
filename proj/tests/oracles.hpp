#pragma once

// Reference computations that share no code with the library: closed forms,
// exhaustive enumeration and quadrature.

#include <cmath>
#include <cstddef>
#include <numbers>

namespace oracle {

inline double t1_cdf(double x) { return 0.5 + std::atan(x) / std::numbers::pi; }

inline double t2_cdf(double x) { return 0.5 + x / (2.0 * std::sqrt(2.0 + x * x)); }

inline double t4_cdf(double x) {
  const double u = 1.0 + x * x / 4.0;
  return 0.5 + 0.375 * (x / std::sqrt(u)) * (1.0 - x * x / (12.0 * u));
}

/// Plain bisection on an increasing function; independent of fewn::bisect.
template <class F>
double invert_increasing(F f, double target, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// P(X >= k), X ~ Binomial(n, q), by walking all 2^n outcome patterns.
inline double binom_tail_enumerated(std::size_t k, std::size_t n, double q) {
  long double total = 0.0L;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    const auto hits = static_cast<std::size_t>(__builtin_popcountl(mask));
    if (hits < k) continue;
    long double p = 1.0L;
    for (std::size_t i = 0; i < n; ++i) {
      p *= (mask >> i) & 1UL ? static_cast<long double>(q) : 1.0L - static_cast<long double>(q);
    }
    total += p;
  }
  return static_cast<double>(total);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

inline double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

/// Exact power of the two-sided paired t test with N = 2 animals whose
/// effects are Normal(d, 1). With u = (x1 + x2)/sqrt2 ~ N(sqrt2 d, 1) and
/// v = (x1 - x2)/sqrt2 ~ N(0, 1) the statistic is u / |v|, so
///   power = integral phi(v) [P(u > c|v|) + P(u < -c|v|)] dv,
/// evaluated with composite Simpson on [-12, 12].
inline double power_two_animals(double d, double critical_t) {
  const double mu = std::numbers::sqrt2 * d;
  auto integrand = [&](double v) {
    const double c = critical_t * std::abs(v);
    return normal_pdf(v) * ((1.0 - normal_cdf(c - mu)) + normal_cdf(-c - mu));
  };
  constexpr int kIntervals = 200000;
  const double a = -12.0;
  const double b = 12.0;
  const double h = (b - a) / kIntervals;
  double sum = integrand(a) + integrand(b);
  for (int i = 1; i < kIntervals; ++i) sum += integrand(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace oracle
