#include "fewn/numeric.hpp"

#include <math.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace fewn {
namespace {

// std::lgamma writes the global signgam on glibc, which races when the
// Monte Carlo kernels evaluate p-values from several threads.
double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double log_beta(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 20000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= kEps) return h;
  }
  throw Error("incomplete beta continued fraction did not converge (a=" +
              std::to_string(a) + ", b=" + std::to_string(b) + ")");
}

// Exact for n <= 62; every intermediate product is an exact binomial times i.
std::uint64_t binomial_coefficient(std::uint64_t n, std::uint64_t k) {
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (std::uint64_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

}  // namespace

double incomplete_beta(double a, double b, double x, double complement) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("incomplete_beta: a, b must be > 0");
  if (!(x >= 0.0 && x <= 1.0) || !(complement >= 0.0 && complement <= 1.0)) {
    throw DomainError("incomplete_beta: x outside [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (complement == 0.0) return 1.0;
  const double front =
      std::exp(a * std::log(x) + b * std::log(complement) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, complement) / b;
}

Probability t_cdf(double x, DegreesOfFreedom df) {
  if (!std::isfinite(x)) throw DomainError("t_cdf: x must be finite");
  if (x == 0.0) return Probability(0.5);
  const double nu = df.value();
  const double x2 = x * x;
  double tail = 0.0;  // P(T <= -|x|)
  if (std::isfinite(x2)) {
    const double denom = nu + x2;
    tail = 0.5 * incomplete_beta(0.5 * nu, 0.5, nu / denom, x2 / denom);
  }
  return Probability::clamped(x < 0.0 ? tail : 1.0 - tail);
}

double t_quantile(Probability p, DegreesOfFreedom df) {
  const double target = p.value();
  if (!(target > 0.0 && target < 1.0)) {
    throw DomainError("t_quantile: p must lie strictly inside (0, 1)");
  }
  if (target == 0.5) return 0.0;
  auto f = [&](double x) { return t_cdf(x, df).value() - target; };
  double bound = 1e6;
  while (bound < 1e300 && (f(-bound) > 0.0 || f(bound) < 0.0)) bound *= 1e3;
  return bisect(f, RootBracket{-bound, bound, 1e-10});
}

Probability binom_tail(std::size_t k, std::size_t n, Probability q) {
  if (k > n) throw DomainError("binom_tail: k > n");
  if (k == 0) return Probability(1.0);
  const double qv = q.value();
  if (qv == 0.0) return Probability(0.0);
  if (qv == 1.0) return Probability(1.0);

  // Probability mass of every outcome; the tail and its complement are each
  // summed smallest term first, and the smaller of the two is the one used.
  std::vector<double> pmf(n + 1);
  if (n <= 62) {
    for (std::size_t j = 0; j <= n; ++j) {
      pmf[j] = static_cast<double>(binomial_coefficient(n, j)) *
               std::pow(qv, static_cast<double>(j)) *
               std::pow(1.0 - qv, static_cast<double>(n - j));
    }
  } else {
    const double log_q = std::log(qv);
    const double log_1mq = std::log1p(-qv);
    const double log_nfact = log_gamma(static_cast<double>(n) + 1.0);
    for (std::size_t j = 0; j <= n; ++j) {
      const double jd = static_cast<double>(j);
      const double rest = static_cast<double>(n - j);
      pmf[j] = std::exp(log_nfact - log_gamma(jd + 1.0) - log_gamma(rest + 1.0) +
                        jd * log_q + rest * log_1mq);
    }
  }
  auto ascending_sum = [](std::vector<double> terms) {
    std::sort(terms.begin(), terms.end());
    double sum = 0.0;
    for (double t : terms) sum += t;
    return sum;
  };
  const double upper = ascending_sum({pmf.begin() + static_cast<std::ptrdiff_t>(k), pmf.end()});
  const double lower = ascending_sum({pmf.begin(), pmf.begin() + static_cast<std::ptrdiff_t>(k)});
  const double sum = upper <= lower ? upper : 1.0 - lower;
  return Probability::clamped(sum);
}

}  // namespace fewn
