#include "fewn/design_planner.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "fewn/errors.hpp"
#include "fewn/numeric.hpp"
#include "fewn/rng.hpp"
#include "fewn/sample_tests.hpp"

namespace fewn {
namespace {

void require_open_unit(Probability p, const char* what) {
  if (!(p.value() > 0.0 && p.value() < 1.0)) {
    throw DomainError(std::string(what) + " must lie strictly inside (0, 1)");
  }
}

double critical_t(Probability alpha, Sidedness sidedness, double df) {
  const double upper = sidedness == Sidedness::two_sided ? 1.0 - alpha.value() / 2.0
                                                         : 1.0 - alpha.value();
  return t_quantile(Probability(upper), DegreesOfFreedom(df));
}

enum class Outcome { accept, reject, degenerate };

struct PowerKernel {
  double shift;
  std::size_t n;
  Probability alpha;
  Sidedness sidedness;
  std::uint64_t seed;

  Outcome operator()(std::size_t rep, std::vector<double>& buf) const {
    Engine engine = substream(seed, rep);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) buf[i] = shift + normal(engine);
    const auto t = detail::t_statistic(buf);
    if (!t) return Outcome::degenerate;
    const Probability p = detail::t_p_value(*t, static_cast<double>(n - 1), sidedness);
    return p < alpha ? Outcome::reject : Outcome::accept;
  }
};

}  // namespace

std::optional<std::size_t> min_n_sample_d(double sample_d, Probability alpha,
                                          Sidedness sidedness, std::size_t cap) {
  if (!(std::isfinite(sample_d) && sample_d > 0.0)) {
    throw DomainError("sample d must be finite and > 0");
  }
  require_open_unit(alpha, "alpha");
  for (std::size_t n = 2; n <= cap; ++n) {
    const double nd = static_cast<double>(n);
    if (std::sqrt(nd) * sample_d >= critical_t(alpha, sidedness, nd - 1.0)) return n;
  }
  return std::nullopt;
}

SecondAnimalWindow second_animal_window(double first_diff, Probability alpha) {
  if (!(std::isfinite(first_diff) && first_diff > 0.0)) {
    throw DomainError("first difference must be finite and > 0");
  }
  require_open_unit(alpha, "alpha");
  const double t = critical_t(alpha, Sidedness::two_sided, 1.0);
  if (!(t > 1.0)) {
    // t <= 1 makes every positive second difference significant.
    throw DomainError("critical t <= 1 at this alpha; the window is unbounded");
  }
  return {first_diff * (t - 1.0) / (t + 1.0), first_diff * (t + 1.0) / (t - 1.0), t};
}

std::size_t min_n_sign(Probability alpha, Sidedness sidedness) {
  require_open_unit(alpha, "alpha");
  const double factor = sidedness == Sidedness::two_sided ? 2.0 : 1.0;
  std::size_t n = 1;
  while (!(factor * std::ldexp(1.0, -static_cast<int>(n)) < alpha.value())) ++n;
  return n;
}

PowerEstimate power_t_mc(const PowerQuery& query, std::size_t reps, std::uint64_t seed,
                         Execution exec) {
  if (reps < 1000) throw DomainError("power_t_mc needs reps >= 1000");
  if (query.n < 2) throw InsufficientDataError("power_t_mc needs n >= 2");
  if (!std::isfinite(query.population_d)) throw DomainError("population d must be finite");
  require_open_unit(query.alpha, "alpha");

  const PowerKernel kernel{query.population_d, query.n, query.alpha, query.sidedness, seed};
  std::size_t rejections = 0;
  std::size_t degenerate = 0;

  if (exec == Execution::serial) {
    std::vector<double> buf(query.n);
    for (std::size_t r = 0; r < reps; ++r) {
      const Outcome o = kernel(r, buf);
      rejections += o == Outcome::reject;
      degenerate += o == Outcome::degenerate;
    }
  } else {
#if defined(FEWN_HAVE_OPENMP)
#pragma omp parallel
#endif
    {
      std::vector<double> buf(query.n);
#if defined(FEWN_HAVE_OPENMP)
#pragma omp for schedule(static) reduction(+ : rejections, degenerate)
#endif
      for (std::size_t r = 0; r < reps; ++r) {
        const Outcome o = kernel(r, buf);
        rejections += o == Outcome::reject;
        degenerate += o == Outcome::degenerate;
      }
    }
  }

  PowerEstimate est;
  est.seed = seed;
  est.rejections = rejections;
  est.degenerate_count = degenerate;
  est.mc_reps = reps - degenerate;
  const double p = est.mc_reps == 0 ? 0.0
                                    : static_cast<double>(rejections) /
                                          static_cast<double>(est.mc_reps);
  est.power = Probability::clamped(p);
  est.mc_halfwidth_95 =
      est.mc_reps == 0 ? 0.0 : 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(est.mc_reps));
  return est;
}

std::optional<std::size_t> min_n_power(double population_d, Probability target_power,
                                       Probability alpha, Sidedness sidedness,
                                       std::size_t reps, std::uint64_t seed,
                                       std::size_t cap, Execution exec) {
  if (!(std::isfinite(population_d) && population_d > 0.0)) {
    throw DomainError("population d must be finite and > 0");
  }
  require_open_unit(target_power, "target power");
  require_open_unit(alpha, "alpha");
  if (cap < 2) return std::nullopt;

  auto passes = [&](std::size_t n) {
    const PowerQuery q{population_d, n, alpha, sidedness, target_power};
    const PowerEstimate est = power_t_mc(q, reps, seed, exec);
    return est.power.value() - est.mc_halfwidth_95 >= target_power.value() - 0.01;
  };

  constexpr std::size_t kLinearLimit = 64;
  const std::size_t linear_end = std::min(cap, kLinearLimit);
  for (std::size_t n = 2; n <= linear_end; ++n) {
    if (passes(n)) return n;
  }
  std::size_t failing = linear_end;
  while (failing < cap) {
    const std::size_t probe = std::min(cap, failing * 2);
    if (passes(probe)) {
      std::size_t lo = failing;
      std::size_t hi = probe;
      while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        (passes(mid) ? hi : lo) = mid;
      }
      return hi;
    }
    failing = probe;
  }
  return std::nullopt;
}

}  // namespace fewn
