#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "fewn/types.hpp"

namespace fewn {

inline constexpr std::size_t kDefaultSearchCap = 10000;

struct PowerQuery {
  double population_d = 0.0;
  std::size_t n = 2;
  Probability alpha{0.05};
  Sidedness sidedness = Sidedness::two_sided;
  Probability target_power{0.8};
};

struct PowerEstimate {
  Probability power;
  std::size_t mc_reps = 0;          // replications entering the estimate
  double mc_halfwidth_95 = 0.0;     // 1.96 * sqrt(p (1 - p) / mc_reps)
  std::uint64_t seed = 0;
  std::size_t rejections = 0;
  std::size_t degenerate_count = 0; // excluded from mc_reps
};

struct SecondAnimalWindow {
  double lo = 0.0;
  double hi = 0.0;
  double critical_t = 0.0;
};

/// Smallest N >= 2 with sqrt(N) * d >= the critical t for N - 1 df.
/// Returns nullopt when no N up to `cap` qualifies.
std::optional<std::size_t> min_n_sample_d(double sample_d, Probability alpha,
                                          Sidedness sidedness,
                                          std::size_t cap = kDefaultSearchCap);

/// Range of second-animal differences that make a two-animal, two-sided
/// t test significant given the first animal's difference.
SecondAnimalWindow second_animal_window(double first_diff, Probability alpha);

/// Smallest N whose most extreme sign pattern reaches p < alpha.
std::size_t min_n_sign(Probability alpha, Sidedness sidedness);

/// Monte Carlo power of the paired t test when animal effects are
/// Normal(population_d, 1). Replication r draws from substream(seed, r).
PowerEstimate power_t_mc(const PowerQuery& query, std::size_t reps, std::uint64_t seed,
                         Execution exec = Execution::parallel);

/// Smallest n whose estimated power clears the target: the lower 95% MC
/// bound must reach target_power - 0.01. Every n reuses the same seed.
/// n = 2..64 is scanned one by one; beyond that the search gallops
/// (doubling) and then bisects between the last failing and first passing n.
std::optional<std::size_t> min_n_power(double population_d, Probability target_power,
                                       Probability alpha, Sidedness sidedness,
                                       std::size_t reps, std::uint64_t seed,
                                       std::size_t cap = kDefaultSearchCap,
                                       Execution exec = Execution::parallel);

}  // namespace fewn
