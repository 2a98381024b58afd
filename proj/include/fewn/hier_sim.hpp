#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fewn/conjunction.hpp"
#include "fewn/sample_tests.hpp"
#include "fewn/types.hpp"

namespace fewn {

/// Two-level design: animal effects a_i ~ Normal(mu_pop, sigma_animal^2),
/// unit-of-observation differences ~ Normal(a_i, sigma_uo^2).
struct HierarchicalDesign {
  double mu_pop = 0.0;
  double sigma_animal = 0.0;
  double sigma_uo = 1.0;
  std::vector<std::size_t> uo_counts;

  void validate() const;
  std::size_t n_animals() const { return uo_counts.size(); }
  std::size_t total_uos() const;
};

struct SimulatedDataset {
  std::vector<EffectSample> animals;
  std::vector<double> true_animal_effects;
  std::uint64_t seed = 0;
};

enum class Method { pooled_fixed, random_across_animals, conjunction_all_significant };

inline constexpr Method kAllMethods[] = {Method::pooled_fixed, Method::random_across_animals,
                                         Method::conjunction_all_significant};

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view name);

struct ErrorRateReport {
  Method method = Method::pooled_fixed;
  Probability rejection_rate;
  std::size_t reps = 0;        // non-degenerate replications (the denominator)
  std::size_t rejections = 0;
  double mc_halfwidth_95 = 0.0;
  std::size_t degenerate_count = 0;
};

struct ConjunctionOutcome {
  std::size_t k_significant = 0;
  TypicalityResult typicality;
};

/// Draws one dataset from substream(seed, replication). Animals are
/// labelled "animal-1", "animal-2", ...
SimulatedDataset simulate_dataset(const HierarchicalDesign& design, std::uint64_t seed,
                                  std::uint64_t replication = 0);

/// Single t test over all units pooled across animals.
TestResult run_pooled_fixed(const SimulatedDataset& data, Probability alpha,
                            Sidedness sidedness);

/// t test across per-animal means (df = animals - 1).
TestResult run_random_effect(const SimulatedDataset& data, Probability alpha,
                             Sidedness sidedness);

/// Per-animal one-sided tests; k counts the significant ones and the
/// typicality bound follows from k of N. Two-sided input is a ContractError.
ConjunctionOutcome run_conjunction(const SimulatedDataset& data, Probability alpha,
                                   Sidedness sidedness, Probability beta = Probability(1.0),
                                   Probability p_crit = Probability(0.05));

/// Rejection rate per method over `reps` simulated datasets. The
/// conjunction method rejects when all N per-animal tests are significant.
/// Replication r always uses substream(seed, r), so the serial and parallel
/// paths return identical reports.
std::vector<ErrorRateReport> estimate_error_rates(const HierarchicalDesign& design,
                                                  std::span<const Method> methods,
                                                  Probability alpha, Sidedness sidedness,
                                                  std::size_t reps, std::uint64_t seed,
                                                  Execution exec = Execution::parallel);

}  // namespace fewn
