#include "fewn/hier_sim.hpp"

#include <array>
#include <cmath>
#include <random>
#include <string>

#include "fewn/errors.hpp"
#include "fewn/rng.hpp"

namespace fewn {
namespace {

constexpr std::size_t kMethodCount = std::size(kAllMethods);

std::size_t method_index(Method m) { return static_cast<std::size_t>(m); }

void require_open_unit(Probability p, const char* what) {
  if (!(p.value() > 0.0 && p.value() < 1.0)) {
    throw DomainError(std::string(what) + " must lie strictly inside (0, 1)");
  }
}

// Draws one replication into flat per-UO storage. Animal i occupies
// values[offsets[i] .. offsets[i + 1]).
void draw(const HierarchicalDesign& design, Engine& engine, std::vector<double>& effects,
          std::vector<double>& values) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < design.uo_counts.size(); ++i) {
    const double a = design.mu_pop + design.sigma_animal * normal(engine);
    effects[i] = a;
    for (std::size_t j = 0; j < design.uo_counts[i]; ++j) {
      values[pos++] = a + design.sigma_uo * normal(engine);
    }
  }
}

struct Tally {
  std::array<std::size_t, kMethodCount> rejections{};
  std::array<std::size_t, kMethodCount> degenerate{};
};

struct ReplicationKernel {
  const HierarchicalDesign& design;
  std::array<bool, kMethodCount> wanted;
  Probability alpha;
  Sidedness sidedness;
  std::uint64_t seed;
  std::vector<std::size_t> offsets;

  struct Scratch {
    std::vector<double> effects;
    std::vector<double> values;
    std::vector<double> means;
  };

  Scratch make_scratch() const {
    return {std::vector<double>(design.n_animals()),
            std::vector<double>(design.total_uos()),
            std::vector<double>(design.n_animals())};
  }

  // 1 = reject, 0 = accept, -1 = degenerate
  int test(std::span<const double> values, double df) const {
    const auto t = detail::t_statistic(values);
    if (!t) return -1;
    return detail::t_p_value(*t, df, sidedness) < alpha ? 1 : 0;
  }

  void operator()(std::size_t rep, Scratch& s, Tally& tally) const {
    Engine engine = substream(seed, rep);
    draw(design, engine, s.effects, s.values);
    const std::size_t animals = design.n_animals();

    auto record = [&](Method m, int outcome) {
      const std::size_t i = method_index(m);
      if (outcome < 0) {
        ++tally.degenerate[i];
      } else {
        tally.rejections[i] += static_cast<std::size_t>(outcome);
      }
    };

    if (wanted[method_index(Method::pooled_fixed)]) {
      record(Method::pooled_fixed,
             test(s.values, static_cast<double>(s.values.size() - 1)));
    }
    if (wanted[method_index(Method::random_across_animals)]) {
      for (std::size_t i = 0; i < animals; ++i) {
        const std::span<const double> animal(s.values.data() + offsets[i],
                                             offsets[i + 1] - offsets[i]);
        s.means[i] = moments(animal).mean;
      }
      record(Method::random_across_animals, test(s.means, static_cast<double>(animals - 1)));
    }
    if (wanted[method_index(Method::conjunction_all_significant)]) {
      int outcome = 1;
      for (std::size_t i = 0; i < animals; ++i) {
        const std::span<const double> animal(s.values.data() + offsets[i],
                                             offsets[i + 1] - offsets[i]);
        const int r = test(animal, static_cast<double>(animal.size() - 1));
        if (r < 0) {
          outcome = -1;
          break;
        }
        if (r == 0) outcome = 0;
      }
      record(Method::conjunction_all_significant, outcome);
    }
  }
};

}  // namespace

void HierarchicalDesign::validate() const {
  if (uo_counts.empty()) throw DomainError("design needs at least one animal");
  for (std::size_t c : uo_counts) {
    if (c < 2) throw DomainError("every animal needs at least 2 units of observation");
  }
  if (!std::isfinite(mu_pop)) throw DomainError("mu_pop must be finite");
  if (!(std::isfinite(sigma_animal) && sigma_animal >= 0.0) ||
      !(std::isfinite(sigma_uo) && sigma_uo >= 0.0)) {
    throw DomainError("standard deviations must be finite and >= 0");
  }
}

std::size_t HierarchicalDesign::total_uos() const {
  std::size_t total = 0;
  for (std::size_t c : uo_counts) total += c;
  return total;
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::pooled_fixed: return "pooled-fixed";
    case Method::random_across_animals: return "random-across-animals";
    case Method::conjunction_all_significant: return "conjunction-all-significant";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

SimulatedDataset simulate_dataset(const HierarchicalDesign& design, std::uint64_t seed,
                                  std::uint64_t replication) {
  design.validate();
  std::vector<double> effects(design.n_animals());
  std::vector<double> values(design.total_uos());
  Engine engine = substream(seed, replication);
  draw(design, engine, effects, values);

  SimulatedDataset data;
  data.seed = seed;
  data.true_animal_effects = std::move(effects);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < design.n_animals(); ++i) {
    EffectSample s;
    s.label = "animal-" + std::to_string(i + 1);
    s.differences.assign(values.begin() + static_cast<std::ptrdiff_t>(pos),
                         values.begin() + static_cast<std::ptrdiff_t>(pos + design.uo_counts[i]));
    pos += design.uo_counts[i];
    data.animals.push_back(std::move(s));
  }
  return data;
}

TestResult run_pooled_fixed(const SimulatedDataset& data, Probability alpha,
                            Sidedness sidedness) {
  return paired_t_test(pool_samples(data.animals), alpha, sidedness);
}

TestResult run_random_effect(const SimulatedDataset& data, Probability alpha,
                             Sidedness sidedness) {
  if (data.animals.size() < 2) {
    throw InsufficientDataError("random-effect test needs at least 2 animals");
  }
  std::vector<double> means;
  means.reserve(data.animals.size());
  for (const auto& a : data.animals) {
    if (a.differences.empty()) throw InsufficientDataError(a.label + " has no data");
    means.push_back(moments(a.differences).mean);
  }
  return paired_t_test(means, alpha, sidedness);
}

ConjunctionOutcome run_conjunction(const SimulatedDataset& data, Probability alpha,
                                   Sidedness sidedness, Probability beta, Probability p_crit) {
  if (!is_one_sided(sidedness)) {
    throw ContractError("conjunction analysis needs a one-sided test in a direction fixed a priori");
  }
  if (data.animals.empty()) throw InsufficientDataError("conjunction needs at least 1 animal");
  ConjunctionOutcome out;
  for (const auto& a : data.animals) {
    out.k_significant += paired_t_test(a, alpha, sidedness).significant;
  }
  ConjunctionQuery q;
  q.n_significant = out.k_significant;
  q.n_total = data.animals.size();
  q.alpha = alpha;
  q.beta = beta;
  q.p_crit = p_crit;
  out.typicality = typicality_bound(q);
  return out;
}

std::vector<ErrorRateReport> estimate_error_rates(const HierarchicalDesign& design,
                                                  std::span<const Method> methods,
                                                  Probability alpha, Sidedness sidedness,
                                                  std::size_t reps, std::uint64_t seed,
                                                  Execution exec) {
  design.validate();
  require_open_unit(alpha, "alpha");
  if (reps < 1000) throw DomainError("estimate_error_rates needs reps >= 1000");
  if (methods.empty()) throw DomainError("no methods requested");

  std::array<bool, kMethodCount> wanted{};
  for (Method m : methods) {
    if (m == Method::random_across_animals && design.n_animals() < 2) {
      throw InsufficientDataError("random-effect test needs at least 2 animals");
    }
    if (m == Method::conjunction_all_significant && !is_one_sided(sidedness)) {
      throw ContractError("conjunction analysis needs a one-sided test in a direction fixed a priori");
    }
    wanted[method_index(m)] = true;
  }

  ReplicationKernel kernel{design, wanted, alpha, sidedness, seed, {0}};
  for (std::size_t c : design.uo_counts) kernel.offsets.push_back(kernel.offsets.back() + c);

  Tally total;
  if (exec == Execution::serial) {
    auto scratch = kernel.make_scratch();
    for (std::size_t r = 0; r < reps; ++r) kernel(r, scratch, total);
  } else {
    std::size_t* rej = total.rejections.data();
    std::size_t* deg = total.degenerate.data();
#if defined(FEWN_HAVE_OPENMP)
#pragma omp parallel
#endif
    {
      auto scratch = kernel.make_scratch();
      Tally local;
#if defined(FEWN_HAVE_OPENMP)
#pragma omp for schedule(static) nowait
#endif
      for (std::size_t r = 0; r < reps; ++r) kernel(r, scratch, local);
      for (std::size_t i = 0; i < kMethodCount; ++i) {
#if defined(FEWN_HAVE_OPENMP)
#pragma omp atomic
#endif
        rej[i] += local.rejections[i];
#if defined(FEWN_HAVE_OPENMP)
#pragma omp atomic
#endif
        deg[i] += local.degenerate[i];
      }
    }
  }

  std::vector<ErrorRateReport> reports;
  reports.reserve(methods.size());
  for (Method m : methods) {
    const std::size_t i = method_index(m);
    ErrorRateReport rep;
    rep.method = m;
    rep.degenerate_count = total.degenerate[i];
    rep.reps = reps - rep.degenerate_count;
    rep.rejections = total.rejections[i];
    const double p = rep.reps == 0 ? 0.0
                                   : static_cast<double>(rep.rejections) /
                                         static_cast<double>(rep.reps);
    rep.rejection_rate = Probability::clamped(p);
    rep.mc_halfwidth_95 =
        rep.reps == 0 ? 0.0 : 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(rep.reps));
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace fewn
