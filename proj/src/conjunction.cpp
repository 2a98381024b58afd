#include "fewn/conjunction.hpp"

#include <cmath>
#include <string>

#include "fewn/errors.hpp"
#include "fewn/numeric.hpp"

namespace fewn {

void ConjunctionQuery::validate() const {
  if (n_total < 1) throw DomainError("conjunction needs N >= 1");
  if (n_significant > n_total) throw DomainError("k must not exceed N");
  if (!(alpha < beta)) {
    throw DomainError("beta must exceed alpha; with beta <= alpha the bound is undefined");
  }
  if (!(p_crit.value() > 0.0 && p_crit.value() < 1.0)) {
    throw DomainError("p_crit must lie strictly inside (0, 1)");
  }
}

double significance_rate(double gamma, double alpha, double beta) {
  return alpha * (1.0 - gamma) + beta * gamma;
}

Probability prob_all_significant(std::size_t n, Probability gamma, Probability alpha,
                                 Probability beta) {
  const double q = significance_rate(gamma.value(), alpha.value(), beta.value());
  return Probability::clamped(std::pow(q, static_cast<double>(n)));
}

TypicalityResult typicality_lower_bound(const ConjunctionQuery& query) {
  query.validate();
  if (query.n_significant != query.n_total) {
    throw DomainError("closed-form typicality bound needs k == N (got k=" +
                      std::to_string(query.n_significant) +
                      ", N=" + std::to_string(query.n_total) + ")");
  }
  const double root =
      std::pow(query.p_crit.value(), 1.0 / static_cast<double>(query.n_total));
  const double a = query.alpha.value();
  const double gamma = (root - a) / (query.beta.value() - a);

  TypicalityResult r;
  r.query = query;
  r.method = BoundMethod::closed_form;
  r.weak_evidence = gamma <= 0.0;
  r.saturated = gamma >= 1.0;
  r.gamma_c = Probability::clamped(gamma);
  return r;
}

TypicalityResult partial_conjunction_bound(const ConjunctionQuery& query) {
  query.validate();
  TypicalityResult r;
  r.query = query;
  r.method = BoundMethod::bisection;

  const std::size_t k = query.n_significant;
  const std::size_t n = query.n_total;
  const double a = query.alpha.value();
  const double b = query.beta.value();
  const double p_crit = query.p_crit.value();
  auto excess = [&](double gamma) {
    const double q = significance_rate(gamma, a, b);
    return binom_tail(k, n, Probability::clamped(q)).value() - p_crit;
  };

  if (k == 0 || excess(0.0) >= 0.0) {
    r.gamma_c = Probability(0.0);
    r.weak_evidence = true;
    return r;
  }
  if (excess(1.0) < 0.0) {
    r.gamma_c = Probability(1.0);
    r.saturated = true;
    return r;
  }
  r.gamma_c = Probability::clamped(bisect(excess, RootBracket{0.0, 1.0, 1e-14}));
  return r;
}

TypicalityResult typicality_bound(const ConjunctionQuery& query) {
  return query.n_significant == query.n_total ? typicality_lower_bound(query)
                                              : partial_conjunction_bound(query);
}

RequiredN required_n(Probability gamma_c, Probability alpha, Probability beta,
                     Probability p_crit) {
  if (!(gamma_c.value() < 1.0)) throw DomainError("gamma_c must be < 1");
  if (!(alpha < beta)) throw DomainError("beta must exceed alpha");
  if (!(p_crit.value() > 0.0 && p_crit.value() < 1.0)) {
    throw DomainError("p_crit must lie strictly inside (0, 1)");
  }
  const double base = significance_rate(gamma_c.value(), alpha.value(), beta.value());
  if (!(base > 0.0 && base < 1.0)) {
    throw DomainError("alpha + (beta - alpha) gamma_c must lie strictly inside (0, 1)");
  }
  RequiredN out;
  out.n_real = std::log(p_crit.value()) / std::log(base);
  const double nearest = std::round(out.n_real);
  const double snapped = std::abs(out.n_real - nearest) <= 1e-9 * std::max(1.0, out.n_real)
                             ? nearest
                             : std::ceil(out.n_real);
  out.n_int = static_cast<std::size_t>(std::max(1.0, snapped));
  return out;
}

std::vector<Figure1Row> figure1_table(double gamma_min, double gamma_max, double step,
                                      Probability alpha, Probability beta,
                                      Probability p_crit) {
  if (!(gamma_min > 0.0 && gamma_min < gamma_max && gamma_max < 1.0)) {
    throw DomainError("figure1 grid needs 0 < gamma_min < gamma_max < 1");
  }
  if (!(std::isfinite(step) && step > 0.0)) throw DomainError("figure1 step must be > 0");
  const auto count =
      static_cast<std::size_t>(std::floor((gamma_max - gamma_min) / step + 1e-9)) + 1;
  std::vector<Figure1Row> rows;
  rows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double gamma = gamma_min + static_cast<double>(i) * step;
    const RequiredN need = required_n(Probability(gamma), alpha, beta, p_crit);
    rows.push_back({gamma, need.n_real, need.n_int});
  }
  return rows;
}

}  // namespace fewn
