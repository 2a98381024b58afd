#pragma once

#include <cstddef>
#include <vector>

#include "fewn/types.hpp"

namespace fewn {

/// k of N per-animal fixed-effect tests significant, with per-test
/// false-positive rate alpha and assumed sensitivity beta.
struct ConjunctionQuery {
  std::size_t n_significant = 0;
  std::size_t n_total = 0;
  Probability alpha{0.05};
  Probability beta{1.0};
  Probability p_crit{0.05};

  /// Throws DomainError unless k <= N, N >= 1 and alpha < beta.
  void validate() const;
};

enum class BoundMethod { closed_form, bisection };

inline const char* to_string(BoundMethod m) {
  return m == BoundMethod::closed_form ? "closed-form" : "bisection";
}

struct TypicalityResult {
  Probability gamma_c;
  ConjunctionQuery query;
  BoundMethod method = BoundMethod::closed_form;
  /// The observed count is explainable without any typicality (gamma_c = 0
  /// is forced rather than solved).
  bool weak_evidence = false;
  /// The bound hit 1; with beta < 1 it would grow past 1 without limit.
  bool saturated = false;
};

struct RequiredN {
  double n_real = 0.0;
  std::size_t n_int = 0;
};

struct Figure1Row {
  double gamma_c = 0.0;
  double n_real = 0.0;
  std::size_t n_int = 0;
};

/// Per-animal probability of a significant test, alpha (1 - gamma) + beta gamma.
double significance_rate(double gamma, double alpha, double beta);

/// [alpha (1 - gamma) + beta gamma]^N.
Probability prob_all_significant(std::size_t n, Probability gamma, Probability alpha,
                                 Probability beta);

/// Closed-form gamma_c = (p_crit^(1/N) - alpha) / (beta - alpha), clamped to
/// [0, 1]. Requires k == N.
TypicalityResult typicality_lower_bound(const ConjunctionQuery& query);

/// Bound from k of N significant tests: the gamma at which
/// P(at least k significant) reaches p_crit, located by bisection. Valid for
/// any 0 <= k <= N; at k == N it agrees with the closed form.
TypicalityResult partial_conjunction_bound(const ConjunctionQuery& query);

/// Closed form when k == N, bisection otherwise.
TypicalityResult typicality_bound(const ConjunctionQuery& query);

/// Participants needed for a typicality bound gamma_c. n_real is
/// ln(p_crit) / ln(alpha + (beta - alpha) gamma_c); n_int is its ceiling,
/// with values within 1e-9 (relative) of an integer snapped to it.
RequiredN required_n(Probability gamma_c, Probability alpha, Probability beta,
                     Probability p_crit);

/// required_n over gamma_min, gamma_min + step, ... <= gamma_max.
std::vector<Figure1Row> figure1_table(double gamma_min, double gamma_max, double step,
                                      Probability alpha, Probability beta,
                                      Probability p_crit);

}  // namespace fewn
