#include <doctest.h>

#include <cmath>

#include "fewn/conjunction.hpp"
#include "fewn/numeric.hpp"
#include "oracles.hpp"

using namespace fewn;

namespace {
const Probability kAlpha(0.05);
const Probability kBeta(1.0);
const Probability kCrit(0.05);

ConjunctionQuery query(std::size_t k, std::size_t n, double alpha = 0.05, double beta = 1.0) {
  ConjunctionQuery q;
  q.n_significant = k;
  q.n_total = n;
  q.alpha = Probability(alpha);
  q.beta = Probability(beta);
  return q;
}

// Closed form written out independently of the library.
double gamma_closed(std::size_t n, double alpha = 0.05, double beta = 1.0, double crit = 0.05) {
  return (std::pow(crit, 1.0 / static_cast<double>(n)) - alpha) / (beta - alpha);
}
}  // namespace

TEST_CASE("prob_all_significant") {
  for (std::size_t n : {1u, 2u, 7u, 40u}) {
    CHECK(prob_all_significant(n, Probability(1.0), kAlpha, kBeta).value() == 1.0);
  }
  CHECK(prob_all_significant(3, Probability(0.0), kAlpha, kBeta).value() ==
        doctest::Approx(0.000125).epsilon(1e-14));
  CHECK(prob_all_significant(2, Probability(gamma_closed(2)), kAlpha, kBeta).value() ==
        doctest::Approx(0.05).epsilon(1e-12));
  CHECK(prob_all_significant(0, Probability(0.3), kAlpha, kBeta).value() == 1.0);
}

TEST_CASE("typicality_lower_bound values") {
  const TypicalityResult two = typicality_lower_bound(query(2, 2));
  CHECK(two.gamma_c.value() == doctest::Approx(0.18274399).epsilon(1e-7));
  CHECK(std::abs(two.gamma_c.value() - 0.18) <= 0.005);
  CHECK(two.method == BoundMethod::closed_form);
  CHECK_FALSE(two.weak_evidence);

  const TypicalityResult three = typicality_lower_bound(query(3, 3));
  CHECK(three.gamma_c.value() == doctest::Approx(0.3352).epsilon(1e-4));
  CHECK(std::abs(three.gamma_c.value() - 0.34) <= 0.005);

  const TypicalityResult one = typicality_lower_bound(query(1, 1));
  CHECK(one.gamma_c.value() == 0.0);
  CHECK(one.weak_evidence);

  CHECK(typicality_lower_bound(query(5, 5)).gamma_c.value() ==
        doctest::Approx(0.525558).epsilon(1e-6));
}

TEST_CASE("typicality_lower_bound errors") {
  CHECK_THROWS_AS(typicality_lower_bound(query(2, 3)), DomainError);
  CHECK_THROWS_AS(typicality_lower_bound(query(2, 2, 0.05, 0.05)), DomainError);
  CHECK_THROWS_AS(typicality_lower_bound(query(2, 2, 0.3, 0.2)), DomainError);
  CHECK_THROWS_AS(typicality_lower_bound(query(0, 0)), DomainError);
  CHECK_THROWS_AS(typicality_lower_bound(query(4, 3)), DomainError);
}

TEST_CASE("typicality bound with beta < 1 saturates") {
  // 0.05^(1/2) = 0.2236 exceeds beta = 0.2: the bound is pushed past 1.
  const TypicalityResult r = typicality_lower_bound(query(2, 2, 0.05, 0.2));
  CHECK(r.gamma_c.value() == 1.0);
  CHECK(r.saturated);
  // Lowering beta raises the bound.
  CHECK(typicality_lower_bound(query(3, 3, 0.05, 0.7)).gamma_c >
        typicality_lower_bound(query(3, 3, 0.05, 1.0)).gamma_c);
}

TEST_CASE("closed form, bisection and p_crit identity for N = 1..100") {
  for (std::size_t n = 1; n <= 100; ++n) {
    const TypicalityResult closed = typicality_lower_bound(query(n, n));
    const TypicalityResult bisected = partial_conjunction_bound(query(n, n));
    CHECK(closed.gamma_c.value() == doctest::Approx(gamma_closed(n)).epsilon(1e-14));
    CHECK(std::abs(closed.gamma_c.value() - bisected.gamma_c.value()) <= 1e-8);
    CHECK(bisected.method == BoundMethod::bisection);
    CHECK(std::abs(prob_all_significant(n, closed.gamma_c, kAlpha, kBeta).value() - 0.05) <= 1e-9);
  }
}

TEST_CASE("partial conjunction: 2 of 3 against the enumerated outcome probabilities") {
  const TypicalityResult r = partial_conjunction_bound(query(2, 3));
  CHECK(r.method == BoundMethod::bisection);
  CHECK_FALSE(r.weak_evidence);
  // P(at least 2 of 3 significant) summed over all 8 outcomes equals p_crit at gamma_c.
  const double q = 0.05 * (1.0 - r.gamma_c.value()) + r.gamma_c.value();
  CHECK(oracle::binom_tail_enumerated(2, 3, q) == doctest::Approx(0.05).epsilon(1e-10));
  // Independent root of 3q^2 - 2q^3 = 0.05 by plain bisection.
  const double q_root =
      oracle::invert_increasing([](double x) { return 3 * x * x - 2 * x * x * x; }, 0.05, 0, 1);
  CHECK(r.gamma_c.value() == doctest::Approx((q_root - 0.05) / 0.95).epsilon(1e-10));
  CHECK(r.gamma_c.value() == doctest::Approx(0.08984).epsilon(1e-3));
}

TEST_CASE("partial conjunction: weak evidence and monotonicity in k") {
  const TypicalityResult none = partial_conjunction_bound(query(0, 4));
  CHECK(none.gamma_c.value() == 0.0);
  CHECK(none.weak_evidence);
  // 1 of 4 is likely by chance alone: P(>=1 | gamma=0) = 0.185 > 0.05.
  CHECK(partial_conjunction_bound(query(1, 4)).weak_evidence);

  for (std::size_t n : {2u, 5u, 9u, 20u}) {
    double prev = -1.0;
    for (std::size_t k = 0; k <= n; ++k) {
      const double g = partial_conjunction_bound(query(k, n)).gamma_c.value();
      CHECK(g >= prev);
      prev = g;
    }
    CHECK(partial_conjunction_bound(query(n, n)).gamma_c.value() ==
          doctest::Approx(typicality_lower_bound(query(n, n)).gamma_c.value()).epsilon(1e-8));
  }
  CHECK(typicality_bound(query(2, 2)).method == BoundMethod::closed_form);
  CHECK(typicality_bound(query(2, 2)).gamma_c.value() ==
        doctest::Approx(partial_conjunction_bound(query(2, 2)).gamma_c.value()).epsilon(1e-8));
  CHECK(typicality_bound(query(2, 3)).method == BoundMethod::bisection);
}

TEST_CASE("required_n") {
  auto n_int = [](double g, double alpha = 0.05) {
    return required_n(Probability(g), Probability(alpha), kBeta, kCrit).n_int;
  };
  CHECK(n_int(0.5) == 5u);
  CHECK(n_int(0.7) == 9u);
  // n_real = 30.011 and 0.905^30 = 0.05006 > p_crit, so the ceiling is 31.
  CHECK(n_int(0.9) == 31u);
  CHECK(required_n(Probability(0.5), kAlpha, kBeta, kCrit).n_real ==
        doctest::Approx(std::log(0.05) / std::log(0.525)).epsilon(1e-14));
  CHECK(std::abs(required_n(Probability(0.5), kAlpha, kBeta, kCrit).n_real - 4.649) <= 1e-3);
  CHECK(n_int(gamma_closed(2)) == 2u);
  CHECK(n_int(0.18276) == 3u);  // just above the N = 2 bound

  // A lower per-test alpha with p_crit held fixed barely moves N.
  const double strict = required_n(Probability(0.5), Probability(0.005), kBeta, kCrit).n_real;
  const double loose = required_n(Probability(0.5), kAlpha, kBeta, kCrit).n_real;
  CHECK(std::abs(static_cast<long>(n_int(0.5, 0.005)) - static_cast<long>(n_int(0.5))) <= 1);
  CHECK(strict < loose);

  CHECK_THROWS_AS(required_n(Probability(1.0), kAlpha, kBeta, kCrit), DomainError);
  CHECK_THROWS_AS(required_n(Probability(0.5), kAlpha, kAlpha, kCrit), DomainError);
  CHECK_THROWS_AS(required_n(Probability(0.5), kAlpha, kBeta, Probability(1.0)), DomainError);
}

TEST_CASE("required_n inverts the typicality bound for N = 1..100") {
  for (std::size_t n = 1; n <= 100; ++n) {
    const TypicalityResult r = typicality_lower_bound(query(n, n));
    CHECK(required_n(r.gamma_c, kAlpha, kBeta, kCrit).n_int == n);
  }
}

TEST_CASE("figure1_table") {
  const auto rows = figure1_table(0.01, 0.95, 0.01, kAlpha, kBeta, kCrit);
  CHECK(rows.size() == 95);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].n_real > rows[i - 1].n_real);
    CHECK(rows[i].n_int >= rows[i - 1].n_int);
  }
  auto at = [&](double g) {
    for (const auto& r : rows) {
      if (std::abs(r.gamma_c - g) < 1e-9) return r.n_int;
    }
    FAIL("grid point missing");
    return std::size_t{0};
  };
  CHECK(at(0.5) == 5u);
  CHECK(at(0.7) == 9u);
  CHECK(at(0.9) == 31u);
  for (const auto& r : rows) {
    CHECK(r.n_real == doctest::Approx(std::log(0.05) / std::log(0.05 + 0.95 * r.gamma_c)).epsilon(1e-12));
  }

  const auto around = figure1_table(gamma_closed(2), 0.3, 0.05, kAlpha, kBeta, kCrit);
  CHECK(around.front().n_int == 2u);

  CHECK_THROWS_AS(figure1_table(0.0, 0.9, 0.1, kAlpha, kBeta, kCrit), DomainError);
  CHECK_THROWS_AS(figure1_table(0.5, 1.0, 0.1, kAlpha, kBeta, kCrit), DomainError);
  CHECK_THROWS_AS(figure1_table(0.5, 0.4, 0.1, kAlpha, kBeta, kCrit), DomainError);
  CHECK_THROWS_AS(figure1_table(0.1, 0.4, 0.0, kAlpha, kBeta, kCrit), DomainError);
}
