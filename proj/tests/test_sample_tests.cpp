#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fewn/sample_tests.hpp"
#include "oracles.hpp"

using namespace fewn;

namespace {
const Probability kAlpha(0.05);
}

TEST_CASE("paired t test: two-animal boundary case") {
  const EffectSample s{{10.0, 8.5408}, "pair"};
  const TestResult r = paired_t_test(s, kAlpha, Sidedness::two_sided);
  // N = 2: T = (d1 + d2) / |d1 - d2|.
  CHECK(r.statistic == doctest::Approx(18.5408 / 1.4592).epsilon(1e-13));
  CHECK(r.statistic == doctest::Approx(12.7062).epsilon(1e-4));
  CHECK(*r.df == 1.0);
  CHECK(r.p_value.value() == doctest::Approx(0.05).epsilon(1e-4));
  CHECK(r.p_value.value() > 0.05);
  CHECK_FALSE(r.significant);
}

TEST_CASE("paired t test: [0, 2] gives T = 1 and p = 0.5") {
  const TestResult r = paired_t_test(EffectSample{{0.0, 2.0}, ""}, kAlpha, Sidedness::two_sided);
  CHECK(r.statistic == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.p_value.value() == doctest::Approx(2.0 * (1.0 - oracle::t1_cdf(1.0))).epsilon(1e-14));
  CHECK(r.p_value.value() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_FALSE(r.significant);
}

TEST_CASE("paired t test: N = 2 identity over random pairs") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int i = 0; i < 500; ++i) {
    const double a = u(rng);
    const double b = u(rng);
    const double expect = (a + b) / std::abs(a - b);
    const std::vector<double> d{a, b};
    CHECK(paired_t_test(d, kAlpha, Sidedness::two_sided).statistic ==
          doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("paired t test: scale and permutation invariance") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> z(0.4, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> d(3 + trial % 20);
    for (double& v : d) v = z(rng);
    const TestResult base = paired_t_test(d, kAlpha, Sidedness::two_sided);
    for (double c : {1e-3, 0.5, 7.0, 1e4}) {
      std::vector<double> scaled = d;
      for (double& v : scaled) v *= c;
      const TestResult r = paired_t_test(scaled, kAlpha, Sidedness::two_sided);
      CHECK(r.statistic == doctest::Approx(base.statistic).epsilon(1e-12));
      CHECK(r.p_value.value() == doctest::Approx(base.p_value.value()).epsilon(1e-10));
    }
    std::vector<double> shuffled = d;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(paired_t_test(shuffled, kAlpha, Sidedness::two_sided).statistic ==
          doctest::Approx(base.statistic).epsilon(1e-12));
  }
}

TEST_CASE("paired t test: two-sided p is twice the smaller one-sided p") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> z(0.2, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> d(2 + trial % 9);
    for (double& v : d) v = z(rng);
    const double pos = paired_t_test(d, kAlpha, Sidedness::one_sided_positive).p_value.value();
    const double neg = paired_t_test(d, kAlpha, Sidedness::one_sided_negative).p_value.value();
    const TestResult two = paired_t_test(d, kAlpha, Sidedness::two_sided);
    CHECK(two.p_value.value() == doctest::Approx(std::min(1.0, 2.0 * std::min(pos, neg))).epsilon(1e-14));
    CHECK(pos + neg == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(two.significant == (two.p_value < kAlpha));
  }
}

TEST_CASE("paired t test: errors") {
  CHECK_THROWS_AS(paired_t_test(std::vector<double>{5.0}, kAlpha, Sidedness::two_sided),
                  InsufficientDataError);
  CHECK_THROWS_AS(paired_t_test(std::vector<double>{}, kAlpha, Sidedness::two_sided),
                  InsufficientDataError);
  CHECK_THROWS_AS(paired_t_test(std::vector<double>{3.0, 3.0, 3.0}, kAlpha, Sidedness::two_sided),
                  DegenerateSampleError);
  CHECK_THROWS_AS(paired_t_test(std::vector<double>{0.0, 0.0}, kAlpha, Sidedness::two_sided),
                  DegenerateSampleError);
  // 0.1 repeated: the mean carries rounding error but the sample is still degenerate.
  CHECK_THROWS_AS(paired_t_test(std::vector<double>(7, 0.1), kAlpha, Sidedness::two_sided),
                  DegenerateSampleError);
  CHECK_THROWS_AS(paired_t_test(std::vector<double>{1.0, std::nan("")}, kAlpha,
                                Sidedness::two_sided),
                  DomainError);
}

TEST_CASE("cohens_d") {
  CHECK(cohens_d({{0.0, 2.0}, ""}) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(cohens_d({{10.0, 8.5408}, ""}) == doctest::Approx(9.2704 / (1.4592 / std::sqrt(2.0))).epsilon(1e-12));
  CHECK(cohens_d({{10.0, 8.5408}, ""}) == doctest::Approx(8.9846).epsilon(1e-4));
  // Depends only on the given differences: [c, c+k, c-k] has mean c, sd k.
  for (double c : {0.5, 2.0, 9.0}) {
    CHECK(cohens_d({{c, c + 1.5, c - 1.5}, ""}) == doctest::Approx(c / 1.5).epsilon(1e-13));
  }
  CHECK_THROWS_AS(cohens_d({{4.0, 4.0}, ""}), DegenerateSampleError);
  CHECK_THROWS_AS(cohens_d({{4.0}, ""}), InsufficientDataError);
}

TEST_CASE("sign test thresholds") {
  const std::vector<Sign> five(5, Sign::plus);
  const std::vector<Sign> six(6, Sign::plus);
  const std::vector<Sign> four(4, Sign::plus);

  const TestResult r5 = sign_test(five, kAlpha, Sidedness::one_sided_positive);
  CHECK(r5.p_value.value() == 0.03125);
  CHECK(r5.significant);
  CHECK_FALSE(r5.df.has_value());

  const TestResult r6 = sign_test(six, kAlpha, Sidedness::two_sided);
  CHECK(r6.p_value.value() == 0.03125);
  CHECK(r6.significant);

  const TestResult r5two = sign_test(five, kAlpha, Sidedness::two_sided);
  CHECK(r5two.p_value.value() == 0.0625);
  CHECK_FALSE(r5two.significant);

  const TestResult r4 = sign_test(four, kAlpha, Sidedness::one_sided_positive);
  CHECK(r4.p_value.value() == 0.0625);
  CHECK_FALSE(r4.significant);

  CHECK(sign_test(five, kAlpha, Sidedness::one_sided_negative).p_value.value() == 1.0);
  CHECK_THROWS_AS(sign_test(std::vector<Sign>{}, kAlpha, Sidedness::two_sided),
                  InsufficientDataError);
}

TEST_CASE("sign test matches enumeration of all sign patterns") {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::size_t plus = 0; plus <= n; ++plus) {
      std::vector<Sign> signs(n, Sign::minus);
      std::fill_n(signs.begin(), plus, Sign::plus);
      const double pos = oracle::binom_tail_enumerated(plus, n, 0.5);
      const double neg = oracle::binom_tail_enumerated(n - plus, n, 0.5);
      CHECK(sign_test(signs, kAlpha, Sidedness::one_sided_positive).p_value.value() ==
            doctest::Approx(pos).epsilon(1e-14));
      CHECK(sign_test(signs, kAlpha, Sidedness::one_sided_negative).p_value.value() ==
            doctest::Approx(neg).epsilon(1e-14));
      const TestResult two = sign_test(signs, kAlpha, Sidedness::two_sided);
      CHECK(two.p_value.value() == doctest::Approx(std::min(1.0, 2.0 * std::min(pos, neg))).epsilon(1e-14));
      CHECK(two.significant == (two.p_value < kAlpha));
    }
  }
}

TEST_CASE("pool_samples") {
  EffectSample a1{std::vector<double>(60, 0.0), "animal-1"};
  EffectSample a2{std::vector<double>(40, 0.0), "animal-2"};
  for (std::size_t i = 0; i < 60; ++i) a1.differences[i] = 1.0 + 0.01 * static_cast<double>(i);
  for (std::size_t i = 0; i < 40; ++i) a2.differences[i] = -0.5 + 0.03 * static_cast<double>(i);
  const std::vector<EffectSample> both{a1, a2};
  const EffectSample pooled = pool_samples(both);
  CHECK(pooled.differences.size() == 100);
  CHECK(pooled.label == "animal-1:60+animal-2:40");
  CHECK(std::equal(a1.differences.begin(), a1.differences.end(), pooled.differences.begin()));

  const std::vector<EffectSample> reversed{a2, a1};
  const EffectSample pooled_rev = pool_samples(reversed);
  CHECK(paired_t_test(pooled_rev, kAlpha, Sidedness::two_sided).statistic ==
        doctest::Approx(paired_t_test(pooled, kAlpha, Sidedness::two_sided).statistic).epsilon(1e-12));
  auto sorted = [](std::vector<double> v) { std::sort(v.begin(), v.end()); return v; };
  CHECK(sorted(pooled.differences) == sorted(pooled_rev.differences));

  const std::vector<EffectSample> single{a1};
  const EffectSample same = pool_samples(single);
  CHECK(same.differences == a1.differences);
  CHECK(same.label == a1.label);

  CHECK_THROWS_AS(pool_samples(std::vector<EffectSample>{}), InsufficientDataError);
}
