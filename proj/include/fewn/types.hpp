#pragma once

#include <cmath>
#include <compare>
#include <string>

#include "fewn/errors.hpp"

namespace fewn {

/// A value in [0, 1]. Construction rejects NaN and out-of-range input.
class Probability {
 public:
  constexpr Probability() = default;

  explicit Probability(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw DomainError("probability out of [0, 1]: " + std::to_string(value));
    }
  }

  /// Absorbs rounding overshoot: values slightly outside [0, 1] are pulled
  /// back in. NaN is still rejected.
  static Probability clamped(double value) {
    if (std::isnan(value)) throw DomainError("probability is NaN");
    if (value < 0.0) value = 0.0;
    if (value > 1.0) value = 1.0;
    return Probability(value);
  }

  constexpr double value() const { return value_; }

  friend constexpr auto operator<=>(Probability, Probability) = default;

 private:
  double value_ = 0.0;
};

class DegreesOfFreedom {
 public:
  explicit DegreesOfFreedom(double df) : df_(df) {
    if (!(std::isfinite(df) && df >= 1.0)) {
      throw DomainError("degrees of freedom must be finite and >= 1, got " +
                        std::to_string(df));
    }
  }

  constexpr double value() const { return df_; }

 private:
  double df_;
};

enum class Sidedness { one_sided_positive, one_sided_negative, two_sided };

inline const char* to_string(Sidedness s) {
  switch (s) {
    case Sidedness::one_sided_positive: return "one-sided-positive";
    case Sidedness::one_sided_negative: return "one-sided-negative";
    case Sidedness::two_sided: return "two-sided";
  }
  return "?";
}

inline bool is_one_sided(Sidedness s) { return s != Sidedness::two_sided; }

/// Selects the serial reference loop or the OpenMP loop for Monte Carlo
/// kernels. Both produce identical counts for the same seed.
enum class Execution { serial, parallel };

}  // namespace fewn
