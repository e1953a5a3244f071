#pragma once

#include <algorithm>
#include <cmath>

#include "credal/errors.hpp"

namespace credal {

/// First two moments of an unknown limit frequency theta in [0,1].
class MomentEvidence {
 public:
  MomentEvidence(double first_moment, double second_moment)
      : m1_(first_moment), m2_(second_moment) {
    if (!std::isfinite(m1_) || !std::isfinite(m2_)) {
      throw InvalidInputError("moments must be finite");
    }
    if (m1_ < 0.0 || m1_ > 1.0) {
      throw InvalidInputError("first moment must lie in [0,1]");
    }
    // For theta in [0,1]: m1^2 <= m2 <= m1.
    if (m2_ < m1_ * m1_ - 1e-12 || m2_ > m1_ + 1e-12) {
      throw InvalidInputError("second moment violates the moment inequalities");
    }
  }

  double first_moment() const { return m1_; }
  double second_moment() const { return m2_; }
  double variance() const { return std::max(0.0, m2_ - m1_ * m1_); }

 private:
  double m1_;
  double m2_;
};

/// Lower confidence that theta stays below t, from the one-sided moment
/// inequality P(theta >= t) <= var / (var + (t - m1)^2).  The bound is sharp
/// given only the two moments (a two-point distribution attains it).
inline double tail_bound_from_moments(const MomentEvidence& ev, double threshold) {
  if (!std::isfinite(threshold) || threshold <= ev.first_moment()) {
    throw DomainError("threshold must exceed the first moment");
  }
  const double var = ev.variance();
  const double gap = threshold - ev.first_moment();
  return 1.0 - var / (var + gap * gap);
}

}  // namespace credal
