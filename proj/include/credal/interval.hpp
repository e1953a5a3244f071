#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "credal/errors.hpp"

namespace credal {

/// Closed subinterval of [0,1].
///
/// Construction snaps endpoints that are within kSnapTol of the valid range
/// back onto it, so values produced by floating-point optimization can be
/// stored without ceremony; anything further out is rejected.
class Interval {
 public:
  static constexpr double kSnapTol = 1e-9;

  Interval(double lower, double upper) {
    if (!std::isfinite(lower) || !std::isfinite(upper)) {
      throw InvalidInputError("interval endpoints must be finite");
    }
    lower_ = snap(lower);
    upper_ = snap(upper);
    if (lower_ < 0.0 || upper_ > 1.0 || lower_ > upper_ + kSnapTol) {
      throw InvalidInputError("interval out of range: [" + std::to_string(lower) +
                              ", " + std::to_string(upper) + "]");
    }
    upper_ = std::max(lower_, upper_);
  }

  static Interval vacuous() { return {0.0, 1.0}; }
  static Interval point(double p) { return {p, p}; }

  double lower() const { return lower_; }
  double upper() const { return upper_; }
  double width() const { return upper_ - lower_; }

  bool contains(double x) const { return lower_ <= x && x <= upper_; }
  bool contains(const Interval& other) const {
    return lower_ <= other.lower_ && other.upper_ <= upper_;
  }
  bool intersects(const Interval& other) const {
    return std::max(lower_, other.lower_) <= std::min(upper_, other.upper_);
  }

  /// [1-u, 1-l]
  Interval complement() const { return {1.0 - upper_, 1.0 - lower_}; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lower_ == b.lower_ && a.upper_ == b.upper_;
  }
  friend bool operator!=(const Interval& a, const Interval& b) { return !(a == b); }

 private:
  static double snap(double v) {
    if (v < 0.0 && v >= -kSnapTol) return 0.0;
    if (v > 1.0 && v <= 1.0 + kSnapTol) return 1.0;
    return v;
  }

  double lower_;
  double upper_;
};

enum class Connective { conjunction, disjunction };
enum class Dependence { independent, unknown };

/// Interval for a binary combination of two events given only their
/// probability intervals.  With `independent` the product rule applies
/// endpoint-wise; with `unknown` the bounds are the best possible over all
/// joint distributions with those marginals.
inline Interval combine(Connective connective, const Interval& a, const Interval& b,
                        Dependence dependence) {
  if (dependence == Dependence::independent) {
    if (connective == Connective::conjunction) {
      return {a.lower() * b.lower(), a.upper() * b.upper()};
    }
    return {1.0 - (1.0 - a.lower()) * (1.0 - b.lower()),
            1.0 - (1.0 - a.upper()) * (1.0 - b.upper())};
  }
  if (connective == Connective::conjunction) {
    return {std::max(0.0, a.lower() + b.lower() - 1.0), std::min(a.upper(), b.upper())};
  }
  return {std::max(a.lower(), b.lower()), std::min(1.0, a.upper() + b.upper())};
}

}  // namespace credal
