#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "credal/credal_set.hpp"
#include "credal/errors.hpp"
#include "credal/lp.hpp"

namespace credal {

/// Expected utilities range over reals, not probabilities.
struct UtilityRange {
  double lower = 0.0;
  double upper = 0.0;
};

/// Acts x states utility table with a credal set of state distributions.
class DecisionProblem {
 public:
  DecisionProblem(std::vector<std::string> acts, std::vector<std::vector<double>> utility,
                  CredalSet beliefs)
      : acts_(std::move(acts)), utility_(std::move(utility)), beliefs_(std::move(beliefs)) {
    if (acts_.empty()) throw InvalidInputError("decision problem needs at least one act");
    if (utility_.size() != acts_.size()) {
      throw InvalidInputError("utility table must have one row per act");
    }
    for (std::size_t i = 0; i < acts_.size(); ++i) {
      if (acts_[i].empty()) throw InvalidInputError("act names must be nonempty");
      for (std::size_t j = 0; j < i; ++j) {
        if (acts_[j] == acts_[i]) throw InvalidInputError("duplicate act name: " + acts_[i]);
      }
      if (utility_[i].size() != beliefs_.space().size()) {
        throw InvalidInputError("utility row length must match the state space");
      }
      for (double u : utility_[i]) {
        if (!std::isfinite(u)) throw InvalidInputError("utilities must be finite");
      }
    }
  }

  const OutcomeSpace& states() const { return beliefs_.space(); }
  const std::vector<std::string>& acts() const { return acts_; }
  const CredalSet& beliefs() const { return beliefs_; }
  const std::vector<double>& utility_row(std::size_t act) const { return utility_.at(act); }

  std::size_t act_index(const std::string& name) const {
    for (std::size_t i = 0; i < acts_.size(); ++i) {
      if (acts_[i] == name) return i;
    }
    throw LookupError("unknown act: " + name);
  }

 private:
  std::vector<std::string> acts_;
  std::vector<std::vector<double>> utility_;
  CredalSet beliefs_;
};

namespace detail {

inline double optimize_expectation(const DecisionProblem& dp, const std::vector<double>& coeffs,
                                   lp::Direction dir) {
  lp::LinearProgram prog;
  prog.var_count = dp.states().size();
  prog.objective = coeffs;
  prog.constraints = dp.beliefs().with_simplex();
  auto out = lp::solve(prog, dir);
  if (!out.optimal()) throw InternalError("expectation program did not solve");
  return out.value;
}

inline std::vector<double> row_difference(const DecisionProblem& dp, std::size_t a,
                                          std::size_t b) {
  std::vector<double> d = dp.utility_row(a);
  const std::vector<double>& other = dp.utility_row(b);
  for (std::size_t j = 0; j < d.size(); ++j) d[j] -= other[j];
  return d;
}

}  // namespace detail

/// [min, max] expected utility of an act over the belief set.
inline UtilityRange expectation_interval(const DecisionProblem& dp, const std::string& act) {
  const std::size_t i = dp.act_index(act);
  return {detail::optimize_expectation(dp, dp.utility_row(i), lp::Direction::minimize),
          detail::optimize_expectation(dp, dp.utility_row(i), lp::Direction::maximize)};
}

inline constexpr double kDominanceTol = 1e-9;

/// a1 dominates a2 when its expectation is strictly greater under every
/// distribution in the belief set.  One LP on the utility difference; this
/// is weaker than requiring the expectation intervals to separate.
inline bool dominates(const DecisionProblem& dp, const std::string& a1, const std::string& a2) {
  const std::size_t i = dp.act_index(a1);
  const std::size_t j = dp.act_index(a2);
  if (i == j) return false;
  const double worst =
      detail::optimize_expectation(dp, detail::row_difference(dp, i, j), lp::Direction::minimize);
  return worst > kDominanceTol;
}

/// Acts not dominated by any other act, in declaration order.
inline std::vector<std::string> admissible(const DecisionProblem& dp) {
  std::vector<std::string> out;
  for (const std::string& a : dp.acts()) {
    bool dominated = false;
    for (const std::string& b : dp.acts()) {
      if (b != a && dominates(dp, b, a)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(a);
  }
  return out;
}

/// Act with the greatest lower expected utility; earlier declaration wins
/// ties.
inline std::string gamma_maximin(const DecisionProblem& dp) {
  std::size_t best = 0;
  double best_lower = 0.0;
  for (std::size_t i = 0; i < dp.acts().size(); ++i) {
    const double lower =
        detail::optimize_expectation(dp, dp.utility_row(i), lp::Direction::minimize);
    if (i == 0 || lower > best_lower) {
      best = i;
      best_lower = lower;
    }
  }
  return dp.acts()[best];
}

/// Worst-case expected-utility shortfall of an act against every rival, the
/// rival's best case taken over the belief set.
inline double max_regret(const DecisionProblem& dp, const std::string& act) {
  const std::size_t i = dp.act_index(act);
  double regret = 0.0;
  for (std::size_t j = 0; j < dp.acts().size(); ++j) {
    if (j == i) continue;
    const double gap = detail::optimize_expectation(dp, detail::row_difference(dp, j, i),
                                                    lp::Direction::maximize);
    regret = std::max(regret, gap);
  }
  return regret;
}

/// Act minimizing max_regret; earlier declaration wins ties.
inline std::string minimax_regret(const DecisionProblem& dp) {
  std::size_t best = 0;
  double best_regret = 0.0;
  for (std::size_t i = 0; i < dp.acts().size(); ++i) {
    const double r = max_regret(dp, dp.acts()[i]);
    if (i == 0 || r < best_regret) {
      best = i;
      best_regret = r;
    }
  }
  return dp.acts()[best];
}

/// Acts whose lower expected utility reaches the threshold.
inline std::vector<std::string> satisfice(const DecisionProblem& dp, double threshold) {
  if (!std::isfinite(threshold)) throw InvalidInputError("threshold must be finite");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dp.acts().size(); ++i) {
    const double lower =
        detail::optimize_expectation(dp, dp.utility_row(i), lp::Direction::minimize);
    if (lower >= threshold) out.push_back(dp.acts()[i]);
  }
  return out;
}

struct ActAssessment {
  std::string act;
  UtilityRange eu;
  double regret = 0.0;
};

/// Per-act summary used by the command line front end.
inline std::vector<ActAssessment> assess(const DecisionProblem& dp) {
  std::vector<ActAssessment> out;
  out.reserve(dp.acts().size());
  for (const std::string& a : dp.acts()) {
    out.push_back({a, expectation_interval(dp, a), max_regret(dp, a)});
  }
  return out;
}

}  // namespace credal
