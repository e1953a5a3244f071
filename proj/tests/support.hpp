#pragma once

// Shared generators and independent oracles for the test suites.  The
// oracles deliberately avoid the code paths they are used to check: LP
// results are validated against exhaustive vertex enumeration, closed-form
// interval rules against small LPs built directly here, and the entailment
// loop against World-based evaluation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <stdexcept>
#include "credal/credal_set.hpp"
#include "credal/interval.hpp"
#include "credal/logic.hpp"
#include "credal/lp.hpp"

namespace testsupport {

using credal::CredalSet;
using credal::Event;
using credal::Interval;
using credal::OutcomeSpace;

inline std::vector<std::string> labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("w" + std::to_string(i + 1));
  return out;
}

inline std::vector<double> random_distribution(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> d(n);
  double sum = 0.0;
  for (double& x : d) {
    x = u(rng);
    sum += x;
  }
  for (double& x : d) x /= sum;
  return d;
}

/// Random credal set built around a hidden distribution, so the constraint
/// system is feasible by construction.  Coefficients come from a coarse grid
/// to keep the vertex-enumeration oracle well conditioned.
inline CredalSet random_credal_set(std::mt19937& rng, int max_outcomes = 6,
                                   int max_constraints = 8) {
  std::uniform_int_distribution<int> n_dist(2, max_outcomes);
  const std::size_t n = static_cast<std::size_t>(n_dist(rng));
  const std::vector<double> hidden = random_distribution(rng, n);

  std::uniform_int_distribution<int> k_dist(0, max_constraints);
  std::uniform_int_distribution<int> coeff_dist(-2, 2);
  std::uniform_real_distribution<double> slack_dist(0.02, 0.3);
  std::uniform_int_distribution<int> rel_dist(0, 2);

  std::vector<credal::lp::Constraint> constraints;
  const int k = k_dist(rng);
  for (int c = 0; c < k; ++c) {
    std::vector<double> a(n);
    for (double& x : a) x = 0.5 * coeff_dist(rng);
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) value += a[i] * hidden[i];
    switch (rel_dist(rng)) {
      case 0:
        constraints.push_back(credal::lp::make_le(a, value + slack_dist(rng)));
        break;
      case 1:
        constraints.push_back(credal::lp::make_ge(a, value - slack_dist(rng)));
        break;
      default:
        // Two-sided band, still through the hidden point.
        constraints.push_back(credal::lp::make_le(a, value + slack_dist(rng)));
        constraints.push_back(credal::lp::make_ge(a, value - slack_dist(rng)));
        break;
    }
  }
  return CredalSet(OutcomeSpace(labels(n)), std::move(constraints));
}

inline Event random_event(std::mt19937& rng, const OutcomeSpace& space) {
  std::bernoulli_distribution coin(0.5);
  Event e;
  for (const std::string& label : space.labels()) {
    if (coin(rng)) e.push_back(label);
  }
  return e;
}

/// Min and max of a linear functional over the credal set, via the vertex
/// enumeration oracle rather than the simplex solver.
inline std::pair<double, double> vertex_extrema(const CredalSet& c,
                                                const std::vector<double>& objective) {
  const auto vertices = c.vertices();
  if (vertices.empty()) throw std::runtime_error("oracle: vertex set unexpectedly empty");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& v : vertices) {
    double val = 0.0;
    for (std::size_t i = 0; i < objective.size(); ++i) val += objective[i] * v.probabilities()[i];
    lo = std::min(lo, val);
    hi = std::max(hi, val);
  }
  return {lo, hi};
}

inline std::vector<double> indicator(const OutcomeSpace& space, const Event& event) {
  std::vector<double> ind(space.size(), 0.0);
  for (const std::string& label : event) ind[space.index_of(label)] = 1.0;
  return ind;
}

inline std::pair<double, double> vertex_event_extrema(const CredalSet& c, const Event& event) {
  return vertex_extrema(c, indicator(c.space(), event));
}

/// Conditional-probability extrema over vertices with positive conditioning
/// mass; sound for regular extension because a vertex with zero mass on the
/// conditioning event contributes no new ratio values.
inline std::optional<std::pair<double, double>> vertex_conditional_extrema(const CredalSet& c,
                                                                           const Event& target,
                                                                           const Event& given) {
  const auto giv = indicator(c.space(), given);
  const auto tgt = indicator(c.space(), target);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  bool any = false;
  for (const auto& v : c.vertices()) {
    double den = 0.0, num = 0.0;
    for (std::size_t i = 0; i < giv.size(); ++i) {
      den += giv[i] * v.probabilities()[i];
      num += giv[i] * tgt[i] * v.probabilities()[i];
    }
    if (den <= 1e-9) continue;
    any = true;
    lo = std::min(lo, num / den);
    hi = std::max(hi, num / den);
  }
  if (!any) return std::nullopt;
  return std::make_pair(lo, hi);
}

/// Best-possible bounds for a pairwise combination, via an LP over the four
/// joint truth assignments; checks the closed-form combine() rules.
inline Interval pair_bounds_lp(credal::Connective conn, const Interval& a, const Interval& b) {
  credal::lp::LinearProgram prog;
  prog.var_count = 4;  // q_ff, q_ft, q_tf, q_tt  (a-bit, b-bit)
  prog.objective.assign(4, 0.0);
  for (int w = 0; w < 4; ++w) {
    const bool at = (w & 2) != 0;
    const bool bt = (w & 1) != 0;
    const bool truth = conn == credal::Connective::conjunction ? (at && bt) : (at || bt);
    if (truth) prog.objective[w] = 1.0;
  }
  prog.constraints.push_back(credal::lp::make_ge({0, 0, 1, 1}, a.lower()));
  prog.constraints.push_back(credal::lp::make_le({0, 0, 1, 1}, a.upper()));
  prog.constraints.push_back(credal::lp::make_ge({0, 1, 0, 1}, b.lower()));
  prog.constraints.push_back(credal::lp::make_le({0, 1, 0, 1}, b.upper()));
  prog.constraints.push_back(credal::lp::make_eq({1, 1, 1, 1}, 1.0));
  auto lo = credal::lp::solve(prog, credal::lp::Direction::minimize);
  auto hi = credal::lp::solve(prog, credal::lp::Direction::maximize);
  if (!lo.optimal() || !hi.optimal()) throw std::runtime_error("oracle: pair LP infeasible");
  return {lo.value, hi.value};
}

/// Largest possible P(theta >= t) for a [0,1] variable with the given first
/// two moments, over a discretization that includes the two-point support of
/// the extremal distribution.
inline double max_tail_lp(double m1, double m2, double t) {
  std::vector<double> grid;
  for (int i = 0; i <= 200; ++i) grid.push_back(i / 200.0);
  grid.push_back(t);
  const double var = m2 - m1 * m1;
  if (t > m1 && var > 0.0) {
    const double support = m1 - var / (t - m1);
    if (support >= 0.0 && support <= 1.0) grid.push_back(support);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  credal::lp::LinearProgram prog;
  prog.var_count = grid.size();
  prog.objective.assign(grid.size(), 0.0);
  std::vector<double> first(grid.size()), second(grid.size()), ones(grid.size(), 1.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    first[i] = grid[i];
    second[i] = grid[i] * grid[i];
    if (grid[i] >= t - 1e-12) prog.objective[i] = 1.0;
  }
  prog.constraints.push_back(credal::lp::make_eq(ones, 1.0));
  prog.constraints.push_back(credal::lp::make_eq(first, m1));
  prog.constraints.push_back(credal::lp::make_eq(second, m2));
  auto out = credal::lp::solve(prog, credal::lp::Direction::maximize);
  if (!out.optimal()) throw std::runtime_error("oracle: moment LP infeasible");
  return out.value;
}

inline credal::logic::Sentence random_sentence(std::mt19937& rng,
                                               const std::vector<credal::logic::Atom>& atoms,
                                               int depth) {
  using credal::logic::Sentence;
  std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
  if (depth <= 0) return credal::logic::atom(atoms[pick(rng)]);
  std::uniform_int_distribution<int> kind(0, 5);
  switch (kind(rng)) {
    case 0:
    case 1:
      return credal::logic::atom(atoms[pick(rng)]);
    case 2:
      return credal::logic::negation(random_sentence(rng, atoms, depth - 1));
    case 3:
      return credal::logic::conjunction(random_sentence(rng, atoms, depth - 1),
                                        random_sentence(rng, atoms, depth - 1));
    case 4:
      return credal::logic::disjunction(random_sentence(rng, atoms, depth - 1),
                                        random_sentence(rng, atoms, depth - 1));
    default:
      return credal::logic::implication(random_sentence(rng, atoms, depth - 1),
                                        random_sentence(rng, atoms, depth - 1));
  }
}

/// World-based entailment oracle: ascending enumeration through explicit
/// World objects, independent of the packed-bits loop inside entails().
inline bool entails_oracle(const std::vector<credal::logic::Sentence>& premises,
                           const credal::logic::Sentence& conclusion) {
  std::set<credal::logic::Atom> vocab = conclusion.vocabulary();
  for (const auto& p : premises) {
    auto v = p.vocabulary();
    vocab.insert(v.begin(), v.end());
  }
  std::vector<credal::logic::Atom> order(vocab.begin(), vocab.end());
  const std::uint32_t count = 1u << order.size();
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    std::map<credal::logic::Atom, bool> assignment;
    for (std::size_t i = 0; i < order.size(); ++i) {
      assignment.emplace(order[i], ((bits >> i) & 1u) != 0);
    }
    credal::logic::World world(assignment);
    bool hold = true;
    for (const auto& p : premises) {
      if (!credal::logic::evaluate(p, world)) {
        hold = false;
        break;
      }
    }
    if (hold && !credal::logic::evaluate(conclusion, world)) return false;
  }
  return true;
}

}  // namespace testsupport
