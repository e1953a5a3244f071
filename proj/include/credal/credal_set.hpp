#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "credal/errors.hpp"
#include "credal/interval.hpp"
#include "credal/logic.hpp"
#include "credal/lp.hpp"

namespace credal {

/// Ordered, duplicate-free list of world labels.
class OutcomeSpace {
 public:
  explicit OutcomeSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw InvalidInputError("outcome space must be nonempty");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].empty()) throw InvalidInputError("outcome labels must be nonempty");
      if (!index_.emplace(labels_[i], i).second) {
        throw InvalidInputError("duplicate outcome label: " + labels_[i]);
      }
    }
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::size_t index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw LookupError("unknown outcome label: " + label);
    return it->second;
  }

  bool contains(const std::string& label) const { return index_.count(label) != 0; }

  friend bool operator==(const OutcomeSpace& a, const OutcomeSpace& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> index_;
};

/// Subset of an outcome space, by label.
using Event = std::vector<std::string>;

/// Single probability distribution over an outcome space.
class Distribution {
 public:
  Distribution(OutcomeSpace space, std::vector<double> probabilities)
      : space_(std::move(space)), probs_(std::move(probabilities)) {
    if (probs_.size() != space_.size()) {
      throw InvalidInputError("distribution length does not match outcome space");
    }
    double sum = 0.0;
    for (double& p : probs_) {
      if (!std::isfinite(p) || p < -1e-9) {
        throw InvalidInputError("distribution entries must be nonnegative");
      }
      p = std::max(p, 0.0);
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw InvalidInputError("distribution must sum to one");
    }
  }

  const OutcomeSpace& space() const { return space_; }
  const std::vector<double>& probabilities() const { return probs_; }

  double probability(const std::string& label) const { return probs_[space_.index_of(label)]; }

  double mass(const Event& event) const {
    std::set<std::size_t> seen;
    double total = 0.0;
    for (const std::string& label : event) {
      if (seen.insert(space_.index_of(label)).second) total += probs_[space_.index_of(label)];
    }
    return total;
  }

 private:
  OutcomeSpace space_;
  std::vector<double> probs_;
};

namespace detail {

inline std::vector<double> indicator(const OutcomeSpace& space, const Event& event) {
  std::vector<double> ind(space.size(), 0.0);
  for (const std::string& label : event) ind[space.index_of(label)] = 1.0;
  return ind;
}

inline std::vector<double> indicator_intersection(const std::vector<double>& a,
                                                  const std::vector<double>& b) {
  std::vector<double> out(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

}  // namespace detail

/// Convex set of distributions over a finite outcome space, given in
/// H-form: the listed linear constraints plus the implicit simplex
/// conditions (sum one, nonnegative entries).  Feasibility is checked at
/// construction, so every query below runs over a nonempty set.
class CredalSet {
 public:
  explicit CredalSet(OutcomeSpace space, std::vector<lp::Constraint> constraints = {})
      : space_(std::move(space)), constraints_(std::move(constraints)) {
    for (const lp::Constraint& c : constraints_) {
      if (c.coeffs.size() != space_.size()) {
        throw InvalidInputError("credal constraint length does not match outcome space");
      }
    }
    lp::LinearProgram feas;
    feas.var_count = space_.size();
    feas.objective.assign(space_.size(), 0.0);
    feas.constraints = with_simplex();
    auto out = lp::solve(feas, lp::Direction::minimize);
    if (!out.optimal()) throw EmptyCredalSetError("constraints admit no distribution");
  }

  const OutcomeSpace& space() const { return space_; }
  const std::vector<lp::Constraint>& constraints() const { return constraints_; }

  /// Listed constraints plus the simplex equality; nonnegativity is handled
  /// by the LP layer.
  std::vector<lp::Constraint> with_simplex() const {
    std::vector<lp::Constraint> all = constraints_;
    all.push_back(lp::make_eq(std::vector<double>(space_.size(), 1.0), 1.0));
    return all;
  }

  /// Exhaustive vertex set (test oracle; capped at desk scale).
  std::vector<Distribution> vertices() const {
    auto points = lp::enumerate_vertices(space_.size(), with_simplex());
    std::vector<Distribution> out;
    out.reserve(points.size());
    for (auto& p : points) out.emplace_back(space_, std::move(p));
    return out;
  }

 private:
  OutcomeSpace space_;
  std::vector<lp::Constraint> constraints_;
};

namespace detail {

inline double optimize_mass(const CredalSet& c, const std::vector<double>& objective,
                            lp::Direction dir) {
  lp::LinearProgram prog;
  prog.var_count = c.space().size();
  prog.objective = objective;
  prog.constraints = c.with_simplex();
  auto out = lp::solve(prog, dir);
  if (!out.optimal()) throw InternalError("bounded feasible program did not solve");
  return out.value;
}

}  // namespace detail

/// Lower and upper probability of an event: min and max of its mass over the
/// credal set, computed by two LP solves.
inline Interval lower_upper(const CredalSet& c, const Event& event) {
  const auto ind = detail::indicator(c.space(), event);
  const double lo = detail::optimize_mass(c, ind, lp::Direction::minimize);
  const double hi = detail::optimize_mass(c, ind, lp::Direction::maximize);
  return {lo, hi};
}

/// Conditional lower/upper probability under regular extension: the range of
/// P(target & given) / P(given) over members with P(given) > 0.  Solved via
/// the Charnes-Cooper substitution y = t*P, which turns the ratio objective
/// into a linear one.
inline Interval conditional_bounds(const CredalSet& c, const Event& target,
                                   const Event& given) {
  const auto given_ind = detail::indicator(c.space(), given);
  const auto target_ind = detail::indicator(c.space(), target);
  if (lower_upper(c, given).upper() <= lp::kFeasTol) {
    throw ConditioningError("conditioning event has upper probability zero");
  }

  const std::size_t n = c.space().size();
  lp::LinearProgram prog;
  prog.var_count = n + 1;  // y_0..y_{n-1}, then the scale t
  prog.objective = detail::indicator_intersection(target_ind, given_ind);
  prog.objective.push_back(0.0);

  for (const lp::Constraint& cons : c.constraints()) {
    std::vector<double> row = cons.coeffs;
    row.push_back(-cons.rhs);  // a.y <= b*t  etc.
    prog.constraints.push_back({std::move(row), cons.rel, 0.0});
  }
  {
    std::vector<double> row(n, 1.0);  // sum y = t
    row.push_back(-1.0);
    prog.constraints.push_back(lp::make_eq(std::move(row), 0.0));
  }
  {
    std::vector<double> row = given_ind;  // normalize the denominator
    row.push_back(0.0);
    prog.constraints.push_back(lp::make_eq(std::move(row), 1.0));
  }

  auto lo = lp::solve(prog, lp::Direction::minimize);
  auto hi = lp::solve(prog, lp::Direction::maximize);
  if (!lo.optimal() || !hi.optimal()) {
    throw InternalError("conditional program infeasible despite positive upper probability");
  }
  return {lo.value, hi.value};
}

struct MarginalConstraint {
  Event event;
  Interval interval;
};

/// l * P(given) <= P(target & given) <= u * P(given), linear in P.
struct ConditionalConstraint {
  Event target;
  Event given;
  Interval interval;
};

/// Searches for a single classical distribution satisfying every marginal
/// and conditional interval constraint; returns nothing when the constraint
/// system is infeasible.
inline std::optional<Distribution> find_bayes_witness(
    const OutcomeSpace& space, const std::vector<MarginalConstraint>& marginals,
    const std::vector<ConditionalConstraint>& conditionals) {
  lp::LinearProgram prog;
  prog.var_count = space.size();
  prog.objective.assign(space.size(), 0.0);

  for (const MarginalConstraint& m : marginals) {
    auto ind = detail::indicator(space, m.event);
    prog.constraints.push_back(lp::make_ge(ind, m.interval.lower()));
    prog.constraints.push_back(lp::make_le(ind, m.interval.upper()));
  }
  for (const ConditionalConstraint& c : conditionals) {
    const auto given = detail::indicator(space, c.given);
    const auto both = detail::indicator_intersection(detail::indicator(space, c.target), given);
    std::vector<double> low(space.size()), high(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
      low[i] = both[i] - c.interval.lower() * given[i];
      high[i] = both[i] - c.interval.upper() * given[i];
    }
    prog.constraints.push_back(lp::make_ge(std::move(low), 0.0));
    prog.constraints.push_back(lp::make_le(std::move(high), 0.0));
  }
  prog.constraints.push_back(lp::make_eq(std::vector<double>(space.size(), 1.0), 1.0));

  auto out = lp::solve(prog, lp::Direction::minimize);
  if (!out.optimal()) return std::nullopt;
  return Distribution(space, std::move(out.point));
}

using IndividualPair = std::pair<std::string, std::string>;
using IndependenceSet = std::set<IndividualPair>;

inline IndividualPair ordered_pair(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

/// Joint-world LPs are capped at this many distinct atoms (4096 columns).
inline constexpr std::size_t kMaxSentenceAtoms = 12;

namespace detail {

/// Eligibility for endpoint-wise combination: and/or/not only, and every
/// atom occurrence names a distinct individual.
inline bool combinable_shape(const logic::Sentence& s, std::set<std::string>& individuals) {
  switch (s.kind()) {
    case logic::Sentence::Kind::atom:
      return individuals.insert(s.atom().individual()).second;
    case logic::Sentence::Kind::negation:
      return combinable_shape(s.left(), individuals);
    case logic::Sentence::Kind::conjunction:
    case logic::Sentence::Kind::disjunction:
      return combinable_shape(s.left(), individuals) &&
             combinable_shape(s.right(), individuals);
    case logic::Sentence::Kind::implication:
      return false;
  }
  return false;
}

inline bool all_pairs_independent(const std::set<std::string>& a,
                                  const std::set<std::string>& b,
                                  const IndependenceSet& independents) {
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (!independents.count(ordered_pair(x, y))) return false;
    }
  }
  return true;
}

inline Interval combine_recursive(const logic::Sentence& s,
                                  const std::map<logic::Atom, Interval>& marginals,
                                  const IndependenceSet& independents,
                                  std::set<std::string>& individuals) {
  switch (s.kind()) {
    case logic::Sentence::Kind::atom: {
      individuals.insert(s.atom().individual());
      auto it = marginals.find(s.atom());
      if (it == marginals.end()) {
        throw MissingMarginalError("no marginal for atom " + s.atom().to_string());
      }
      return it->second;
    }
    case logic::Sentence::Kind::negation:
      return combine_recursive(s.left(), marginals, independents, individuals).complement();
    case logic::Sentence::Kind::conjunction:
    case logic::Sentence::Kind::disjunction: {
      std::set<std::string> left_ind, right_ind;
      Interval l = combine_recursive(s.left(), marginals, independents, left_ind);
      Interval r = combine_recursive(s.right(), marginals, independents, right_ind);
      const Dependence dep = all_pairs_independent(left_ind, right_ind, independents)
                                 ? Dependence::independent
                                 : Dependence::unknown;
      const Connective conn = s.kind() == logic::Sentence::Kind::conjunction
                                  ? Connective::conjunction
                                  : Connective::disjunction;
      individuals.insert(left_ind.begin(), left_ind.end());
      individuals.insert(right_ind.begin(), right_ind.end());
      return combine(conn, l, r, dep);
    }
    case logic::Sentence::Kind::implication:
      throw InternalError("implication is not endpoint-combinable");
  }
  throw InternalError("unreachable sentence kind");
}

/// Exact bounds on P(s) over every joint distribution of s's atoms whose
/// per-atom marginals lie in the given intervals (one LP variable per joint
/// world, two LPs).
inline Interval joint_lp_bounds(const std::map<logic::Atom, Interval>& marginals,
                                const logic::Sentence& s) {
  std::vector<logic::Atom> atoms;
  std::map<logic::Atom, std::size_t> index;
  for (const logic::Atom& a : s.vocabulary()) {
    index.emplace(a, atoms.size());
    atoms.push_back(a);
  }
  const std::size_t k = atoms.size();
  const std::size_t worlds = std::size_t{1} << k;

  lp::LinearProgram prog;
  prog.var_count = worlds;
  prog.objective.assign(worlds, 0.0);
  for (std::uint32_t w = 0; w < worlds; ++w) {
    if (logic::evaluate_under(s, index, w)) prog.objective[w] = 1.0;
  }
  for (std::size_t i = 0; i < k; ++i) {
    const Interval& m = marginals.at(atoms[i]);
    std::vector<double> ind(worlds, 0.0);
    for (std::size_t w = 0; w < worlds; ++w) {
      if ((w >> i) & 1u) ind[w] = 1.0;
    }
    prog.constraints.push_back(lp::make_ge(ind, m.lower()));
    prog.constraints.push_back(lp::make_le(std::move(ind), m.upper()));
  }
  prog.constraints.push_back(lp::make_eq(std::vector<double>(worlds, 1.0), 1.0));

  auto lo = lp::solve(prog, lp::Direction::minimize);
  auto hi = lp::solve(prog, lp::Direction::maximize);
  if (!lo.optimal() || !hi.optimal()) {
    throw InternalError("marginal constraint program must be feasible");
  }
  return {lo.value, hi.value};
}

}  // namespace detail

/// Probability bounds for a compound sentence from per-atom marginal
/// intervals.
///
/// Dispatch: when every atom occurrence names a distinct individual, the
/// formula uses only and/or/not, and either independence is declared for all
/// individual pairs or the formula is too wide for the joint LP, bounds are
/// combined endpoint-wise (product rule where independence is declared,
/// best-possible marginal bounds otherwise).  Everything else goes through
/// the exact joint-world LP, which requires at most kMaxSentenceAtoms atoms.
inline Interval sentence_bounds(const std::map<logic::Atom, Interval>& marginals,
                                const logic::Sentence& s,
                                const IndependenceSet& independents = {}) {
  const std::set<logic::Atom> vocab = s.vocabulary();
  for (const logic::Atom& a : vocab) {
    if (!marginals.count(a)) {
      throw MissingMarginalError("no marginal for atom " + a.to_string());
    }
  }

  std::set<std::string> individuals;
  const bool combinable = detail::combinable_shape(s, individuals);
  if (combinable) {
    bool fully_independent = true;
    for (auto i = individuals.begin(); i != individuals.end() && fully_independent; ++i) {
      for (auto j = std::next(i); j != individuals.end(); ++j) {
        if (!independents.count(ordered_pair(*i, *j))) {
          fully_independent = false;
          break;
        }
      }
    }
    if (fully_independent || vocab.size() > kMaxSentenceAtoms) {
      std::set<std::string> seen;
      return detail::combine_recursive(s, marginals, independents, seen);
    }
  }
  if (vocab.size() > kMaxSentenceAtoms) {
    throw CapacityError("sentence exceeds the " + std::to_string(kMaxSentenceAtoms) +
                        "-atom bound for joint enumeration");
  }
  return detail::joint_lp_bounds(marginals, s);
}

}  // namespace credal
