#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "credal/credal_set.hpp"
#include "credal/errors.hpp"
#include "credal/interval.hpp"
#include "credal/logic.hpp"
#include "credal/refclass.hpp"

namespace credal {

/// Stake-derived acceptance levels.  With a widest odds ratio of r:1, a
/// probability above p = r/(r+1) is a practical certainty, one below
/// 1/(r+1) a practical impossibility, and evidence reports must be veridical
/// with probability at least e = sqrt(p) to enter the evidential corpus.
class Thresholds {
 public:
  explicit Thresholds(double stake_ratio) : ratio_(stake_ratio) {
    if (!std::isfinite(ratio_) || ratio_ <= 1.0) {
      throw DomainError("stake ratio must exceed 1");
    }
    p_ = ratio_ / (ratio_ + 1.0);
    impossibility_ = 1.0 / (ratio_ + 1.0);
    e_ = std::sqrt(p_);
  }

  double stake_ratio() const { return ratio_; }
  double p() const { return p_; }
  double impossibility() const { return impossibility_; }
  double e() const { return e_; }

  friend bool operator==(const Thresholds& a, const Thresholds& b) {
    return a.ratio_ == b.ratio_;
  }

 private:
  double ratio_;
  double p_;
  double impossibility_;
  double e_;
};

inline Thresholds thresholds_from_stakes(double ratio) { return Thresholds(ratio); }

/// Anything an evidence report can put into the evidential corpus.
using CorpusStatement = std::variant<logic::Sentence, TaxonomyFact, Membership, StatStatement>;

/// The evidential corpus: logical sentences, taxonomy, memberships,
/// statistics, independence declarations, and the acceptance thresholds.
/// Immutable snapshot; add_evidence produces successors.
class EvidentialCorpus {
 public:
  EvidentialCorpus(Thresholds thresholds, std::vector<logic::Sentence> sentences,
                   std::vector<TaxonomyFact> taxonomy, std::vector<Membership> memberships,
                   std::vector<StatStatement> stats, IndependenceSet independents = {})
      : thresholds_(thresholds),
        sentences_(std::move(sentences)),
        taxonomy_facts_(std::move(taxonomy)),
        memberships_(std::move(memberships)),
        stats_(std::move(stats)),
        independents_(std::move(independents)),
        closure_(taxonomy_facts_) {
    for (const IndividualPair& p : independents_) {
      if (p.first == p.second) {
        throw InvalidInputError("independence must relate distinct individuals");
      }
      if (!(p.first < p.second)) {
        throw InvalidInputError("independence pairs must be stored in normalized order");
      }
    }
    check_stat_conflicts();
    check_consistency();
  }

  const Thresholds& thresholds() const { return thresholds_; }
  const std::vector<logic::Sentence>& sentences() const { return sentences_; }
  const std::vector<TaxonomyFact>& taxonomy_facts() const { return taxonomy_facts_; }
  const std::vector<Membership>& memberships() const { return memberships_; }
  const std::vector<StatStatement>& stats() const { return stats_; }
  const IndependenceSet& independents() const { return independents_; }
  const TaxonomyClosure& taxonomy() const { return closure_; }

  bool member_of(const std::string& individual, const std::string& refclass) const {
    for (const Membership& m : memberships_) {
      if (m.individual() == individual && closure_.subset_of(m.refclass(), refclass)) {
        return true;
      }
    }
    return false;
  }

  friend bool operator==(const EvidentialCorpus& a, const EvidentialCorpus& b) {
    return a.thresholds_ == b.thresholds_ && a.sentences_ == b.sentences_ &&
           a.taxonomy_facts_ == b.taxonomy_facts_ && a.memberships_ == b.memberships_ &&
           a.stats_ == b.stats_ && a.independents_ == b.independents_;
  }

  /// The logical content relevant to a query: explicit sentences plus
  /// compiled membership atoms and taxonomy implications, filtered down to
  /// the connected component sharing atoms with the seed vocabulary.  The
  /// filter keeps the entailment guard meaningful for corpora whose
  /// statistical part mentions many individuals.
  std::vector<logic::Sentence> logical_context(const std::set<logic::Atom>& seed) const {
    std::vector<logic::Sentence> pool = sentences_;
    std::set<std::string> individuals;
    for (const Membership& m : memberships_) individuals.insert(m.individual());
    for (const logic::Sentence& s : sentences_) {
      for (const logic::Atom& a : s.vocabulary()) individuals.insert(a.individual());
    }
    for (const logic::Atom& a : seed) individuals.insert(a.individual());

    for (const Membership& m : memberships_) {
      pool.push_back(logic::atom(m.refclass(), m.individual()));
    }
    for (const TaxonomyFact& f : taxonomy_facts_) {
      for (const std::string& ind : individuals) {
        pool.push_back(logic::implication(logic::atom(f.sub(), ind),
                                          logic::atom(f.super(), ind)));
      }
    }

    std::set<logic::Atom> vocab = seed;
    std::vector<logic::Sentence> context;
    std::vector<bool> used(pool.size(), false);
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (used[i]) continue;
        const auto v = pool[i].vocabulary();
        const bool touches =
            std::any_of(v.begin(), v.end(), [&](const logic::Atom& a) { return vocab.count(a); });
        if (touches) {
          used[i] = true;
          vocab.insert(v.begin(), v.end());
          context.push_back(pool[i]);
          grew = true;
        }
      }
    }
    return context;
  }

 private:
  void check_stat_conflicts() const {
    std::map<std::pair<std::string, std::string>, Interval> seen;
    for (const StatStatement& st : stats_) {
      auto key = std::make_pair(st.attribute(), st.refclass());
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(key, st.freq());
      } else if (!(it->second == st.freq())) {
        throw ConflictingStatsError("conflicting statistics for " + st.attribute() + " | " +
                                    st.refclass());
      }
    }
  }

  void check_consistency() const {
    if (sentences_.empty()) return;  // positive facts alone are always satisfiable
    std::set<logic::Atom> seed;
    for (const logic::Sentence& s : sentences_) {
      auto v = s.vocabulary();
      seed.insert(v.begin(), v.end());
    }
    if (!logic::satisfiable(logical_context(seed))) {
      throw ConsistencyError("evidential corpus is logically inconsistent");
    }
  }

  Thresholds thresholds_;
  std::vector<logic::Sentence> sentences_;
  std::vector<TaxonomyFact> taxonomy_facts_;
  std::vector<Membership> memberships_;
  std::vector<StatStatement> stats_;
  IndependenceSet independents_;
  TaxonomyClosure closure_;
};

/// Evidence gate: a report enters the corpus iff its probability of being
/// veridical, 1 - error_rate, reaches the evidential level e.  Returns the
/// extended snapshot, or nothing when the report is rejected.  Acceptance
/// that would break a corpus invariant throws and leaves the input intact.
inline std::optional<EvidentialCorpus> add_evidence(const EvidentialCorpus& kb,
                                                    const CorpusStatement& statement,
                                                    double error_rate) {
  if (!std::isfinite(error_rate) || error_rate < 0.0 || error_rate > 1.0) {
    throw DomainError("error rate must lie in [0,1]");
  }
  if (1.0 - error_rate < kb.thresholds().e()) return std::nullopt;

  std::vector<logic::Sentence> sentences = kb.sentences();
  std::vector<TaxonomyFact> taxonomy = kb.taxonomy_facts();
  std::vector<Membership> memberships = kb.memberships();
  std::vector<StatStatement> stats = kb.stats();
  std::visit(
      [&](const auto& item) {
        using T = std::decay_t<decltype(item)>;
        if constexpr (std::is_same_v<T, logic::Sentence>) {
          sentences.push_back(item);
        } else if constexpr (std::is_same_v<T, TaxonomyFact>) {
          taxonomy.push_back(item);
        } else if constexpr (std::is_same_v<T, Membership>) {
          memberships.push_back(item);
        } else {
          stats.push_back(item);
        }
      },
      statement);
  return EvidentialCorpus(kb.thresholds(), std::move(sentences), std::move(taxonomy),
                          std::move(memberships), std::move(stats), kb.independents());
}

inline std::vector<Candidate> candidates_for(const EvidentialCorpus& kb, const logic::Atom& a,
                                             Sign sign = Sign::positive) {
  return candidates_for(kb.stats(), kb.memberships(), kb.taxonomy(), a, sign);
}

inline InferenceResult direct_inference(const EvidentialCorpus& kb, const logic::Atom& a,
                                        Sign sign = Sign::positive) {
  return direct_inference(kb.stats(), kb.memberships(), kb.taxonomy(), a, sign);
}

/// How a probability query was answered.
struct ProbAnswer {
  enum class Basis { entailed, refuted, direct, bounds };

  Interval interval;
  Basis basis;
  /// Chosen reference class per atom (empty option = vacuous inference).
  /// Populated for the statistical bases only.
  std::vector<std::pair<logic::Atom, std::optional<std::string>>> provenance;
};

/// Probability of a sentence relative to the evidential corpus.
///
/// Dispatch: sentences settled by the corpus's logical part (with compiled
/// taxonomy and membership facts) get [1,1] or [0,0]; atoms get direct
/// inference; compounds get sentence_bounds over per-atom direct-inference
/// marginals, honoring the corpus's independence declarations.
inline ProbAnswer prob_answer(const EvidentialCorpus& kb, const logic::Sentence& s) {
  const auto context = kb.logical_context(s.vocabulary());
  if (logic::entails(context, s)) {
    return {Interval::point(1.0), ProbAnswer::Basis::entailed, {}};
  }
  if (logic::entails(context, logic::negation(s))) {
    return {Interval::point(0.0), ProbAnswer::Basis::refuted, {}};
  }

  ProbAnswer answer{Interval::vacuous(), ProbAnswer::Basis::direct, {}};
  std::map<logic::Atom, Interval> marginals;
  for (const logic::Atom& a : s.vocabulary()) {
    const InferenceResult r = direct_inference(kb, a);
    marginals.emplace(a, r.interval);
    answer.provenance.emplace_back(
        a, r.source ? std::optional<std::string>(r.source->refclass) : std::nullopt);
  }

  if (s.kind() == logic::Sentence::Kind::atom) {
    answer.interval = marginals.at(s.atom());
    return answer;
  }
  answer.basis = ProbAnswer::Basis::bounds;
  answer.interval = sentence_bounds(marginals, s, kb.independents());
  return answer;
}

inline Interval prob(const EvidentialCorpus& kb, const logic::Sentence& s) {
  return prob_answer(kb, s).interval;
}

/// Acceptance into the practical corpus: lower probability at least p.
inline bool accepted(const EvidentialCorpus& kb, const logic::Sentence& s) {
  return prob(kb, s).lower() >= kb.thresholds().p();
}

/// Sentences taken for granted at practical-certainty level p.  Never holds
/// both a sentence and its negation, and is not deductively closed: a
/// conjunction must earn its place on its own lower probability.
class PracticalCorpus {
 public:
  PracticalCorpus(std::vector<logic::Sentence> sentences, double p)
      : sentences_(std::move(sentences)), p_(p) {}

  const std::vector<logic::Sentence>& sentences() const { return sentences_; }
  double p() const { return p_; }

  bool contains(const logic::Sentence& s) const {
    for (const logic::Sentence& t : sentences_) {
      if (t == s) return true;
    }
    return false;
  }

 private:
  std::vector<logic::Sentence> sentences_;
  double p_;
};

/// Evaluates an explicit candidate list against the corpus; each candidate
/// (conjunctions included) stands or falls on its own lower probability.
inline PracticalCorpus practical_corpus(const EvidentialCorpus& kb,
                                        const std::vector<logic::Sentence>& candidates) {
  std::vector<logic::Sentence> in;
  for (const logic::Sentence& s : candidates) {
    if (accepted(kb, s)) in.push_back(s);
  }
  return {std::move(in), kb.thresholds().p()};
}

}  // namespace credal
