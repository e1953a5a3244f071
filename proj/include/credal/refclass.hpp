#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "credal/errors.hpp"
#include "credal/interval.hpp"
#include "credal/logic.hpp"

namespace credal {

/// Interval-valued relative frequency of an attribute within a reference
/// class: "between l and u of refclass have attribute".
class StatStatement {
 public:
  StatStatement(std::string attribute, std::string refclass, Interval freq)
      : attribute_(std::move(attribute)), refclass_(std::move(refclass)), freq_(freq) {
    if (!logic::is_identifier(attribute_) || !logic::is_identifier(refclass_)) {
      throw InvalidInputError("statistic parts must be identifiers");
    }
  }

  const std::string& attribute() const { return attribute_; }
  const std::string& refclass() const { return refclass_; }
  const Interval& freq() const { return freq_; }

  friend bool operator==(const StatStatement& a, const StatStatement& b) {
    return a.attribute_ == b.attribute_ && a.refclass_ == b.refclass_ && a.freq_ == b.freq_;
  }

 private:
  std::string attribute_;
  std::string refclass_;
  Interval freq_;
};

/// sub is a subclass of super.
class TaxonomyFact {
 public:
  TaxonomyFact(std::string sub, std::string super)
      : sub_(std::move(sub)), super_(std::move(super)) {
    if (!logic::is_identifier(sub_) || !logic::is_identifier(super_)) {
      throw InvalidInputError("taxonomy parts must be identifiers");
    }
    if (sub_ == super_) throw InvalidInputError("taxonomy fact may not be reflexive: " + sub_);
  }

  const std::string& sub() const { return sub_; }
  const std::string& super() const { return super_; }

  friend bool operator==(const TaxonomyFact& a, const TaxonomyFact& b) {
    return a.sub_ == b.sub_ && a.super_ == b.super_;
  }

 private:
  std::string sub_;
  std::string super_;
};

class Membership {
 public:
  Membership(std::string individual, std::string refclass)
      : individual_(std::move(individual)), refclass_(std::move(refclass)) {
    if (!logic::is_identifier(individual_) || !logic::is_identifier(refclass_)) {
      throw InvalidInputError("membership parts must be identifiers");
    }
  }

  const std::string& individual() const { return individual_; }
  const std::string& refclass() const { return refclass_; }

  friend bool operator==(const Membership& a, const Membership& b) {
    return a.individual_ == b.individual_ && a.refclass_ == b.refclass_;
  }

 private:
  std::string individual_;
  std::string refclass_;
};

/// Reflexive-transitive closure of the subset facts; cycles are rejected at
/// construction.
class TaxonomyClosure {
 public:
  TaxonomyClosure() = default;

  explicit TaxonomyClosure(const std::vector<TaxonomyFact>& facts) {
    std::map<std::string, std::set<std::string>> direct;
    for (const TaxonomyFact& f : facts) direct[f.sub()].insert(f.super());

    for (const auto& [node, _] : direct) {
      // Iterative DFS; a gray node reached again closes a cycle.
      std::map<std::string, int> color;  // 0 white, 1 gray, 2 black
      visit(node, direct, color);
    }
    for (const auto& [node, supers] : direct) {
      std::set<std::string>& anc = ancestors_[node];
      std::vector<std::string> stack(supers.begin(), supers.end());
      while (!stack.empty()) {
        std::string cur = stack.back();
        stack.pop_back();
        if (!anc.insert(cur).second) continue;
        auto it = direct.find(cur);
        if (it != direct.end()) {
          for (const std::string& nxt : it->second) stack.push_back(nxt);
        }
      }
    }
  }

  /// True when sub == super or super is reachable through subset facts.
  bool subset_of(const std::string& sub, const std::string& super) const {
    if (sub == super) return true;
    auto it = ancestors_.find(sub);
    return it != ancestors_.end() && it->second.count(super) != 0;
  }

 private:
  static void visit(const std::string& node,
                    const std::map<std::string, std::set<std::string>>& direct,
                    std::map<std::string, int>& color) {
    int& c = color[node];
    if (c == 1) throw TaxonomyCycleError("taxonomy contains a cycle through " + node);
    if (c == 2) return;
    c = 1;
    auto it = direct.find(node);
    if (it != direct.end()) {
      for (const std::string& nxt : it->second) visit(nxt, direct, color);
    }
    color[node] = 2;
  }

  std::map<std::string, std::set<std::string>> ancestors_;
};

/// One admissible reference class for a query, with the frequency interval
/// it would assign and the statistic it came from.
struct Candidate {
  std::string refclass;
  Interval freq;
  StatStatement provenance;
};

/// Which side of the attribute a query asks about; negative queries use the
/// complemented frequency of each statistic.
enum class Sign { positive, negative };

/// All reference classes that contain the atom's individual (directly or via
/// the taxonomy) and carry a statistic for the atom's attribute.
inline std::vector<Candidate> candidates_for(const std::vector<StatStatement>& stats,
                                             const std::vector<Membership>& memberships,
                                             const TaxonomyClosure& taxonomy,
                                             const logic::Atom& a,
                                             Sign sign = Sign::positive) {
  std::vector<Candidate> out;
  for (const StatStatement& st : stats) {
    if (st.attribute() != a.attribute()) continue;
    bool member = false;
    for (const Membership& m : memberships) {
      if (m.individual() == a.individual() && taxonomy.subset_of(m.refclass(), st.refclass())) {
        member = true;
        break;
      }
    }
    if (!member) continue;
    const Interval freq = sign == Sign::positive ? st.freq() : st.freq().complement();
    bool duplicate = false;
    for (const Candidate& c : out) {
      if (c.refclass == st.refclass() && c.freq == freq) duplicate = true;
    }
    if (!duplicate) out.push_back({st.refclass(), freq, st});
  }
  return out;
}

/// Specificity-with-strength rule: a candidate from a more specific class
/// defeats one from a broader class unless the broader interval nests inside
/// the specific one.  Both candidates must concern the same query atom.
inline bool defeats(const Candidate& c1, const Candidate& c2, const TaxonomyClosure& taxonomy) {
  return taxonomy.subset_of(c1.refclass, c2.refclass) && !c1.freq.contains(c2.freq);
}

struct InferenceResult {
  Interval interval;
  std::optional<Candidate> source;  // empty when no reference class applied

  bool vacuous() const { return !source.has_value(); }
};

/// Direct inference for one query atom: gather candidates, drop defeated
/// ones, then answer with the narrowest surviving interval (lexicographic
/// class name breaks ties).  No candidates at all yields the vacuous [0,1].
inline InferenceResult direct_inference(const std::vector<StatStatement>& stats,
                                        const std::vector<Membership>& memberships,
                                        const TaxonomyClosure& taxonomy,
                                        const logic::Atom& a,
                                        Sign sign = Sign::positive) {
  const std::vector<Candidate> cands = candidates_for(stats, memberships, taxonomy, a, sign);
  const Candidate* best = nullptr;
  for (const Candidate& c : cands) {
    bool defeated = false;
    for (const Candidate& d : cands) {
      if (&d != &c && defeats(d, c, taxonomy)) {
        defeated = true;
        break;
      }
    }
    if (defeated) continue;
    if (!best || c.freq.width() < best->freq.width() ||
        (c.freq.width() == best->freq.width() && c.refclass < best->refclass)) {
      best = &c;
    }
  }
  if (!best) return {Interval::vacuous(), std::nullopt};
  return {best->freq, *best};
}

}  // namespace credal
