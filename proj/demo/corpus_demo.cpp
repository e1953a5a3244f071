// Builds the flight scenario programmatically: bird evidence makes
// Fly(tweety) practically certain, ostrich evidence flips the verdict.

#include <iostream>

#include "credal/corpus.hpp"

int main() {
  using namespace credal;

  EvidentialCorpus kb(thresholds_from_stakes(9),
                      /*sentences=*/{},
                      /*taxonomy=*/{TaxonomyFact("Ostrich", "Bird")},
                      /*memberships=*/{Membership("tweety", "Bird")},
                      /*stats=*/{StatStatement("Fly", "Bird", Interval(0.95, 1.0))});

  const logic::Sentence can_fly = logic::atom("Fly", "tweety");
  auto report = [&](const EvidentialCorpus& corpus, const char* label) {
    const Interval i = prob(corpus, can_fly);
    std::cout << label << ": Fly(tweety) in [" << i.lower() << ", " << i.upper() << "], "
              << (accepted(corpus, can_fly) ? "accepted" : "not accepted") << "\n";
  };
  report(kb, "bird evidence");

  auto with_member = add_evidence(kb, Membership("tweety", "Ostrich"), 0.0);
  auto with_stat =
      add_evidence(*with_member, StatStatement("Fly", "Ostrich", Interval(0.0, 0.01)), 0.0);
  report(*with_stat, "plus ostrich evidence");

  const logic::Sentence cannot_fly = logic::negation(can_fly);
  std::cout << "~Fly(tweety) "
            << (accepted(*with_stat, cannot_fly) ? "accepted" : "not accepted") << "\n";
  return 0;
}
