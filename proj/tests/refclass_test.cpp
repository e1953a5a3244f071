#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "credal/refclass.hpp"
#include "support.hpp"

using namespace credal;
using logic::Atom;

namespace {

struct Fixture {
  std::vector<StatStatement> stats;
  std::vector<Membership> memberships;
  TaxonomyClosure taxonomy;
};

Fixture bird_only() {
  return {{StatStatement("Fly", "Bird", Interval(0.95, 1.0))},
          {Membership("tweety", "Bird")},
          TaxonomyClosure({TaxonomyFact("Ostrich", "Bird")})};
}

Fixture bird_and_ostrich() {
  Fixture f = bird_only();
  f.stats.emplace_back("Fly", "Ostrich", Interval(0.0, 0.01));
  f.memberships.emplace_back("tweety", "Ostrich");
  return f;
}

const Atom kFly("Fly", "tweety");

}  // namespace

TEST_CASE("taxonomy closure", "[refclass]") {
  TaxonomyClosure closure(
      {TaxonomyFact("Ostrich", "Bird"), TaxonomyFact("Bird", "Animal")});
  CHECK(closure.subset_of("Ostrich", "Bird"));
  CHECK(closure.subset_of("Ostrich", "Animal"));  // transitive
  CHECK(closure.subset_of("Bird", "Bird"));       // reflexive
  CHECK_FALSE(closure.subset_of("Animal", "Ostrich"));
  CHECK_FALSE(closure.subset_of("Bird", "Fish"));
}

TEST_CASE("taxonomy rejects cycles and reflexive facts", "[refclass]") {
  CHECK_THROWS_AS(TaxonomyFact("Bird", "Bird"), InvalidInputError);
  CHECK_THROWS_AS(TaxonomyClosure({TaxonomyFact("A", "B"), TaxonomyFact("B", "C"),
                                   TaxonomyFact("C", "A")}),
                  TaxonomyCycleError);
}

TEST_CASE("candidate gathering", "[refclass]") {
  const Fixture bird = bird_only();
  auto cands = candidates_for(bird.stats, bird.memberships, bird.taxonomy, kFly);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].refclass == "Bird");
  CHECK(cands[0].freq == Interval(0.95, 1.0));

  const Fixture both = bird_and_ostrich();
  CHECK(candidates_for(both.stats, both.memberships, both.taxonomy, kFly).size() == 2);

  // Unknown individuals have no candidates.
  CHECK(candidates_for(both.stats, both.memberships, both.taxonomy, Atom("Fly", "opus")).empty());
}

TEST_CASE("membership through the taxonomy closure", "[refclass]") {
  // Only the ostrich membership is stated; the bird statistic still applies.
  Fixture f{{StatStatement("Fly", "Bird", Interval(0.95, 1.0))},
            {Membership("tweety", "Ostrich")},
            TaxonomyClosure({TaxonomyFact("Ostrich", "Bird")})};
  auto cands = candidates_for(f.stats, f.memberships, f.taxonomy, kFly);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].refclass == "Bird");
}

TEST_CASE("negative queries use complemented frequencies", "[refclass]") {
  const Fixture bird = bird_only();
  auto cands =
      candidates_for(bird.stats, bird.memberships, bird.taxonomy, kFly, Sign::negative);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].freq == Interval(0.95, 1.0).complement());
}

TEST_CASE("defeat by specificity with the strength exception", "[refclass]") {
  const TaxonomyClosure taxonomy({TaxonomyFact("Ostrich", "Bird"),
                                  TaxonomyFact("SmallBird", "Bird")});
  const StatStatement sb("Fly", "Bird", Interval(0.95, 1.0));
  const StatStatement so("Fly", "Ostrich", Interval(0.0, 0.01));
  const Candidate bird{"Bird", sb.freq(), sb};
  const Candidate ostrich{"Ostrich", so.freq(), so};
  CHECK(defeats(ostrich, bird, taxonomy));
  CHECK_FALSE(defeats(bird, ostrich, taxonomy));

  // A broader interval nested inside the specific one does not get defeated.
  const StatStatement ssb("Fly", "SmallBird", Interval(0.8, 1.0));
  const StatStatement sbird("Fly", "Bird", Interval(0.9, 1.0));
  const Candidate small{"SmallBird", ssb.freq(), ssb};
  const Candidate general{"Bird", sbird.freq(), sbird};
  CHECK_FALSE(defeats(small, general, taxonomy));

  // Unrelated classes never defeat each other.
  const Candidate fish{"Fish", Interval(0.0, 0.1), StatStatement("Fly", "Fish", Interval(0.0, 0.1))};
  CHECK_FALSE(defeats(fish, bird, taxonomy));
  CHECK_FALSE(defeats(bird, fish, taxonomy));
}

TEST_CASE("direct inference on the flight fixtures", "[refclass]") {
  const Fixture bird = bird_only();
  const InferenceResult r1 = direct_inference(bird.stats, bird.memberships, bird.taxonomy, kFly);
  CHECK(r1.interval == Interval(0.95, 1.0));
  REQUIRE(r1.source.has_value());
  CHECK(r1.source->refclass == "Bird");

  const Fixture both = bird_and_ostrich();
  const InferenceResult r2 = direct_inference(both.stats, both.memberships, both.taxonomy, kFly);
  CHECK(r2.interval == Interval(0.0, 0.01));
  REQUIRE(r2.source.has_value());
  CHECK(r2.source->refclass == "Ostrich");

  const InferenceResult vac =
      direct_inference(both.stats, both.memberships, both.taxonomy, Atom("Fly", "opus"));
  CHECK(vac.interval == Interval(0, 1));
  CHECK(vac.vacuous());
}

TEST_CASE("nested general interval wins by narrowness", "[refclass]") {
  Fixture f{{StatStatement("Fly", "SmallBird", Interval(0.8, 1.0)),
             StatStatement("Fly", "Bird", Interval(0.9, 1.0))},
            {Membership("tweety", "SmallBird")},
            TaxonomyClosure({TaxonomyFact("SmallBird", "Bird")})};
  const InferenceResult r = direct_inference(f.stats, f.memberships, f.taxonomy, kFly);
  CHECK(r.interval == Interval(0.9, 1.0));
  REQUIRE(r.source.has_value());
  CHECK(r.source->refclass == "Bird");
}

TEST_CASE("a disjoint specific statistic flips the answer", "[refclass]") {
  Fixture f = bird_only();
  const Interval before = direct_inference(f.stats, f.memberships, f.taxonomy, kFly).interval;
  f.stats.emplace_back("Fly", "Ostrich", Interval(0.0, 0.01));
  f.memberships.emplace_back("tweety", "Ostrich");
  const Interval after = direct_inference(f.stats, f.memberships, f.taxonomy, kFly).interval;
  CHECK_FALSE(before.intersects(Interval(0.0, 0.01)));
  CHECK(after == Interval(0.0, 0.01));
}

TEST_CASE("removing memberships restores the vacuous interval", "[refclass]") {
  Fixture f = bird_and_ostrich();
  f.memberships.clear();
  CHECK(direct_inference(f.stats, f.memberships, f.taxonomy, kFly).interval == Interval(0, 1));
}

TEST_CASE("negated queries complement the positive answer", "[refclass]") {
  for (const Fixture& f : {bird_only(), bird_and_ostrich()}) {
    const Interval pos = direct_inference(f.stats, f.memberships, f.taxonomy, kFly).interval;
    const Interval neg =
        direct_inference(f.stats, f.memberships, f.taxonomy, kFly, Sign::negative).interval;
    CHECK(neg == pos.complement());
  }
}

TEST_CASE("the answer is an undefeated candidate's interval or vacuous", "[refclass]") {
  const Fixture f = bird_and_ostrich();
  const InferenceResult r = direct_inference(f.stats, f.memberships, f.taxonomy, kFly);
  const auto cands = candidates_for(f.stats, f.memberships, f.taxonomy, kFly);
  bool matched = false;
  for (const Candidate& c : cands) {
    bool defeated = false;
    for (const Candidate& d : cands) {
      if (&d != &c && defeats(d, c, f.taxonomy)) defeated = true;
    }
    if (!defeated && c.freq == r.interval) matched = true;
  }
  CHECK(matched);
}
