#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "credal/kbformat.hpp"
#include "support.hpp"

using namespace credal;

namespace {

const char* kTweety = R"(# flight scenario
stakes 9
class Bird
subset Ostrich Bird
member tweety Bird
member tweety Ostrich
stat Fly | Bird in [0.95, 1]
stat Fly | Ostrich in [0, 0.01]
)";

bool has_error(const std::vector<Diagnostic>& diags) {
  for (const Diagnostic& d : diags) {
    if (d.severity == Diagnostic::Severity::error) return true;
  }
  return false;
}

const Diagnostic& first_error(const std::vector<Diagnostic>& diags) {
  for (const Diagnostic& d : diags) {
    if (d.severity == Diagnostic::Severity::error) return d;
  }
  FAIL("no error diagnostic");
  return diags.front();
}

}  // namespace

TEST_CASE("tweety fixture parses", "[kbformat]") {
  auto result = parse_kb(kTweety);
  REQUIRE(result.ok());
  const EvidentialCorpus& kb = *result.value;
  CHECK(kb.stats().size() == 2);
  CHECK(kb.taxonomy_facts().size() == 1);
  CHECK(kb.memberships().size() == 2);
  CHECK(kb.thresholds().p() == Catch::Approx(0.9));
  CHECK(kb.stats()[0].freq() == Interval(0.95, 1.0));
}

TEST_CASE("interval out of range", "[kbformat]") {
  auto result = parse_kb("stakes 9\nstat Fly | Bird in [1.2, 1.0]\n");
  REQUIRE_FALSE(result.ok());
  const Diagnostic& d = first_error(result.diagnostics);
  CHECK(d.line == 2);
  CHECK(d.message == "interval out of range");
}

TEST_CASE("empty file is missing its stakes", "[kbformat]") {
  auto result = parse_kb("");
  REQUIRE_FALSE(result.ok());
  const Diagnostic& d = first_error(result.diagnostics);
  CHECK(d.message == "missing stakes declaration");
  CHECK(d.line == 1);
  CHECK(d.column == 1);
}

TEST_CASE("stakes validation", "[kbformat]") {
  CHECK_FALSE(parse_kb("stakes 1\n").ok());
  CHECK_FALSE(parse_kb("stakes 9\nstakes 9\n").ok());
  CHECK(parse_kb("stakes 3/2\n").ok());  // fractions allowed
}

TEST_CASE("evidence gating at parse time", "[kbformat]") {
  // stakes 99: e = 0.994987.  error .001 passes, error .01 does not.
  auto result = parse_kb(
      "stakes 99\n"
      "evidence member tweety Bird error 0.001\n"
      "evidence member tweety Ostrich error 0.01\n");
  REQUIRE(result.ok());
  CHECK(result.value->memberships().size() == 1);
  CHECK(result.value->memberships()[0].refclass() == "Bird");
  bool warned = false;
  for (const Diagnostic& d : result.diagnostics) {
    if (d.severity == Diagnostic::Severity::warning && d.line == 3) warned = true;
  }
  CHECK(warned);

  // Certain reports always pass the gate.
  auto certain = parse_kb("stakes 99\nevidence stat Fly | Bird in [0.9, 1] error 0\n");
  REQUIRE(certain.ok());
  CHECK(certain.value->stats().size() == 1);
}

TEST_CASE("evidence making the corpus inconsistent is an error", "[kbformat]") {
  auto result = parse_kb(
      "stakes 9\n"
      "sentence Bird(tweety)\n"
      "evidence sentence ~Bird(tweety) error 0\n");
  REQUIRE_FALSE(result.ok());
  CHECK(first_error(result.diagnostics).line == 3);
}

TEST_CASE("conflicting statistics and cycles carry positions", "[kbformat]") {
  auto stats = parse_kb(
      "stakes 9\n"
      "stat Fly | Bird in [0.9, 1]\n"
      "stat Fly | Bird in [0.1, 0.2]\n");
  REQUIRE_FALSE(stats.ok());
  CHECK(first_error(stats.diagnostics).line == 3);

  auto cycle = parse_kb(
      "stakes 9\n"
      "subset A B\n"
      "subset B C\n"
      "subset C A\n");
  REQUIRE_FALSE(cycle.ok());
  CHECK(first_error(cycle.diagnostics).line == 4);

  CHECK_FALSE(parse_kb("stakes 9\nsubset A A\n").ok());
}

TEST_CASE("unknown keywords and trailing input", "[kbformat]") {
  auto unknown = parse_kb("stakes 9\nfrobnicate x y\n");
  REQUIRE_FALSE(unknown.ok());
  CHECK(first_error(unknown.diagnostics).line == 2);

  auto trailing = parse_kb("stakes 9\nmember tweety Bird extra\n");
  REQUIRE_FALSE(trailing.ok());
  CHECK(first_error(trailing.diagnostics).column > 1);

  auto badchar = parse_kb("stakes 9\nmember tweety B$rd\n");
  REQUIRE_FALSE(badchar.ok());
}

TEST_CASE("identical duplicate statistics are tolerated", "[kbformat]") {
  auto result = parse_kb(
      "stakes 9\n"
      "stat Fly | Bird in [0.9, 1]\n"
      "stat Fly | Bird in [0.9, 1]\n");
  CHECK(result.ok());
}

TEST_CASE("query parsing", "[kbformat]") {
  auto neg = parse_query("~Fly(tweety)");
  REQUIRE(neg.ok());
  CHECK(neg.value->kind() == logic::Sentence::Kind::negation);
  CHECK(logic::to_text(*neg.value) == "~Fly(tweety)");

  auto prec = parse_query("A(x) & B(x) | C(x)");
  REQUIRE(prec.ok());
  CHECK(prec.value->kind() == logic::Sentence::Kind::disjunction);
  CHECK(prec.value->left().kind() == logic::Sentence::Kind::conjunction);

  auto arrows = parse_query("A(x) -> B(x) -> C(x)");
  REQUIRE(arrows.ok());
  CHECK(arrows.value->kind() == logic::Sentence::Kind::implication);
  CHECK(arrows.value->right().kind() == logic::Sentence::Kind::implication);
}

TEST_CASE("query errors carry the position of the failure", "[kbformat]") {
  const std::string text = "Fly(tweety";
  auto result = parse_query(text);
  REQUIRE_FALSE(result.ok());
  const Diagnostic& d = first_error(result.diagnostics);
  CHECK(d.line == 1);
  CHECK(d.column == static_cast<int>(text.size()) + 1);  // at end of input

  CHECK_FALSE(parse_query("Fly(tweety))").ok());
  CHECK_FALSE(parse_query("& Fly(tweety)").ok());
  CHECK_FALSE(parse_query("").ok());
}

TEST_CASE("corpus text round-trips", "[kbformat]") {
  auto first = parse_kb(kTweety);
  REQUIRE(first.ok());
  const std::string printed = to_kb_text(*first.value);
  auto second = parse_kb(printed);
  REQUIRE(second.ok());
  CHECK(*first.value == *second.value);
  CHECK(to_kb_text(*second.value) == printed);
}

TEST_CASE("round-trip survives fractions and independence", "[kbformat]") {
  auto first = parse_kb(
      "stakes 99\n"
      "member t1 Toss\n"
      "member t2 Toss\n"
      "stat Six | Toss in [1/6, 1/6]\n"
      "independent t1 t2\n"
      "sentence Six(t1) -> ~Broken(die)\n");
  REQUIRE(first.ok());
  CHECK(first.value->stats()[0].freq().lower() == Catch::Approx(1.0 / 6).margin(1e-12));
  auto second = parse_kb(to_kb_text(*first.value));
  REQUIRE(second.ok());
  CHECK(*first.value == *second.value);
}

TEST_CASE("random corpora round-trip", "[kbformat]") {
  std::mt19937 rng(9001);
  std::uniform_int_distribution<int> count(0, 4);
  std::uniform_real_distribution<double> prob_dist(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<TaxonomyFact> taxonomy;
    if (count(rng) > 1) taxonomy.emplace_back("C1", "C2");
    std::vector<Membership> memberships;
    std::vector<StatStatement> stats;
    const int n_members = count(rng);
    for (int i = 0; i < n_members; ++i) {
      memberships.emplace_back("i" + std::to_string(i), "C" + std::to_string(1 + i % 2));
    }
    const int n_stats = count(rng);
    for (int i = 0; i < n_stats; ++i) {
      const double a = prob_dist(rng), b = prob_dist(rng);
      stats.emplace_back("A" + std::to_string(i), "C" + std::to_string(1 + i % 2),
                         Interval(std::min(a, b), std::max(a, b)));
    }
    EvidentialCorpus kb(thresholds_from_stakes(2.0 + 97.0 * prob_dist(rng)), {},
                        std::move(taxonomy), std::move(memberships), std::move(stats));
    auto parsed = parse_kb(to_kb_text(kb));
    REQUIRE(parsed.ok());
    CHECK(*parsed.value == kb);
  }
}

TEST_CASE("decision file parsing", "[kbformat]") {
  auto full = parse_decision(
      "states s1 s2\n"
      "act a1 utilities 10 0\n"
      "act a2 utilities 0 10\n"
      "act a3 utilities 6 6\n"
      "belief P(s1) in [0, 1]\n");
  REQUIRE(full.ok());
  CHECK(full.value->acts() == std::vector<std::string>{"a1", "a2", "a3"});
  CHECK(full.value->states().size() == 2);
  CHECK(lower_upper(full.value->beliefs(), {"s1"}) == Interval(0, 1));

  auto banded = parse_decision(
      "states s1 s2\n"
      "act a1 utilities 3 1\n"
      "act a2 utilities 2.9 0.8\n"
      "belief P(s1) in [0.3, 0.7]\n");
  REQUIRE(banded.ok());
  CHECK(dominates(*banded.value, "a1", "a2"));

  auto linear = parse_decision(
      "states s1 s2 s3\n"
      "act a utilities 1 2 -3\n"
      "belief 1*s1 - 1*s2 <= 0.25\n"
      "belief s3 <= 0.5\n");
  REQUIRE(linear.ok());
  CHECK(linear.value->beliefs().constraints().size() == 2);
}

TEST_CASE("decision file errors", "[kbformat]") {
  auto infeasible = parse_decision(
      "states s1 s2\n"
      "act a utilities 1 2\n"
      "belief P(s1) in [0.8, 1]\n"
      "belief P(s1) in [0, 0.1]\n");
  REQUIRE_FALSE(infeasible.ok());
  CHECK(first_error(infeasible.diagnostics).message == "infeasible beliefs");

  auto missing_util = parse_decision("states s1 s2\nact a utilities 1\n");
  REQUIRE_FALSE(missing_util.ok());
  CHECK(first_error(missing_util.diagnostics).line == 2);

  CHECK_FALSE(parse_decision("act a utilities 1\n").ok());          // no states
  CHECK_FALSE(parse_decision("states s1\n").ok());                  // no acts
  CHECK_FALSE(parse_decision("states s1 s1\nact a utilities 1 2\n").ok());
  CHECK_FALSE(parse_decision("states s1\nact a utilities 1\nact a utilities 2\n").ok());
  CHECK_FALSE(
      parse_decision("states s1\nact a utilities 1\nbelief P(s9) in [0, 1]\n").ok());
}

TEST_CASE("witness file parsing", "[kbformat]") {
  auto parsed = parse_witness(
      "outcomes ef e f n\n"
      "marginal {ef, e} in [0.9, 1]\n"
      "conditional {ef, f} given {ef, e} in [0, 0.01]\n");
  REQUIRE(parsed.ok());
  CHECK(parsed.value->space.size() == 4);
  REQUIRE(parsed.value->marginals.size() == 1);
  REQUIRE(parsed.value->conditionals.size() == 1);
  CHECK(parsed.value->marginals[0].event == Event{"ef", "e"});

  CHECK_FALSE(parse_witness("marginal {a} in [0, 1]\n").ok());  // no outcomes
  CHECK_FALSE(parse_witness("outcomes a\nmarginal {b} in [0, 1]\n").ok());
  CHECK_FALSE(parse_witness("outcomes a\nmarginal {a} in [0.5, 0.2]\n").ok());
}

TEST_CASE("parsing is deterministic", "[kbformat]") {
  auto a = parse_kb(kTweety);
  auto b = parse_kb(kTweety);
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  CHECK(*a.value == *b.value);
  CHECK(to_kb_text(*a.value) == to_kb_text(*b.value));
}
