#include <doctest.h>

#include "support.hpp"

using namespace nmr;

TEST_CASE("implication table audit") {
  for (const auto& row : fx::mu_base_rows()) {
    SearchReport rep = search_counterexample(fx::row_config(row));
    CHECK_MESSAGE(rep.found == row.counterexample, "row ", row.label);
    CHECK(rep.strategy.size() >= 1);
    if (!rep.found) continue;
    REQUIRE(rep.function.has_value());
    const ChoiceFunction& f = *rep.function;
    for (const Property& h : fx::properties(row.hypotheses))
      CHECK_MESSAGE(check(f, h, {ClosureMode::Lenient, 4}).holds, "row ", row.label);
    REQUIRE(rep.failure.witness.has_value());
    CHECK(replay(f, rep.violated, *rep.failure.witness));
  }
}

TEST_CASE("row 9 is witnessed by a stored function") {
  ChoiceFunction f = parse_choice(fx::read_data("functions/mu_base_row9.cf"));
  CHECK(check(f, "muSub").holds);
  CHECK(check(f, "muCUM", {ClosureMode::Lenient, 4}).holds);
  CHECK_FALSE(check(f, "muSubSup").holds);
}

TEST_CASE("unconstrained functions violate muSub") {
  SearchConfig c;
  c.conclusions = fx::properties("muSub");
  c.bound = 2;
  SearchReport rep = search_counterexample(c);
  REQUIRE(rep.found);
  bool outside = false;
  for (std::size_t i = 0; i < rep.function->domain.size(); ++i)
    outside |= !subset(rep.function->mu[i], rep.function->domain[i]);
  CHECK(outside);
}

TEST_CASE("sampled universes are reproducible from the seed") {
  SearchConfig c;
  c.hypotheses = fx::properties("muSub,muCUM");
  c.conclusions = fx::properties("muSubSup");
  c.bound = 4;
  c.exhaustive_max = 2;
  c.samples = 3000;
  c.seed = 17;
  SearchReport a = search_counterexample(c), b = search_counterexample(c);
  CHECK(a.found == b.found);
  CHECK(a.examined == b.examined);
  if (a.found) CHECK(*a.function == *b.function);
  c.bound = 6;
  CHECK_THROWS_AS(search_counterexample(c), Error);
}

TEST_CASE("closures") {
  Closure c = parse_closure("cap,cup");
  CHECK(c.intersections);
  CHECK(c.unions);
  CHECK_FALSE(c.differences);
  CHECK(parse_closure(closure_name(c)) == c);
  CHECK(parse_closure("none") == Closure{});
  Set fam = close_family({0b011, 0b110}, 3, c);
  for (Set x : {0b010u, 0b111u, 0b011u, 0b110u}) CHECK(has(fam, static_cast<int>(x)));
}

TEST_CASE("size rule searches") {
  SizeSearchConfig c;
  c.hypotheses = {parse_size_rule("iM")};
  c.conclusion = parse_size_rule("eMI");
  SizeSearchReport rep = search_size_counterexample(c);
  REQUIRE(rep.found);
  CHECK(check_size_rule(*rep.system, parse_size_rule("iM")).holds);
  CHECK_FALSE(check_size_rule(*rep.system, parse_size_rule("eMI")).holds);
}
