#include <doctest.h>

#include "support.hpp"

using namespace nmr;

namespace {

ChoiceFunction fn(const std::string& name) { return parse_choice(fx::read_data("functions/" + name)); }

// Direct readings of the conditions over a domain closed under everything used.
bool oracle(const ChoiceFunction& f, const std::string& tok) {
  auto m = [&](Set x) { return f.at(x); };
  const auto& d = f.domain;
  for (Set x : d)
    for (Set y : d) {
      Set mx = m(x), my = m(y);
      if (tok == "muSub" && !subset(mx, x)) return false;
      if (tok == "muEmpty" && x && !mx) return false;
      if (tok == "muPR" && subset(x, y) && !subset(my & x, mx)) return false;
      if (tok == "muPR'" && !subset(mx & y, m(x & y))) return false;
      if (tok == "muOR" && !subset(m(x | y), mx | my)) return false;
      if (tok == "muwOR" && !subset(m(x | y), mx | y)) return false;
      if (tok == "muDisjOR" && !(x & y) && !subset(m(x | y), mx | my)) return false;
      bool between = subset(mx, y) && subset(y, x);
      if (tok == "muCUT" && between && !subset(mx, my)) return false;
      if (tok == "muCM" && between && !subset(my, mx)) return false;
      if (tok == "muCUM" && between && mx != my) return false;
      if (tok == "muSubSup" && subset(mx, y) && subset(my, x) && mx != my) return false;
      if (tok == "muRatM" && subset(x, y) && (x & my) && !subset(mx, my & x)) return false;
      if (tok == "muEq" && subset(x, y) && (x & my) && mx != (my & x)) return false;
      if (tok == "muEq'" && (my & x) && m(y & x) != (my & x)) return false;
      if (tok == "muPar") {
        Set u = m(x | y);
        if (u != mx && u != my && u != (mx | my)) return false;
      }
      if (tok == "muCup" && (my & (x & ~mx)) && (m(x | y) & y)) return false;
      if (tok == "muCup'" && (my & (x & ~mx)) && m(x | y) != mx) return false;
      if (tok == "muResM")
        for (Set b : d)
          if (subset(mx, y & b) && !subset(m(x & y), b)) return false;
    }
  return true;
}

const char* kOracleTokens[] = {"muSub", "muEmpty", "muPR",    "muPR'",  "muOR",     "muwOR", "muDisjOR",
                               "muCUT", "muCM",    "muCUM",   "muSubSup", "muRatM", "muEq",  "muEq'",
                               "muPar", "muCup",   "muCup'",  "muResM"};

// minimal elements of a random strict relation on n elements; acyclic ones are
// made transitive, hence smooth
ChoiceFunction random_relation_function(std::mt19937_64& rng, int n, bool acyclic, bool ranked) {
  std::vector<Set> below(n, 0);
  std::vector<int> rank(n);
  for (int i = 0; i < n; ++i) rank[i] = std::uniform_int_distribution<int>(0, n - 1)(rng);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      bool edge = ranked ? rank[j] < rank[i] : (std::uniform_int_distribution<int>(0, 2)(rng) == 0);
      if (acyclic && !ranked && j > i) edge = false;
      if (edge) below[i] |= bit(j);
    }
  if (acyclic)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        if (has(below[i], k)) below[i] |= below[k];
  std::vector<Set> dom;
  for (Set x = 0; x <= full_set(n); ++x) dom.push_back(x);
  return fx::relation_function(fx::letters(n), below, dom);
}

}  // namespace

TEST_CASE("checks agree with direct readings exhaustively on two elements") {
  for (std::uint64_t code = 0; code < fx::function_count(2); ++code) {
    ChoiceFunction f = fx::function_from_code(2, code);
    for (const char* t : kOracleTokens) CHECK_MESSAGE(check(f, t).holds == oracle(f, t), t, " ", code);
  }
}

TEST_CASE("checks agree with direct readings on random three-element functions") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 400; ++round) {
    ChoiceFunction f = fx::random_sub_function(rng, 3);
    for (const char* t : kOracleTokens) CHECK_MESSAGE(check(f, t).holds == oracle(f, t), t);
  }
  for (int round = 0; round < 200; ++round) {
    ChoiceFunction f = random_relation_function(rng, 3, rng() & 1u, rng() & 1u);
    for (const char* t : kOracleTokens) CHECK_MESSAGE(check(f, t).holds == oracle(f, t), t);
  }
}

TEST_CASE("failing checks carry a witness that replays") {
  std::mt19937_64 rng(4);
  for (int round = 0; round < 300; ++round) {
    ChoiceFunction f = fx::random_sub_function(rng, 3);
    for (const Property& p : all_simple_properties()) {
      CheckResult r = check(f, p, {ClosureMode::Lenient, 4});
      if (r.holds) continue;
      REQUIRE(r.witness.has_value());
      CHECK(replay(f, p, *r.witness));
      CHECK_FALSE(r.text.empty());
    }
  }
}

TEST_CASE("preferential and ranked relations") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 200; ++round) {
    int n = std::uniform_int_distribution<int>(1, 4)(rng);
    ChoiceFunction any = random_relation_function(rng, n, false, false);
    CHECK(check(any, "muSub").holds);
    CHECK(check(any, "muPR").holds);
    CHECK(check(any, "muOR").holds);
    ChoiceFunction smooth = random_relation_function(rng, n, true, false);
    CHECK(check(smooth, "muEmpty").holds);
    CHECK(check(smooth, "muCUM").holds);
    ChoiceFunction ranked = random_relation_function(rng, n, false, true);
    CHECK(check(ranked, "muRatM").holds);
    CHECK(check(ranked, "muEq").holds);
    CHECK(check(ranked, "muPar").holds);
  }
}

TEST_CASE("stored counterexamples") {
  ChoiceFunction need = fn("need_pr.cf");
  CheckResult pr = check(need, "muPR", {ClosureMode::Lenient, 4});
  CHECK_FALSE(pr.holds);
  CHECK_FALSE(check(need, "muCumA:0", {ClosureMode::Lenient, 4}).holds);

  ChoiceFunction cd = fn("mu_cum_cd.cf");
  CHECK(check(cd, "muSub").holds);
  CHECK(check(cd, "muCUM").holds);
  CHECK_FALSE(check(cd, "muSubSup").holds);

  ChoiceFunction rank = fn("rank_copies.cf");
  CHECK(check(rank, "muSub").holds);
  CHECK_FALSE(check(rank, "muEmptyFin").holds);
}

TEST_CASE("strict checks refuse domains that miss a needed set") {
  ChoiceFunction gap = ChoiceFunction::make(fx::letters(3), {{0b011, 0b001}, {0b110, 0b010}});
  try {
    check(gap, "muPR'");
    FAIL("expected a closure error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainClosure);
  }
  CHECK(check(gap, "muPR'", {ClosureMode::Lenient, 4}).holds);
}

TEST_CASE("hull stages grow to a fixpoint") {
  ChoiceFunction f = fx::function_from_code(3, 12345);
  for (Set u = 0; u <= f.full(); ++u) {
    HullTrace h = hull(f, u, std::nullopt);
    CHECK(h.stages.front() == u);
    for (std::size_t i = 1; i < h.stages.size(); ++i) CHECK(subset(h.stages[i - 1], h.stages[i]));
    Set fix = h.fixpoint();
    for (std::size_t i = 0; i < f.domain.size(); ++i)
      if (subset(f.mu[i], fix)) CHECK(subset(f.domain[i], fix));
  }
}

TEST_CASE("Cum-alpha ladder on the finite ordinal example") {
  auto two = fx::cum_alpha_instance(2);
  CHECK(check(two.f, "muCumtA:1").holds);
  CHECK(check(two.f, "muCumA:1").holds);
  CheckResult r = check(two.f, "muCumA:2");
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness.has_value());
  CHECK(replay(two.f, parse_property("muCumA:2"), *r.witness));

  auto one = fx::cum_alpha_instance(1);
  CheckResult hu = check(one.f, "HUu", {ClosureMode::Lenient, 4});
  CHECK_FALSE(hu.holds);
  REQUIRE(hu.witness.has_value());
  CHECK(hu.witness->sets[0] == one.U);
  CHECK(hu.witness->sets[1] == one.Xk);
  CHECK(one.f.universe[hu.witness->elems[0]] == "c");
  CHECK_THROWS_AS(represent_smooth(one.f), PreconditionFailed);
}

TEST_CASE("Cum-alpha relations at finite indices") {
  std::mt19937_64 rng(6);
  for (int round = 0; round < 300; ++round) {
    ChoiceFunction f = fx::random_sub_function(rng, 3);
    bool cum = check(f, "muCUM").holds;
    std::vector<bool> a, t;
    for (int k = 0; k <= 3; ++k) {
      a.push_back(check_cum_alpha(f, k, false).holds);
      t.push_back(check_cum_alpha(f, k, true).holds);
    }
    for (int k = 0; k <= 3; ++k) {
      if (t[k]) CHECK(a[k]);
      if (k > 0 && a[k]) CHECK(a[k - 1]);
      if (a[k]) CHECK(cum);
    }
  }
}

TEST_CASE("property tokens round-trip") {
  for (const Property& p : all_simple_properties()) CHECK(parse_property(property_token(p)) == p);
  CHECK(parse_property("muCumA:3").alpha == 3);
  CHECK(parse_property("muCumtA:2").kind == Prop::CumtA);
  CHECK(parse_property("muA:a,b<c").blocks.size() == 2);
  CHECK_THROWS_AS(parse_property("muNope"), Error);
  CHECK_THROWS_AS(check_cum_alpha(fx::function_from_code(2, 0), 9, false), Error);
}
