#include <doctest.h>

#include "support.hpp"

using namespace nmr;

namespace {

// μ computed from the definition: copies of X-elements with no X-copy below
Set mu_oracle(const PrefStructure& s, Set x) {
  Set out = 0;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    if (!has(x, s.nodes[i].element)) continue;
    bool minimal = true;
    for (auto [lo, up] : s.rel)
      if (up == static_cast<int>(i) && has(x, s.nodes[lo].element)) minimal = false;
    if (minimal) out |= bit(s.nodes[i].element);
  }
  return out;
}

PrefStructure random_structure(std::mt19937_64& rng, int n) {
  PrefStructure s;
  s.universe = fx::letters(n);
  for (int e = 0; e < n; ++e) {
    int copies = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int c = 0; c < copies; ++c) s.add_copy(e, std::to_string(c));
  }
  int m = static_cast<int>(s.nodes.size());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) s.add_pair(a, b);
  s.finalize();
  return s;
}

ChoiceFunction example_6_1() {
  return parse_choice(
      "universe: a b c\n"
      "mu {a,b,c} = {b}\n"
      "mu {a,b} = {a,b}\n"
      "mu {a,c} = {}\n"
      "mu {b,c} = {b}\n");
}

}  // namespace

TEST_CASE("mu agrees with the definition on random structures") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 300; ++round) {
    PrefStructure s = random_structure(rng, 3);
    for (Set x = 0; x < 8; ++x) CHECK(mu(s, x) == mu_oracle(s, x));
    std::vector<Set> dom;
    for (Set x = 0; x < 8; ++x) dom.push_back(x);
    ChoiceFunction f = derived_function(s, dom);
    CHECK(verify(s, f).holds);
    // every structure's function has the basic properties
    CHECK(check(f, "muSub").holds);
    CHECK(check(f, "muPR").holds);
  }
}

TEST_CASE("structural checks on small hand-made structures") {
  PrefStructure s;
  s.universe = fx::letters(3);
  int a = s.add_copy(0, "0"), b = s.add_copy(1, "0"), c = s.add_copy(2, "0");
  s.add_pair(a, b);
  s.add_pair(b, c);
  s.finalize();
  CHECK_FALSE(is_transitive(s).holds);
  CHECK(is_irreflexive(s).holds);
  CHECK_FALSE(is_smooth(s, {0b111}).holds);
  CHECK(is_smooth(s, {0b011, 0b110}).holds);
  s.add_pair(s.find(0, "0"), s.find(2, "0"));
  s.finalize();
  CHECK(is_transitive(s).holds);
  CHECK(is_smooth(s, {0b111}).holds);
  CHECK(is_ranked(s).holds);
  PrefStructure loop;
  loop.universe = fx::letters(1);
  int x = loop.add_copy(0, "0");
  loop.add_pair(x, x);
  loop.finalize();
  CHECK_FALSE(is_irreflexive(loop).holds);
}

TEST_CASE("representation sweep") {
  fx::SweepStats st = fx::representation_sweep(150, 1);
  for (const auto& f : st.failures) FAIL_CHECK(f);
  CHECK(st.built > 0);
  CHECK(st.refused > 0);
}

TEST_CASE("A-ranked example with blocks {a,b} < {c}") {
  ChoiceFunction f = example_6_1();
  RankedPartition p = make_partition(f, {{"a", "b"}, {"c"}});
  CHECK(p.rank(0) == 0);
  CHECK(p.rank(2) == 1);
  CHECK(check(f, "muA:a,b<c").holds);
  PrefStructure s = represent_A_ranked(f, p, false);
  CHECK(verify(s, f).holds);
  CHECK(is_A_ranked(s, p).holds);
  CHECK_THROWS_AS(represent_A_ranked(f, p, true), PreconditionFailed);
  CHECK_THROWS_AS(make_partition(f, {{"a"}, {"c"}}), Error);
}

TEST_CASE("refusals name the failing condition") {
  ChoiceFunction rank = parse_choice(fx::read_data("functions/rank_copies.cf"));
  try {
    represent_ranked(rank);
    FAIL("expected a refusal");
  } catch (const PreconditionFailed& e) {
    CHECK(e.property() == "muEmptyFin");
    CHECK(e.witness().find("{a,b}") != std::string::npos);
  }
  ChoiceFunction need = parse_choice(fx::read_data("functions/need_pr.cf"));
  CHECK_THROWS_AS(represent_general(need), PreconditionFailed);
}
