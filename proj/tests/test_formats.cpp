#include <doctest.h>

#include "support.hpp"

using namespace nmr;

namespace {

int count(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
  return n;
}

ParseError parse_failure(void (*fn)(std::string_view), std::string_view text) {
  try {
    fn(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no parse error for: " << text);
  return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("diagram round-trip") {
  for (const auto& [name, g] : fx::named()) CHECK_MESSAGE(parse_diagram(serialize_diagram(g)) == g, name);
  std::mt19937_64 rng(51);
  for (int round = 0; round < 200; ++round) {
    Diagram g = fx::random_dag(rng, 8, 14);
    CHECK(parse_diagram(serialize_diagram(g)) == g);
  }
  Diagram t = parse_diagram(fx::read_data("diagrams/tweety.net"));
  CHECK(t == fx::tweety());
}

TEST_CASE("diagram parse errors carry positions") {
  ParseError e = parse_failure([](std::string_view s) { parse_diagram(s); }, "a ->");
  CHECK(e.line() == 1);
  CHECK(e.kind() == ErrorKind::Parse);
  ParseError e2 = parse_failure([](std::string_view s) { parse_diagram(s); }, "a -> b\n\nb => c\n");
  CHECK(e2.line() == 3);
  CHECK(e2.column() >= 1);
  CHECK_THROWS_AS(parse_diagram("a -> b\nb -> a\n"), Error);
  CHECK(parse_diagram("# only a comment\n").size() == 0);
  CHECK(parse_diagram("a -> b  # trailing\n").arrows().size() == 1);
}

TEST_CASE("reactive round-trip") {
  for (const auto& [name, g] : fx::named())
    for (NodeId x = 0; x < g.size(); ++x) {
      ReactiveDiagram r = compile(g, x);
      CHECK_MESSAGE(parse_reactive(serialize_reactive(r)) == r, name);
    }
}

TEST_CASE("circuit round-trip") {
  for (const char* f : {"circuits/circuit1.circ", "circuits/circuit2.circ"}) {
    GateCircuit c = parse_circuit(fx::read_data(f));
    GateCircuit back = parse_circuit(serialize_circuit(c));
    CHECK(simulate_circuit(back, 12) == simulate_circuit(c, 12));
    CHECK(serialize_circuit(back) == serialize_circuit(c));
  }
  CHECK(format_expr(parse_expr("!(a & b) | c")) == format_expr(parse_expr("(!(a & b)) | c")));
  CHECK_THROWS_AS(parse_expr("a &"), ParseError);
}

TEST_CASE("choice function and size system round-trips") {
  std::mt19937_64 rng(52);
  for (int round = 0; round < 200; ++round) {
    ChoiceFunction f = fx::random_sub_function(rng, 3);
    CHECK(parse_choice(serialize_choice(f)) == f);
  }
  for (const char* name : {"level_n_n1.ss", "not_i_n.ss"}) {
    SizeSystem s = parse_size_system(fx::read_data(std::string("sizes/") + name));
    CHECK(parse_size_system(serialize_size_system(s)) == s);
  }
  ParseError e = parse_failure([](std::string_view s) { parse_choice(s); }, "universe: a b\nmu {a,z} = {a}\n");
  CHECK(e.line() == 2);
}

TEST_CASE("structure round-trips") {
  PrefStructure p = represent_smooth(parse_choice("universe: a b\nmu {a,b} = {a}\nmu {a} = {a}\nmu {b} = {b}\n"));
  CHECK(parse_pref(serialize_pref(p)) == p);
  RankedPartition blocks{{0b01, 0b10}};
  PrefDocument doc = parse_pref_document(serialize_pref(p, &blocks));
  REQUIRE(doc.blocks.has_value());
  CHECK(*doc.blocks == blocks);
  for (const char* name : {"need_smooth.gs", "level3_solution.gs", "totally_smooth.gs", "not_totally_smooth.gs"}) {
    GenStructure g = parse_gen(fx::read_data(std::string("structures/") + name));
    GenStructure back = parse_gen(serialize_gen(g));
    CHECK(serialize_gen(back) == serialize_gen(g));
    for (Set x = 0; x <= full_set(static_cast<int>(g.universe.size())); ++x)
      CHECK(higher_mu(back, x) == higher_mu(g, x));
  }
  ChoiceFunction eta = ChoiceFunction::make(fx::letters(2), {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  AttackPair a{eta, fx::function_from_code(2, 5)};
  AttackPair b = parse_attack_pair(serialize_attack_pair(a));
  CHECK(b.eta == a.eta);
  CHECK(b.rho == a.rho);
  CHECK_THROWS_AS(parse_gen("universe: a\narrow p: a -> #q\n"), Error);
}

TEST_CASE("verdict lines") {
  Diagram t = fx::tweety();
  CHECK(format_verdict(t, t.id("a"), t.id("d"), Verdict::Negative) == "a => d : -");
  CHECK(format_verdict(t, t.id("a"), t.id("b"), Verdict::Positive) == "a => b : +");
}

TEST_CASE("DOT output") {
  Diagram t = fx::tweety();
  std::string d = export_dot(t);
  CHECK(d.rfind("digraph G {\n  rankdir=BT;\n", 0) == 0);
  CHECK(count(d, " -> ") == 5);
  CHECK(count(d, "arrowhead=tee") == 1);
  CHECK(d.back() == '\n');

  CHECK(export_dot(Diagram{}) == "digraph G {\n  rankdir=BT;\n}\n");

  ValidSet v = valid_paths(t, Mode::OffPathSplit);
  std::string annotated = export_dot(t, v);
  CHECK(count(annotated, "style=bold") + count(annotated, "style=dashed") == 5);

  Diagram u = fx::inheruniv();
  ReactiveDiagram r = compile(u, u.id("x"));
  CHECK(count(export_dot(r), "arrowhead=odot") == static_cast<int>(r.doubles.size()));

  GenStructure g = parse_gen(fx::read_data("structures/level3_solution.gs"));
  std::string gd = export_dot(g);
  CHECK(gd.find("mid_alpha3") != std::string::npos);
  CHECK(gd.find("style=dashed") != std::string::npos);
}
