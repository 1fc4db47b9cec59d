// One PASS/FAIL line per acceptance criterion.
#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "support.hpp"

using namespace nmr;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string arrows_text(const Diagram& g, const std::vector<int>& as) {
  std::string out = "{";
  for (std::size_t i = 0; i < as.size(); ++i) out += (i ? ", " : "") + g.arrow_label(as[i]);
  return out + "}";
}

std::vector<Diagram> random_corpus(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Diagram> out;
  for (int i = 0; i < count; ++i) out.push_back(fx::random_dag(rng, 8, 14));
  return out;
}

Outcome named_goldens() {
  Outcome o;
  Diagram t = fx::tweety();
  o.require(conclude(t, "a", "d", Mode::OffPathSplit) == Verdict::Negative, "Tweety a,d not negative");
  Diagram n = fx::nixon();
  o.require(conclude(n, "a", "d", Mode::OffPathSplit) == Verdict::Undefined, "Nixon a,d not undefined");
  o.require(extensions(n).size() == 2, "Nixon does not have 2 extensions");
  Diagram u = fx::updown();
  o.require(conclude(u, "z", "y", Mode::OffPathSplit) == Verdict::Positive, "Up-Down z,y not positive");
  o.require(conclude(u, "u", "y", Mode::OffPathSplit) == Verdict::Negative, "Up-Down u,y not negative");
  Diagram s = fx::split_total();
  o.require(conclude(s, "u", "y", Mode::OffPathSplit) == Verdict::Negative, "split mode u,y not negative");
  o.require(conclude(s, "u", "y", Mode::TotalValidity) == Verdict::Undefined, "total mode u,y not undefined");
  Diagram g = fx::inheruniv();
  ValidSet v = valid_paths(g, Mode::OffPathSplit);
  o.require(v.verdict(g.id("x"), g.id("y")) == Verdict::Positive, "InherUniv x,y not positive");
  std::set<std::string> routes;
  for (const Path& p : v.from(g.id("x")))
    if (g.endpoint(p) == g.id("y")) routes.insert(g.path_label(p));
  o.require(routes.count("x->a->y") && routes.count("x->c->y"), "InherUniv misses the route via a or via c");
  auto sp = signposts(g, g.id("x"), g.id("y"));
  std::vector<int> want{fx::arrow(g, "c", "e"), fx::arrow(g, "c", "g")};
  std::sort(want.begin(), want.end());
  std::vector<int> got = sp;
  std::sort(got.begin(), got.end());
  o.require(got == want, "InherUniv signposts are " + arrows_text(g, sp) + ", expected {c->e, c->g}");
  return o;
}

Outcome reactive_equivalence() {
  Outcome o;
  std::vector<Diagram> corpus;
  for (const auto& [name, g] : fx::named()) corpus.push_back(g);
  for (Diagram& g : random_corpus(200, 2024)) corpus.push_back(std::move(g));
  int checked = 0, bad = 0;
  for (const Diagram& g : corpus) {
    ValidSet v = valid_paths(g, Mode::OffPathSplit);
    for (NodeId x = 0; x < g.size(); ++x) {
      ++checked;
      ReactiveDiagram r = compile(g, x);
      std::vector<Path> walked = traverse(r), want = v.from(x);
      auto key = [](std::vector<Path> ps) {
        std::vector<std::vector<int>> out;
        for (auto& p : ps) out.push_back(p.arrows);
        std::sort(out.begin(), out.end());
        return out;
      };
      if (key(walked) != key(want) || recompile_fixpoint(r) != r) ++bad;
    }
  }
  o.require(bad == 0, std::to_string(bad) + " origins disagree");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(checked) + " origins over " +
              std::to_string(corpus.size()) + " diagrams";
  return o;
}

Outcome bigset_correspondence() {
  Outcome o;
  std::vector<Diagram> corpus;
  for (const auto& [name, g] : fx::named()) corpus.push_back(g);
  for (Diagram& g : random_corpus(200, 2024)) corpus.push_back(std::move(g));
  int bad = 0;
  for (const Diagram& g : corpus) {
    std::set<std::tuple<NodeId, NodeId, Membership>> want;
    for (const auto& pv : all_conclusions(g, Mode::OffPathSplit))
      if (pv.verdict != Verdict::Undefined)
        want.emplace(pv.x, pv.y, pv.verdict == Verdict::Positive ? Membership::In : Membership::Out);
    auto got = bigset_conclusions(g);
    if (want != std::set<std::tuple<NodeId, NodeId, Membership>>(got.begin(), got.end())) ++bad;
  }
  o.require(bad == 0, std::to_string(bad) + " diagrams disagree");
  if (o.pass) o.detail = std::to_string(corpus.size()) + " diagrams agree";
  return o;
}

Outcome gate_tables() {
  Outcome o;
  auto rows = [](const TransitionTable& t) {
    std::vector<std::string> out;
    for (const auto& r : t.rows) out.push_back(row_string(r));
    return out;
  };
  auto one = simulate_circuit(parse_circuit(fx::read_data("circuits/circuit1.circ")), 9);
  o.require(rows(one) == std::vector<std::string>{"TFFFFFFF", "TFFFFFTT", "TFTFTTTT", "TFTFTTFF", "TFFFTFFF",
                                                  "TFFFFFFT", "TFFFTFTT", "TFTFTTFT", "TFFFTFFF"},
            "circuit 1 table differs");
  o.require(one.rows[8] == one.rows[4], "circuit 1 does not re-enter at step 9");
  auto two = simulate_circuit(parse_circuit(fx::read_data("circuits/circuit2.circ")), 8);
  o.require(rows(two) == std::vector<std::string>{"TFFFFFFF", "TFFFFFTT", "TFFFTTTT", "TFTFTTFF", "TFTFTFFF",
                                                  "TFFFTFFT", "TFFFTFFT", "TFFFTFFT"},
            "circuit 2 table differs");
  return o;
}

Outcome representation_sweep() {
  Outcome o;
  fx::SweepStats st = fx::representation_sweep(600, 1);
  o.require(st.failures.empty(), std::to_string(st.failures.size()) + " failures, first: " +
                                     (st.failures.empty() ? "" : st.failures.front()));
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(st.built) + " built and verified, " +
              std::to_string(st.refused) + " refused, " + std::to_string(st.truncated) + " over bound";
  return o;
}

Outcome stored_counterexamples() {
  Outcome o;
  CheckOptions lenient{ClosureMode::Lenient, 4};
  auto fn = [](const std::string& n) { return parse_choice(fx::read_data("functions/" + n)); };
  o.require(!check(fn("mu_cum_cd.cf"), "muSubSup").holds, "Mu-Cum-Cd passes muSubSup");
  ChoiceFunction need = fn("need_pr.cf");
  o.require(!check(need, "muPR", lenient).holds, "Need-Pr passes muPR");
  o.require(!check(need, "muCumA:0", lenient).holds, "Need-Pr passes muCumA:0");
  try {
    represent_ranked(fn("rank_copies.cf"));
    o.require(false, "Rank-Copies was represented");
  } catch (const PreconditionFailed& e) {
    o.require(e.property() == "muEmptyFin", "Rank-Copies refused citing " + e.property());
  }
  auto inst = fx::cum_alpha_instance(2);
  o.require(check(inst.f, "muCumtA:1").holds, "Inf-Cum-Alpha fails muCumtA:1");
  o.require(!check(inst.f, "muCumA:2").holds, "Inf-Cum-Alpha passes muCumA:2");
  auto ss = [](const std::string& n, const std::string& r) {
    return check_size_rule(parse_size_system(fx::read_data("sizes/" + n)), parse_size_rule(r)).holds;
  };
  o.require(!ss("not_i_n.ss", "I:3"), "Not-I-n passes I:3");
  o.require(ss("not_i_n.ss", "OR:3") && ss("not_i_n.ss", "CM:3") && ss("not_i_n.ss", "Mplus:3"),
            "Not-I-n fails one of OR:3, CM:3, Mplus:3");
  o.require(ss("level_n_n1.ss", "nStar:2"), "Level-n-n+1 fails nStar:2");
  o.require(!ss("level_n_n1.ss", "nStar:3"), "Level-n-n+1 passes nStar:3");
  return o;
}

Outcome mu_base_audit() {
  Outcome o;
  int rows = 0;
  for (const auto& row : fx::mu_base_rows()) {
    ++rows;
    SearchReport rep = search_counterexample(fx::row_config(row));
    if (rep.found != row.counterexample)
      o.require(false, "row " + row.label + (rep.found ? " has a counterexample" : " has no witness"));
    else if (rep.found && !replay(*rep.function, rep.violated, *rep.failure.witness))
      o.require(false, "row " + row.label + " witness does not replay");
  }
  if (o.pass) o.detail = std::to_string(rows) + " rows as stated";
  return o;
}

Outcome higher_structures() {
  Outcome o;
  GenStructure ns = parse_gen(fx::read_data("structures/need_smooth.gs"));
  o.require(higher_mu(ns, 0b111) == 0b001 && higher_mu(ns, 0b101) == 0b101, "Need-Smooth mu values differ");
  GenStructure l3 = parse_gen(fx::read_data("structures/level3_solution.gs"));
  auto ids = [](std::vector<std::string> v) { return std::set<std::string>(v.begin(), v.end()); };
  o.require(ids(valid_arrows(l3, 0b111, 0b111)) ==
                std::set<std::string>{"alpha3", "beta1", "beta2", "gamma1", "gamma2"},
            "level-3 solution valid set in Y differs");
  o.require(verify_higher(l3, fx::level_bigger_2()).holds, "level-3 solution mu values differ");
  fx::HigherSweep er = fx::eta_rho_sweep();
  o.require(er.failures.empty() && er.verified == 16, "eta/rho pairs: " + std::to_string(er.verified) + " of 16");
  fx::HigherSweep l = fx::level3_sweep(200, 5);
  o.require(l.failures.empty(), std::to_string(l.failures.size()) + " level-3 outputs fail verification");
  std::string refusals;
  for (const auto& [tok, n] : l.refused_by) refusals += " " + tok + "=" + std::to_string(n);
  o.require(l.refused == 0, "level-3: " + std::to_string(l.refused) +
                                " functions have no essentially smooth representation (" + refusals.substr(1) + ")");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("eta/rho 16 verified; level-3 ") +
              std::to_string(l.verified) + " verified, " + std::to_string(l.refused) + " refused";
  return o;
}

Outcome horizon_cum() {
  Outcome o;
  auto names = [](const BlockNet& n, const Horizon& h) {
    std::set<std::string> out;
    for (NodeId x : h.visible) out.insert(n.name(x));
    return out;
  };
  BlockNet one = parse_diagram(fx::read_data("diagrams/blocking1.net"));
  o.require(names(one, horizon(one, std::vector<std::string>{"a"})) == std::set<std::string>{"a", "b"},
            "first example differs");
  BlockNet two = parse_diagram(fx::read_data("diagrams/blocking2.net"));
  o.require(names(two, horizon(two, std::vector<std::string>{"a", "b"})) == std::set<std::string>{"a", "b"},
            "second example differs");
  int nets = 0, bad = 0;
  for (int n = 1; n <= 5; ++n)
    fx::for_each_net(n, 8, [&](const BlockNet& net) {
      ++nets;
      if (!fx::cum_holds(net)) ++bad;
    });
  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    ++nets;
    if (!fx::cum_holds(fx::random_dag(rng, 10, 20))) ++bad;
  }
  o.require(bad == 0, std::to_string(bad) + " nets violate (Cum)");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(nets) + " nets";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> allowed;
  app.add_option("--allow-fail", allowed, "criteria whose failure does not fail the run")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  using Check = Outcome (*)();
  const std::vector<std::pair<const char*, Check>> checks{
      {"named-diagram goldens", named_goldens},
      {"reactive equivalence and idempotence", reactive_equivalence},
      {"big-set correspondence", bigset_correspondence},
      {"gate tables", gate_tables},
      {"representation sweep", representation_sweep},
      {"stored counterexamples", stored_counterexamples},
      {"implication table audit", mu_base_audit},
      {"higher structures", higher_structures},
      {"horizon", horizon_cum},
  };
  int unexpected = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = checks[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool tolerated = std::find(allowed.begin(), allowed.end(), id) != allowed.end();
    if (!o.pass && !tolerated) ++unexpected;
    std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << " " << checks[i].first;
    if (!o.detail.empty()) std::cout << ": " << o.detail;
    if (!o.pass && tolerated) std::cout << " (known)";
    std::cout << " [" << static_cast<int>(secs * 1000) << " ms]\n";
  }
  return unexpected == 0 ? 0 : 1;
}
