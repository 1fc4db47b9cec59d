// nmr: command-line front end over the nmr core library.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nmr/error.hpp"
#include "nmr/formats.hpp"
#include "nmr/search.hpp"

namespace fs = std::filesystem;
using namespace nmr;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct Options {
  std::string mode = "split";
  std::uint64_t seed = 1;
  int bound = 3;
  std::string format = "text";
  int threads = 1;
};

// Relative paths that do not exist are looked up in the corpus directory
// ($NMR_CORPUS, else the source tree's data/), including its subdirectories.
fs::path locate(const std::string& name) {
  fs::path p(name);
  if (fs::exists(p) || p.is_absolute()) return p;
  const char* env = std::getenv("NMR_CORPUS");
  fs::path root = env && *env ? fs::path(env) : fs::path(NMR_DEFAULT_CORPUS);
  if (fs::exists(root / p)) return root / p;
  if (fs::is_directory(root))
    for (const auto& e : fs::recursive_directory_iterator(root))
      if (e.is_regular_file() && e.path().filename() == p.filename()) return e.path();
  throw Error(ErrorKind::InvalidArgument, "no such file: " + name);
}

std::string slurp(const std::string& name) {
  std::ifstream in(locate(name), std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string kind_of(const std::string& name) { return fs::path(name).extension().string(); }

Mode mode_of(const Options& o) {
  auto m = parse_mode(o.mode);
  if (!m) throw Error(ErrorKind::Mode, "unknown mode " + o.mode);
  return *m;
}

bool dot(const Options& o) {
  if (o.format != "text" && o.format != "dot") throw Error(ErrorKind::InvalidArgument, "unknown format " + o.format);
  return o.format == "dot";
}

std::string names(const Diagram& g, const std::vector<NodeId>& ns) {
  std::vector<std::string> out;
  for (NodeId n : ns) out.push_back(g.name(n));
  std::sort(out.begin(), out.end());
  std::string s;
  for (std::size_t i = 0; i < out.size(); ++i) s += (i ? " " : "") + out[i];
  return s;
}

int infer(const Options& o, const std::string& file, const std::string& x, const std::string& y) {
  Diagram g = parse_diagram(slurp(file));
  Mode m = mode_of(o);
  if (dot(o)) {
    if (m == Mode::Extensions) throw Error(ErrorKind::Mode, "dot output needs a single valid set");
    std::cout << export_dot(g, valid_paths(g, m));
    return kOk;
  }
  if (!x.empty()) {
    if (y.empty()) throw Error(ErrorKind::InvalidArgument, "infer needs both x and y");
    std::cout << format_verdict(g, g.id(x), g.id(y), conclude(g, x, y, m)) << "\n";
    return kOk;
  }
  for (const auto& pv : all_conclusions(g, m)) std::cout << format_verdict(g, pv.x, pv.y, pv.verdict) << "\n";
  return kOk;
}

int check_object(const std::string& file, const std::string& prop) {
  std::string k = kind_of(file);
  CheckResult r;
  if (k == ".cf") {
    ChoiceFunction f = parse_choice(slurp(file));
    Property p = parse_property(prop);
    r = check(f, p);
    std::cout << prop << (r.holds ? " holds" : " fails") << "\n";
  } else if (k == ".ss") {
    SizeSystem s = parse_size_system(slurp(file));
    r = check_size_rule(s, parse_size_rule(prop));
    std::cout << prop << (r.holds ? " holds" : " fails") << "\n";
  } else if (k == ".ps") {
    PrefDocument d = parse_pref_document(slurp(file));
    const auto& s = d.structure;
    std::vector<Set> all;
    for (Set x = 0; x <= full_set(static_cast<int>(s.universe.size())); ++x) all.push_back(x);
    if (prop == "transitive") r = is_transitive(s);
    else if (prop == "irreflexive") r = is_irreflexive(s);
    else if (prop == "smooth") r = is_smooth(s, all);
    else if (prop == "ranked") r = is_ranked(s);
    else if (prop == "A_ranked") {
      if (!d.blocks) throw Error(ErrorKind::InvalidArgument, "structure has no blocks line");
      r = is_A_ranked(s, *d.blocks);
    } else throw Error(ErrorKind::InvalidArgument, "unknown structure property " + prop);
    std::cout << prop << (r.holds ? " holds" : " fails") << "\n";
  } else if (k == ".gs") {
    GenStructure s = parse_gen(slurp(file));
    std::vector<Set> all;
    for (Set x = 1; x <= full_set(static_cast<int>(s.universe.size())); ++x) all.push_back(x);
    if (prop == "totally_smooth") r = totally_smooth(s, all);
    else if (prop == "essentially_smooth") r = essentially_smooth(s, all);
    else throw Error(ErrorKind::InvalidArgument, "unknown structure property " + prop);
    std::cout << prop << (r.holds ? " holds" : " fails") << "\n";
  } else {
    throw Error(ErrorKind::InvalidArgument, "check expects a .cf, .ss, .ps or .gs file");
  }
  if (!r.holds) std::cout << "witness: " << r.text << "\n";
  return r.holds ? kOk : kViolation;
}

std::vector<std::vector<std::string>> parse_blocks(const std::string& spec) {
  std::vector<std::vector<std::string>> out(1);
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.back().push_back(cur);
    cur.clear();
  };
  for (char c : spec) {
    if (c == ';' || c == '|') {
      flush();
      out.emplace_back();
    } else if (c == ',' || c == ' ') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

int represent(const Options& o, const std::string& file, const std::string& kind, const std::string& blocks,
              bool smooth) {
  bool as_dot = dot(o);
  try {
    if (kind == "attacking2") {
      GenStructure s = represent_attacking_level2(parse_attack_pair(slurp(file)));
      std::cout << (as_dot ? export_dot(s) : serialize_gen(s));
      return kOk;
    }
    ChoiceFunction f = parse_choice(slurp(file));
    if (kind == "level3") {
      GenStructure s = represent_level3_smooth(f);
      std::cout << (as_dot ? export_dot(s) : serialize_gen(s));
      return kOk;
    }
    PrefStructure s;
    std::optional<RankedPartition> part;
    if (kind == "general") s = represent_general(f);
    else if (kind == "transitive") s = represent_transitive(f);
    else if (kind == "smooth") s = represent_smooth(f);
    else if (kind == "smooth_transitive") s = represent_smooth_transitive(f);
    else if (kind == "ranked") s = represent_ranked(f);
    else if (kind == "A_ranked") {
      if (blocks.empty()) throw Error(ErrorKind::InvalidArgument, "A_ranked needs --blocks");
      part = make_partition(f, parse_blocks(blocks));
      s = represent_A_ranked(f, *part, smooth);
    } else {
      throw Error(ErrorKind::InvalidArgument, "unknown kind " + kind);
    }
    const RankedPartition* p = part ? &*part : nullptr;
    std::cout << (as_dot ? export_dot(s, p) : serialize_pref(s, p));
    return kOk;
  } catch (const PreconditionFailed& e) {
    std::cout << "refused: " << e.property() << " fails\nwitness: " << e.witness() << "\n";
    return kViolation;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DomainClosure && e.kind() != ErrorKind::CycleInQualityRelation) throw;
    std::cout << "refused: " << error_kind_name(e.kind()) << "\nwitness: " << e.what() << "\n";
    return kViolation;
  }
}

int verify_cmd(const std::string& structure, const std::string& function) {
  std::string k = kind_of(structure);
  CheckResult r;
  if (k == ".gs") {
    GenStructure s = parse_gen(slurp(structure));
    if (kind_of(function) == ".ap") r = verify_attacking(s, parse_attack_pair(slurp(function)));
    else r = verify_higher(s, parse_choice(slurp(function)));
  } else {
    r = verify(parse_pref(slurp(structure)), parse_choice(slurp(function)));
  }
  std::cout << (r.holds ? "verified" : "mismatch") << "\n";
  if (!r.holds) std::cout << "witness: " << r.text << "\n";
  return r.holds ? kOk : kViolation;
}

int reactive_cmd(const Options& o, const std::string& file, const std::string& origin, bool paths) {
  Diagram g = parse_diagram(slurp(file));
  ReactiveDiagram r = compile(g, g.id(origin));
  if (dot(o)) {
    std::cout << export_dot(r);
    return kOk;
  }
  std::cout << serialize_reactive(r);
  if (paths)
    for (const Path& p : traverse(r)) std::cout << "# path " << g.path_label(p) << "\n";
  return kOk;
}

int horizon_cmd(const std::string& file, const std::vector<std::string>& seeds) {
  BlockNet n = parse_diagram(slurp(file));
  Horizon h = horizon(n, seeds);
  std::cout << names(n, h.visible) << "\n";
  return kOk;
}

int simulate_cmd(const std::string& file, int steps) {
  GateCircuit c = parse_circuit(slurp(file));
  std::cout << format_table(simulate_circuit(c, steps));
  return kOk;
}

int export_cmd(const std::string& file) {
  std::string k = kind_of(file);
  std::string text = slurp(file);
  if (k == ".net") std::cout << export_dot(parse_diagram(text));
  else if (k == ".rnet") std::cout << export_dot(parse_reactive(text));
  else if (k == ".ps") {
    PrefDocument d = parse_pref_document(text);
    std::cout << export_dot(d.structure, d.blocks ? &*d.blocks : nullptr);
  } else if (k == ".gs") std::cout << export_dot(parse_gen(text));
  else throw Error(ErrorKind::InvalidArgument, "export-dot expects a .net, .rnet, .ps or .gs file");
  return kOk;
}

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',' || c == '+' || c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

bool choice_token(const std::string& t) { return t.starts_with("mu") || t == "HU" || t == "HUu"; }

int search_cmd(const Options& o, const std::string& hyps, const std::string& concl, const std::string& closure) {
  std::cout << "# seed " << o.seed << ", bound " << o.bound << "\n";
  auto hs = split_tokens(hyps == "none" ? "" : hyps);
  if (choice_token(concl)) {
    SearchConfig cfg;
    for (const auto& h : hs) cfg.hypotheses.push_back(parse_property(h));
    cfg.conclusions.push_back(parse_property(concl));
    cfg.closure = parse_closure(closure);
    cfg.bound = o.bound;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    SearchReport r = search_counterexample(cfg);
    for (const auto& s : r.strategy) std::cout << "# " << s << "\n";
    if (!r.found) {
      std::cout << "no counterexample up to |U| = " << o.bound << "\n";
      return kOk;
    }
    std::cout << "counterexample to " << property_token(r.violated) << " at |U| = " << r.universe << "\n"
              << serialize_choice(*r.function) << "witness: " << r.failure.text << "\n";
    return kViolation;
  }
  SizeSearchConfig cfg;
  for (const auto& h : hs) cfg.hypotheses.push_back(parse_size_rule(h));
  cfg.conclusion = parse_size_rule(concl);
  cfg.bound = o.bound;
  cfg.seed = o.seed;
  SizeSearchReport r = search_size_counterexample(cfg);
  for (const auto& s : r.strategy) std::cout << "# " << s << "\n";
  if (!r.found) {
    std::cout << "no counterexample up to |U| = " << o.bound << "\n";
    return kOk;
  }
  std::cout << "counterexample to " << concl << " at |U| = " << r.universe << "\n"
            << serialize_size_system(*r.system) << "witness: " << r.failure.text << "\n";
  return kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inheritance nets, choice functions and preferential structures"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--mode", o.mode, "split | onpath | total | extensions")->capture_default_str();
  app.add_option("--seed", o.seed, "seed for randomized commands")->capture_default_str();
  app.add_option("--bound", o.bound, "largest universe for searches")->capture_default_str();
  app.add_option("--format", o.format, "text | dot")->capture_default_str();
  app.add_option("--threads", o.threads, "worker threads for searches")->capture_default_str();
  app.fallthrough();

  std::string file, second, x, y, kind = "general", blocks, closure = "none";
  std::vector<std::string> seeds;
  bool smooth = false, paths = false;
  int steps = 9;
  int status = kOk;

  auto* infer_cmd = app.add_subcommand("infer", "verdicts of a diagram");
  infer_cmd->add_option("diagram", file)->required();
  infer_cmd->add_option("x", x);
  infer_cmd->add_option("y", y);
  infer_cmd->callback([&] { status = infer(o, file, x, y); });

  auto* check_cmd = app.add_subcommand("check", "check a property of a function, size system or structure");
  check_cmd->add_option("object", file)->required();
  check_cmd->add_option("property", second)->required();
  check_cmd->callback([&] { status = check_object(file, second); });

  auto* rep = app.add_subcommand("represent", "build a structure representing a choice function");
  rep->add_option("function", file)->required();
  rep->add_option("--kind", kind, "general | transitive | smooth | smooth_transitive | ranked | A_ranked | level3 | attacking2")
      ->capture_default_str();
  rep->add_option("--blocks", blocks, "A_ranked blocks, best first, e.g. \"a,b;c\"");
  rep->add_flag("--smooth", smooth, "smooth A_ranked variant");
  rep->callback([&] { status = represent(o, file, kind, blocks, smooth); });

  auto* ver = app.add_subcommand("verify", "compare a structure against a function");
  ver->add_option("structure", file)->required();
  ver->add_option("function", second)->required();
  ver->callback([&] { status = verify_cmd(file, second); });

  auto* rea = app.add_subcommand("reactive", "compile a diagram into a reactive diagram");
  rea->add_option("diagram", file)->required();
  rea->add_option("origin", x)->required();
  rea->add_flag("--paths", paths, "list the traversable paths");
  rea->callback([&] { status = reactive_cmd(o, file, x, paths); });

  auto* hor = app.add_subcommand("horizon", "visible set of a blocking net");
  hor->add_option("net", file)->required();
  hor->add_option("seeds", seeds)->required();
  hor->callback([&] { status = horizon_cmd(file, seeds); });

  auto* sim = app.add_subcommand("simulate", "transition table of a gate circuit");
  sim->add_option("circuit", file)->required();
  sim->add_option("--steps", steps)->capture_default_str();
  sim->callback([&] { status = simulate_cmd(file, steps); });

  auto* exp = app.add_subcommand("export-dot", "render a diagram or structure as DOT");
  exp->add_option("object", file)->required();
  exp->callback([&] { status = export_cmd(file); });

  auto* srch = app.add_subcommand("search", "look for a counterexample to hypotheses => conclusion");
  srch->add_option("hypotheses", second, "comma separated tokens, or none")->required();
  srch->add_option("conclusion", x)->required();
  srch->add_option("--closure", closure, "domain closure, e.g. cap,cup or none")->capture_default_str();
  srch->callback([&] { status = search_cmd(o, second, x, closure); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  } catch (const ParseError& e) {
    std::cerr << "parse error, " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << error_kind_name(e.kind()) << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return status;
}
