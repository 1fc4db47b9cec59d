#include "nmr/formats.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "nmr/error.hpp"

namespace nmr {

namespace {

bool space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Cursor over one input line.
class Line {
 public:
  Line(std::string_view s, int no) : s_(s), no_(no) {}

  void skip() {
    while (pos_ < s_.size() && space(s_[pos_])) ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= s_.size();
  }
  bool comment() {
    skip();
    return pos_ < s_.size() && s_[pos_] == '#';
  }
  bool peek(std::string_view lit) {
    skip();
    return s_.substr(pos_).starts_with(lit);
  }
  bool accept(std::string_view lit) {
    if (!peek(lit)) return false;
    pos_ += lit.size();
    return true;
  }
  void expect(std::string_view lit) {
    if (!accept(lit)) fail("expected '" + std::string(lit) + "'");
  }
  void end() {
    if (!done()) fail("unexpected trailing text");
  }

  // whitespace-delimited token
  std::string word() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() && !space(s_[pos_])) ++pos_;
    if (b == pos_) fail("expected a token");
    return std::string(s_.substr(b, pos_ - b));
  }

  // node / point name: stops at punctuation and at arrow tokens
  std::string name() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (space(c) || std::string_view("(){},=:#&|@;").find(c) != std::string_view::npos) break;
      std::string_view rest = s_.substr(pos_);
      if (rest.starts_with("->") || rest.starts_with("!>") || rest.starts_with("~>") || rest.starts_with(":="))
        break;
      if (c == '!' && pos_ == b) break;
      ++pos_;
    }
    if (b == pos_) fail("expected a name");
    return std::string(s_.substr(b, pos_ - b));
  }

  std::vector<std::string> set_literal() {
    expect("{");
    std::vector<std::string> out;
    if (accept("}")) return out;
    for (;;) {
      out.push_back(name());
      if (accept("}")) return out;
      expect(",");
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(no_, static_cast<int>(pos_) + 1, msg);
  }
  int number() const { return no_; }

 private:
  std::string_view s_;
  int no_;
  std::size_t pos_ = 0;
};

// Non-blank, non-comment lines.
std::vector<Line> lines(std::string_view text) {
  std::vector<Line> out;
  int no = 0;
  while (!text.empty() || no == 0) {
    std::size_t nl = text.find('\n');
    std::string_view l = text.substr(0, nl);
    ++no;
    Line line(l, no);
    if (!line.done() && !line.comment()) out.emplace_back(l, no);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

std::string join(const std::vector<std::string>& xs, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

// Keeps the first mention of each name.
void mention(std::vector<std::string>& names, std::set<std::string>& seen, const std::string& n) {
  if (seen.insert(n).second) names.push_back(n);
}

bool diagram_line(Line& l, RawDiagram& raw, std::set<std::string>& seen) {
  if (l.accept("node ")) {
    mention(raw.nodes, seen, l.name());
    l.end();
    return true;
  }
  if (l.peek("(") || l.peek("origin ")) return false;
  std::string a = l.name();
  Polarity p;
  if (l.accept("->")) p = Polarity::Positive;
  else if (l.accept("!>")) p = Polarity::Negative;
  else l.fail("expected '->' or '!>'");
  std::string b = l.name();
  if (!l.done() && !l.comment()) l.fail("unexpected trailing text");
  mention(raw.nodes, seen, a);
  mention(raw.nodes, seen, b);
  raw.arrows.push_back({a, b, p});
  return true;
}

std::vector<std::string> universe_line(Line& l) {
  l.expect("universe");
  l.expect(":");
  std::vector<std::string> u;
  while (!l.done()) u.push_back(l.name());
  return u;
}

int element_of(const std::vector<std::string>& u, const std::string& n, Line& l) {
  auto it = std::find(u.begin(), u.end(), n);
  if (it == u.end()) l.fail("unknown element '" + n + "'");
  return static_cast<int>(it - u.begin());
}

Set set_of(const std::vector<std::string>& u, Line& l) {
  Set s = 0;
  for (const auto& n : l.set_literal()) s |= bit(element_of(u, n, l));
  return s;
}

std::vector<Line> with_universe(std::string_view text, std::vector<std::string>& u) {
  auto ls = lines(text);
  if (ls.empty()) throw ParseError(1, 1, "expected 'universe:'");
  u = universe_line(ls[0]);
  if (u.size() > static_cast<std::size_t>(kMaxChoiceUniverse))
    ls[0].fail("at most " + std::to_string(kMaxChoiceUniverse) + " elements");
  ls.erase(ls.begin());
  return ls;
}

std::string sign_char(Polarity p) { return p == Polarity::Positive ? "->" : "!>"; }

// Expression parser over one line; precedence ! > & > |.
struct ExprParser {
  Line& l;
  Expr disj() {
    Expr e = conj();
    while (l.accept("|")) e = Expr::disj(std::move(e), conj());
    return e;
  }
  Expr conj() {
    Expr e = unary();
    while (l.accept("&")) e = Expr::conj(std::move(e), unary());
    return e;
  }
  Expr unary() {
    if (l.accept("!")) return Expr::negate(unary());
    if (l.accept("(")) {
      Expr e = disj();
      l.expect(")");
      return e;
    }
    std::string n = l.name();
    if (n == "T" || n == "F") return Expr::constant(n == "T");
    return Expr::variable(n);
  }
};

bool truth(Line& l) {
  std::string v = l.name();
  if (v != "T" && v != "F") l.fail("expected T or F");
  return v == "T";
}

}  // namespace

RawDiagram parse_raw_diagram(std::string_view text) {
  RawDiagram raw;
  std::set<std::string> seen;
  for (Line& l : lines(text))
    if (!diagram_line(l, raw, seen)) l.fail("expected a node or arrow line");
  return raw;
}

Diagram parse_diagram(std::string_view text) { return validate_diagram(parse_raw_diagram(text)); }

std::string serialize_diagram(const Diagram& g) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  for (const Arrow& a : g.arrows()) {
    mention(order, seen, g.name(a.source));
    mention(order, seen, g.name(a.target));
  }
  std::string out;
  if (order != g.nodes())
    for (const auto& n : g.nodes()) out += "node " + n + "\n";
  for (const Arrow& a : g.arrows())
    out += g.name(a.source) + " " + sign_char(a.polarity) + " " + g.name(a.target) + "\n";
  return out;
}

ReactiveDiagram parse_reactive(std::string_view text) {
  RawDiagram raw;
  std::set<std::string> seen;
  struct Pending {
    RawArrow a, b;
    Line line;
  };
  std::vector<Pending> doubles;
  std::optional<std::pair<std::string, Line>> origin;
  auto arrow = [](Line& l) {
    l.expect("(");
    RawArrow a;
    a.source = l.name();
    if (l.accept("->")) a.polarity = Polarity::Positive;
    else if (l.accept("!>")) a.polarity = Polarity::Negative;
    else l.fail("expected '->' or '!>'");
    a.target = l.name();
    l.expect(")");
    return a;
  };
  for (Line& l : lines(text)) {
    if (diagram_line(l, raw, seen)) continue;
    if (l.accept("origin ")) {
      if (origin) l.fail("second origin line");
      origin.emplace(l.name(), l);
      l.end();
      continue;
    }
    RawArrow a = arrow(l);
    l.expect("~>");
    RawArrow b = arrow(l);
    l.end();
    doubles.push_back({a, b, l});
  }
  ReactiveDiagram r;
  r.base = validate_diagram(raw);
  if (!origin) throw ParseError(1, 1, "missing 'origin' line");
  auto o = r.base.find(origin->first);
  if (!o) origin->second.fail("unknown origin " + origin->first);
  r.origin = *o;
  auto index = [&](const RawArrow& a, Line& l) {
    auto s = r.base.find(a.source), t = r.base.find(a.target);
    std::optional<int> i;
    if (s && t) i = r.base.find_arrow(*s, *t, a.polarity);
    if (!i) l.fail("no arrow " + a.source + " " + sign_char(a.polarity) + " " + a.target);
    return *i;
  };
  std::set<DoubleArrow> ds;
  for (auto& d : doubles) ds.insert({index(d.a, d.line), index(d.b, d.line)});
  r.doubles.assign(ds.begin(), ds.end());
  return r;
}

std::string serialize_reactive(const ReactiveDiagram& r) {
  std::string out = serialize_diagram(r.base);
  out += "origin " + r.base.name(r.origin) + "\n";
  auto arrow = [&](int i) {
    const Arrow& a = r.base.arrows()[i];
    return "(" + r.base.name(a.source) + sign_char(a.polarity) + r.base.name(a.target) + ")";
  };
  for (const auto& d : r.doubles) out += arrow(d.trigger) + " ~> " + arrow(d.blocked) + "\n";
  return out;
}

Expr parse_expr(std::string_view text) {
  Line l(text, 1);
  Expr e = ExprParser{l}.disj();
  l.end();
  return e;
}

GateCircuit parse_circuit(std::string_view text) {
  GateCircuit c;
  for (Line& l : lines(text)) {
    try {
      if (l.accept("points ")) {
        while (!l.done()) c.declare(l.name());
      } else if (l.accept("input ")) {
        std::string p = l.name();
        l.expect("=");
        c.add_input(p, truth(l));
        l.end();
      } else if (l.accept("init ")) {
        std::string p = l.name();
        l.expect("=");
        c.set_init(p, truth(l));
        l.end();
      } else {
        Gate g;
        g.point = l.name();
        l.expect(":=");
        g.expr = ExprParser{l}.disj();
        if (l.accept("@")) {
          std::string d = l.name();
          if (d.empty() || !std::all_of(d.begin(), d.end(), [](unsigned char ch) { return std::isdigit(ch); }))
            l.fail("delay must be a positive integer");
          g.delay = std::stoi(d);
        }
        l.end();
        c.add_gate(std::move(g));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      l.fail(e.what());
    }
  }
  return c;
}

std::string serialize_circuit(const GateCircuit& c) {
  std::string out = "points " + join(c.points) + "\n";
  for (const auto& p : c.points)
    if (auto it = c.inputs.find(p); it != c.inputs.end()) out += "input " + p + " = " + (it->second ? "T" : "F") + "\n";
  for (const auto& p : c.points)
    if (auto it = c.init.find(p); it != c.init.end()) out += "init " + p + " = " + (it->second ? "T" : "F") + "\n";
  for (const Gate& g : c.gates) out += g.point + " := " + format_expr(g.expr) + " @" + std::to_string(g.delay) + "\n";
  return out;
}

ChoiceFunction parse_choice(std::string_view text) {
  std::vector<std::string> u;
  std::vector<std::pair<Set, Set>> entries;
  for (Line& l : with_universe(text, u)) {
    l.expect("mu ");
    Set x = set_of(u, l);
    l.expect("=");
    Set m = set_of(u, l);
    l.end();
    entries.emplace_back(x, m);
  }
  return ChoiceFunction::make(u, entries);
}

std::string serialize_choice(const ChoiceFunction& f) {
  std::string out = "universe: " + join(f.universe) + "\n";
  for (std::size_t i = 0; i < f.domain.size(); ++i) out += "mu " + f.fmt(f.domain[i]) + " = " + f.fmt(f.mu[i]) + "\n";
  return out;
}

SizeSystem parse_size_system(std::string_view text) {
  std::vector<std::string> u;
  std::vector<std::pair<Set, std::vector<Set>>> entries;
  for (Line& l : with_universe(text, u)) {
    l.expect("small ");
    Set x = set_of(u, l);
    l.expect(":");
    std::vector<Set> ideal;
    while (!l.done()) ideal.push_back(set_of(u, l));
    entries.emplace_back(x, std::move(ideal));
  }
  return SizeSystem::make(u, std::move(entries));
}

std::string serialize_size_system(const SizeSystem& s) {
  std::string out = "universe: " + join(s.universe) + "\n";
  for (std::size_t i = 0; i < s.domain.size(); ++i) {
    out += "small " + s.fmt(s.domain[i]) + " :";
    for (Set a : s.ideal[i]) out += " " + s.fmt(a);
    out += "\n";
  }
  return out;
}

namespace {

// "a.index" -> (element, index), splitting at the first dot.
std::pair<int, std::string> copy_label(const std::vector<std::string>& u, Line& l) {
  std::string w = l.word();
  auto dot = w.find('.');
  if (dot == std::string::npos) return {element_of(u, w, l), "0"};
  return {element_of(u, w.substr(0, dot), l), w.substr(dot + 1)};
}

}  // namespace

PrefDocument parse_pref_document(std::string_view text) {
  PrefDocument doc;
  auto& s = doc.structure;
  std::vector<std::pair<std::pair<int, std::string>, std::pair<int, std::string>>> prec;
  for (Line& l : with_universe(text, s.universe)) {
    if (l.accept("copy ")) {
      int e = element_of(s.universe, l.name(), l);
      s.add_copy(e, l.word());
      l.end();
    } else if (l.accept("prec ")) {
      auto a = copy_label(s.universe, l);
      auto b = copy_label(s.universe, l);
      l.end();
      prec.emplace_back(a, b);
    } else if (l.accept("blocks ")) {
      if (doc.blocks) l.fail("second blocks line");
      RankedPartition p;
      Set cur = 0;
      while (!l.done()) {
        if (l.accept("|")) {
          p.blocks.push_back(cur);
          cur = 0;
        } else {
          cur |= bit(element_of(s.universe, l.name(), l));
        }
      }
      p.blocks.push_back(cur);
      doc.blocks = p;
    } else {
      l.fail("expected 'copy', 'prec' or 'blocks'");
    }
  }
  s.finalize();
  for (auto& [a, b] : prec) {
    int i = s.find(a.first, a.second), j = s.find(b.first, b.second);
    if (i < 0 || j < 0)
      throw Error(ErrorKind::UnknownNode, "prec names an undeclared copy " +
                                              s.universe[(i < 0 ? a : b).first] + "." + (i < 0 ? a : b).second);
    s.add_pair(i, j);
  }
  s.finalize();
  return doc;
}

PrefStructure parse_pref(std::string_view text) { return parse_pref_document(text).structure; }

std::string serialize_pref(const PrefStructure& s, const RankedPartition* blocks) {
  std::string out = "universe: " + join(s.universe) + "\n";
  if (blocks) {
    std::vector<std::string> parts;
    for (Set b : blocks->blocks) {
      std::vector<std::string> names;
      for (int e : members(b)) names.push_back(s.universe[e]);
      parts.push_back(join(names));
    }
    out += "blocks " + join(parts, " | ") + "\n";
  }
  for (const auto& n : s.nodes) out += "copy " + s.universe[n.element] + " " + n.index + "\n";
  for (auto [lo, up] : s.rel) out += "prec " + s.label(lo) + " " + s.label(up) + "\n";
  return out;
}

GenStructure parse_gen(std::string_view text) {
  GenStructure s;
  auto ls = with_universe(text, s.universe);
  auto node = [&](int e, const std::string& idx) {
    int i = s.node_index(e, idx);
    return i >= 0 ? i : s.add_node(e, idx);
  };
  struct Pending {
    int arrow;
    std::string target;
    Line line;
  };
  std::vector<Pending> forward;
  for (Line& l : ls) {
    if (l.accept("copy ")) {
      int e = element_of(s.universe, l.name(), l);
      std::string idx = l.word();
      if (s.node_index(e, idx) >= 0) l.fail("duplicate copy");
      s.add_node(e, idx);
      l.end();
      continue;
    }
    l.expect("arrow ");
    std::string id = l.name();
    l.expect(":");
    auto [oe, oi] = copy_label(s.universe, l);
    l.expect("->");
    std::string target = l.word();
    std::string sign;
    if (!l.done()) {
      sign = l.word();
      if (sign != "+" && sign != "-") l.fail("expected '+' or '-'");
    }
    l.end();
    if (s.arrow_index(id) >= 0) l.fail("duplicate arrow id " + id);
    int origin = node(oe, oi);
    int a;
    if (target.starts_with("#")) {
      a = s.add_arrow(id, origin, false, -1);
      forward.push_back({a, target.substr(1), l});
    } else {
      auto dot = target.find('.');
      std::string en = target.substr(0, dot);
      std::string idx = dot == std::string::npos ? "0" : target.substr(dot + 1);
      a = s.add_arrow(id, origin, true, node(element_of(s.universe, en, l), idx));
    }
    s.arrows[a].sign = sign;
  }
  for (auto& p : forward) {
    int t = s.arrow_index(p.target);
    if (t < 0) p.line.fail("unknown arrow #" + p.target);
    s.arrows[p.arrow].target = t;
  }
  s.finalize();
  return s;
}

std::string serialize_gen(const GenStructure& s) {
  std::string out = "universe: " + join(s.universe) + "\n";
  for (const auto& n : s.nodes) out += "copy " + s.universe[n.element] + " " + n.index + "\n";
  for (const auto& a : s.arrows) {
    out += "arrow " + a.id + ": " + s.node_label(a.origin) + " -> ";
    out += a.to_node ? s.node_label(a.target) : "#" + s.arrows[a.target].id;
    if (!a.sign.empty()) out += " " + a.sign;
    out += "\n";
  }
  return out;
}

AttackPair parse_attack_pair(std::string_view text) {
  std::vector<std::string> u;
  std::vector<std::pair<Set, Set>> eta, rho;
  for (Line& l : with_universe(text, u)) {
    bool is_eta = l.accept("eta ");
    if (!is_eta) l.expect("rho ");
    Set x = set_of(u, l);
    l.expect("=");
    Set v = set_of(u, l);
    l.end();
    (is_eta ? eta : rho).emplace_back(x, v);
  }
  return {ChoiceFunction::make(u, eta), ChoiceFunction::make(u, rho)};
}

std::string serialize_attack_pair(const AttackPair& p) {
  std::string out = "universe: " + join(p.eta.universe) + "\n";
  for (std::size_t i = 0; i < p.eta.domain.size(); ++i)
    out += "eta " + p.eta.fmt(p.eta.domain[i]) + " = " + p.eta.fmt(p.eta.mu[i]) + "\n";
  for (std::size_t i = 0; i < p.rho.domain.size(); ++i)
    out += "rho " + p.rho.fmt(p.rho.domain[i]) + " = " + p.rho.fmt(p.rho.mu[i]) + "\n";
  return out;
}

std::string format_verdict(const Diagram& g, NodeId x, NodeId y, Verdict v) {
  return g.name(x) + " => " + g.name(y) + " : " + verdict_char(v);
}

}  // namespace nmr
