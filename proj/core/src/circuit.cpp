#include "nmr/circuit.hpp"

#include <algorithm>
#include <set>

#include "nmr/error.hpp"

namespace nmr {

Expr Expr::variable(std::string name) {
  Expr e;
  e.op = Var;
  e.var = std::move(name);
  return e;
}

Expr Expr::constant(bool v) {
  Expr e;
  e.op = Const;
  e.value = v;
  return e;
}

Expr Expr::negate(Expr a) {
  Expr e;
  e.op = Not;
  e.args.push_back(std::move(a));
  return e;
}

Expr Expr::conj(Expr a, Expr b) {
  Expr e;
  e.op = And;
  e.args.push_back(std::move(a));
  e.args.push_back(std::move(b));
  return e;
}

Expr Expr::disj(Expr a, Expr b) {
  Expr e;
  e.op = Or;
  e.args.push_back(std::move(a));
  e.args.push_back(std::move(b));
  return e;
}

namespace {

int precedence(const Expr& e) {
  switch (e.op) {
    case Expr::Or: return 1;
    case Expr::And: return 2;
    case Expr::Not: return 3;
    default: return 4;
  }
}

std::string wrap(const Expr& e, int min_prec) {
  std::string s = format_expr(e);
  return precedence(e) < min_prec ? "(" + s + ")" : s;
}

bool eval(const Expr& e, const std::map<std::string, int>& col, const std::vector<bool>& row) {
  switch (e.op) {
    case Expr::Var: return row[col.at(e.var)];
    case Expr::Const: return e.value;
    case Expr::Not: return !eval(e.args[0], col, row);
    case Expr::And: return eval(e.args[0], col, row) && eval(e.args[1], col, row);
    case Expr::Or: return eval(e.args[0], col, row) || eval(e.args[1], col, row);
  }
  return false;
}

void collect_vars(const Expr& e, std::vector<std::string>& out) {
  if (e.op == Expr::Var) out.push_back(e.var);
  for (const Expr& a : e.args) collect_vars(a, out);
}

}  // namespace

std::string format_expr(const Expr& e) {
  switch (e.op) {
    case Expr::Var: return e.var;
    case Expr::Const: return e.value ? "T" : "F";
    case Expr::Not: return "!" + wrap(e.args[0], 3);
    // left-associative: the right operand needs brackets at equal precedence
    case Expr::And: return wrap(e.args[0], 2) + " & " + wrap(e.args[1], 3);
    case Expr::Or: return wrap(e.args[0], 1) + " | " + wrap(e.args[1], 2);
  }
  return "";
}

void GateCircuit::declare(const std::string& p) {
  if (std::find(points.begin(), points.end(), p) == points.end()) points.push_back(p);
}

void GateCircuit::add_input(const std::string& p, bool v) {
  if (inputs.count(p)) throw Error(ErrorKind::Duplicate, "input " + p);
  for (const Gate& g : gates)
    if (g.point == p) throw Error(ErrorKind::Duplicate, "input " + p + " is driven by a gate");
  declare(p);
  inputs[p] = v;
}

void GateCircuit::set_init(const std::string& p, bool v) {
  if (init.count(p)) throw Error(ErrorKind::Duplicate, "init " + p);
  declare(p);
  init[p] = v;
}

void GateCircuit::add_gate(Gate g) {
  if (g.delay < 1) throw Error(ErrorKind::InvalidArgument, "delay of " + g.point + " must be positive");
  if (inputs.count(g.point)) throw Error(ErrorKind::Duplicate, g.point + " is an input");
  for (const Gate& o : gates)
    if (o.point == g.point) throw Error(ErrorKind::Duplicate, "second gate driving " + g.point);
  declare(g.point);
  gates.push_back(std::move(g));
}

TransitionTable simulate_circuit(const GateCircuit& c, int steps) {
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "steps must be at least 1");
  TransitionTable t;
  t.columns = c.points;
  std::map<std::string, int> col;
  for (const std::string& p : c.points) col[p] = static_cast<int>(col.size());
  std::set<std::string> driven;
  for (const Gate& g : c.gates) driven.insert(g.point);
  for (const Gate& g : c.gates) {
    std::vector<std::string> vars;
    collect_vars(g.expr, vars);
    for (const std::string& v : vars) {
      if (!col.count(v) || (!c.inputs.count(v) && !driven.count(v) && !c.init.count(v)))
        throw Error(ErrorKind::UndrivenPoint, v);
    }
  }
  for (const std::string& p : c.points)
    if (!c.inputs.count(p) && !driven.count(p) && !c.init.count(p))
      throw Error(ErrorKind::UndrivenPoint, p);

  std::vector<bool> first(c.points.size(), false);
  for (const std::string& p : c.points) {
    if (auto it = c.inputs.find(p); it != c.inputs.end()) first[col[p]] = it->second;
    else if (auto jt = c.init.find(p); jt != c.init.end()) first[col[p]] = jt->second;
  }
  t.rows.push_back(first);
  for (int time = 2; time <= steps; ++time) {
    std::vector<bool> row = t.rows.back();
    for (const Gate& g : c.gates) {
      int from = time - g.delay;
      row[col[g.point]] = from >= 1 ? eval(g.expr, col, t.rows[from - 1]) : first[col[g.point]];
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string row_string(const std::vector<bool>& row) {
  std::string s;
  for (bool b : row) s += b ? 'T' : 'F';
  return s;
}

std::string format_table(const TransitionTable& t) {
  std::vector<std::size_t> width;
  std::size_t tw = std::max<std::size_t>(4, std::to_string(t.rows.size()).size());
  std::string out = "time";
  out.append(tw - 4, ' ');
  for (const std::string& c : t.columns) {
    width.push_back(std::max<std::size_t>(c.size(), 1));
    out += " " + c;
  }
  out += "\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::string n = std::to_string(r + 1);
    out += std::string(tw - n.size(), ' ') + n;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      out += std::string(width[i], ' ');
      out += t.rows[r][i] ? 'T' : 'F';
    }
    out += "\n";
  }
  return out;
}

}  // namespace nmr
