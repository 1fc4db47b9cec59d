#pragma once

#include <map>
#include <string>
#include <vector>

namespace nmr {

struct Expr {
  enum Op { Var, Const, Not, And, Or };
  Op op = Const;
  std::string var;
  bool value = false;
  std::vector<Expr> args;

  static Expr variable(std::string name);
  static Expr constant(bool v);
  static Expr negate(Expr e);
  static Expr conj(Expr a, Expr b);
  static Expr disj(Expr a, Expr b);
};

std::string format_expr(const Expr& e);

struct Gate {
  std::string point;
  Expr expr;
  int delay = 1;
};

// Synchronous boolean circuit.  `points` fixes the column order of tables.
struct GateCircuit {
  std::vector<std::string> points;
  std::map<std::string, bool> inputs;
  std::map<std::string, bool> init;
  std::vector<Gate> gates;

  void declare(const std::string& p);
  void add_input(const std::string& p, bool v);
  void set_init(const std::string& p, bool v);
  void add_gate(Gate g);
};

struct TransitionTable {
  std::vector<std::string> columns;
  std::vector<std::vector<bool>> rows;  // rows[0] is time 1
  bool operator==(const TransitionTable&) const = default;
};

TransitionTable simulate_circuit(const GateCircuit& c, int steps);
std::string format_table(const TransitionTable& t);
std::string row_string(const std::vector<bool>& row);

}  // namespace nmr
