#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nmr/blocking.hpp"
#include "nmr/choicefn.hpp"
#include "nmr/circuit.hpp"
#include "nmr/ibrs.hpp"
#include "nmr/inference.hpp"
#include "nmr/netcore.hpp"
#include "nmr/prefstruct.hpp"
#include "nmr/reactive.hpp"
#include "nmr/sizesys.hpp"

namespace nmr {

// Every parser throws ParseError (1-based line/column) on syntax errors;
// semantic checks are left to the owning module's validators.

// `node x`, `a -> b`, `a !> b`, `# comment`
RawDiagram parse_raw_diagram(std::string_view text);
Diagram parse_diagram(std::string_view text);
std::string serialize_diagram(const Diagram& g);

// diagram lines plus `origin x` and `(a->b) ~> (c!>d)`
ReactiveDiagram parse_reactive(std::string_view text);
std::string serialize_reactive(const ReactiveDiagram& r);

// `points P Q ..`, `input P = T`, `init P = F`, `P := expr @delay`
GateCircuit parse_circuit(std::string_view text);
Expr parse_expr(std::string_view text);
std::string serialize_circuit(const GateCircuit& c);

// `universe: a b c` then `mu {a,b} = {a}` per domain member
ChoiceFunction parse_choice(std::string_view text);
std::string serialize_choice(const ChoiceFunction& f);

// `universe: ..` then `small {a,b} : {} {a}` per domain member
SizeSystem parse_size_system(std::string_view text);
std::string serialize_size_system(const SizeSystem& s);

// `universe: ..`, `copy <elem> <index>`, `prec <a.i> <b.j>`, optional
// `blocks a b | c` for the rank layers of 𝒜-ranked structures
struct PrefDocument {
  PrefStructure structure;
  std::optional<RankedPartition> blocks;
};
PrefDocument parse_pref_document(std::string_view text);
PrefStructure parse_pref(std::string_view text);
std::string serialize_pref(const PrefStructure& s, const RankedPartition* blocks = nullptr);

// `universe: ..`, `copy <elem> <index>`, `arrow <id>: <origin> -> <node|#id> [+|-]`.
// A bare element name as a point stands for its copy `0`.
GenStructure parse_gen(std::string_view text);
std::string serialize_gen(const GenStructure& s);

// `universe: ..` then `eta {a,b} = {a,b}` and `rho {a,b} = {a}` lines
AttackPair parse_attack_pair(std::string_view text);
std::string serialize_attack_pair(const AttackPair& p);

std::string format_verdict(const Diagram& g, NodeId x, NodeId y, Verdict v);  // `x => y : +`

std::string export_dot(const Diagram& g);
// valid paths from the set bold, remaining arrows dashed
std::string export_dot(const Diagram& g, const ValidSet& v);
std::string export_dot(const ReactiveDiagram& r);
std::string export_dot(const PrefStructure& s, const RankedPartition* blocks = nullptr);
std::string export_dot(const GenStructure& s);

}  // namespace nmr
