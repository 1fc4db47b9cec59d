#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace nmr {

// Finite sets over a universe of at most 32 indexed elements.
using Set = std::uint32_t;

inline constexpr int kMaxUniverse = 32;

constexpr Set bit(int i) { return Set{1} << i; }
constexpr bool has(Set s, int i) { return (s >> i) & 1u; }
constexpr bool subset(Set a, Set b) { return (a & ~b) == 0; }
constexpr int card(Set s) { return std::popcount(s); }
constexpr Set full_set(int n) { return n >= 32 ? ~Set{0} : (bit(n) - 1); }

std::vector<int> members(Set s);

// Lexicographic order over sorted element lists ({} < {0} < {0,1} < {0,2} < {1}).
bool lex_less(Set a, Set b);

struct LexLess {
  bool operator()(Set a, Set b) const { return lex_less(a, b); }
};

// Every subset of `s`, in lexicographic order.
std::vector<Set> subsets_lex(Set s);

std::string format_set(Set s, const std::vector<std::string>& names);

}  // namespace nmr
