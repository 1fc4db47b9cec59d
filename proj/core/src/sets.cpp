#include "nmr/sets.hpp"

#include <algorithm>

namespace nmr {

std::vector<int> members(Set s) {
  std::vector<int> out;
  while (s) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

bool lex_less(Set a, Set b) {
  while (a && b) {
    int x = std::countr_zero(a), y = std::countr_zero(b);
    if (x != y) return x < y;
    a &= a - 1;
    b &= b - 1;
  }
  return !a && b;
}

std::vector<Set> subsets_lex(Set s) {
  std::vector<Set> out;
  Set t = 0;
  do {
    out.push_back(t);
    t = (t - s) & s;
  } while (t);
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

std::string format_set(Set s, const std::vector<std::string>& names) {
  std::string out = "{";
  bool first = true;
  for (int i : members(s)) {
    if (!first) out += ",";
    first = false;
    out += i < static_cast<int>(names.size()) ? names[i] : std::to_string(i);
  }
  return out + "}";
}

}  // namespace nmr
