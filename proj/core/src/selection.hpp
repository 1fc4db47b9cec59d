#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nmr/choicefn.hpp"
#include "nmr/error.hpp"

namespace nmr::detail {

inline void require(const ChoiceFunction& f, const Property& p) {
  CheckResult r = check(f, p);
  if (!r.holds) throw PreconditionFailed(property_token(p), r.text);
}

inline void require(const ChoiceFunction& f, std::string_view token) { require(f, parse_property(token)); }

inline void ensure(const CheckResult& r, const char* what) {
  if (!r.holds) throw std::logic_error(std::string("construction produced a structure that is not ") + what + ": " + r.text);
}

// Every selection function of Π{sets[i]}, as element vectors in canonical order.
inline std::vector<std::vector<int>> selections(const std::vector<Set>& sets) {
  std::vector<std::vector<int>> out{{}};
  for (Set s : sets) {
    std::vector<std::vector<int>> next;
    for (const auto& partial : out)
      for (int e : members(s)) {
        next.push_back(partial);
        next.back().push_back(e);
      }
    out = std::move(next);
  }
  return out;
}

// Possible ranges of the selections of Π{sets[i]}.
inline std::set<Set> ranges(const std::vector<Set>& sets) {
  std::set<Set> out{0};
  for (Set s : sets) {
    std::set<Set> next;
    for (Set r : out)
      for (int e : members(s)) next.insert(r | bit(e));
    out = std::move(next);
  }
  return out;
}

inline std::string selection_token(const ChoiceFunction& f, const char* tag, const std::vector<Set>& ys,
                                   const std::vector<int>& sel) {
  std::string t = std::string(tag) + "[";
  for (std::size_t i = 0; i < ys.size(); ++i) t += (i ? ";" : "") + f.fmt(ys[i]) + "=" + f.universe[sel[i]];
  return t + "]";
}

inline Set range_of(const std::vector<int>& sel) {
  Set r = 0;
  for (int e : sel) r |= bit(e);
  return r;
}

}  // namespace nmr::detail
