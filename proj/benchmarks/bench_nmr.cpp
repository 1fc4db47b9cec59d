#include <benchmark/benchmark.h>

#include <random>

#include "nmr/blocking.hpp"
#include "nmr/choicefn.hpp"
#include "nmr/ibrs.hpp"
#include "nmr/inference.hpp"
#include "nmr/prefstruct.hpp"
#include "nmr/reactive.hpp"
#include "nmr/search.hpp"

using namespace nmr;

namespace {

// layered DAG: node i points at a few later nodes, every fifth arrow negative
Diagram layered(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
  std::vector<RawArrow> arrows;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 3; ++k) {
      int j = i + 1 + static_cast<int>(rng() % 4);
      if (j >= n) continue;
      bool dup = false;
      for (const auto& a : arrows) dup |= a.source == names[i] && a.target == names[j];
      if (dup) continue;
      arrows.push_back({names[i], names[j], arrows.size() % 5 == 4 ? Polarity::Negative : Polarity::Positive});
    }
  return diagram_from_arrows(arrows, names);
}

ChoiceFunction ranked_function(int n) {
  std::vector<std::string> u;
  for (int i = 0; i < n; ++i) u.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<std::pair<Set, Set>> e;
  for (Set x = 0; x <= full_set(n); ++x) {
    Set m = 0;
    int best = n;
    for (int i : members(x)) best = std::min(best, i / 2);
    for (int i : members(x))
      if (i / 2 == best) m |= bit(i);
    e.emplace_back(x, m);
  }
  return ChoiceFunction::make(u, e);
}

void BM_ValidPaths(benchmark::State& st) {
  Diagram g = layered(static_cast<int>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(valid_paths(g, Mode::OffPathSplit));
}
BENCHMARK(BM_ValidPaths)->Arg(8)->Arg(12)->Arg(16);

void BM_CompileTraverse(benchmark::State& st) {
  Diagram g = layered(static_cast<int>(st.range(0)), 2);
  for (auto _ : st) benchmark::DoNotOptimize(traverse(compile(g, 0)));
}
BENCHMARK(BM_CompileTraverse)->Arg(8)->Arg(12);

void BM_Horizon(benchmark::State& st) {
  Diagram g = layered(static_cast<int>(st.range(0)), 3);
  std::uint32_t seed = 0;
  for (auto _ : st) benchmark::DoNotOptimize(horizon_mask(g, ++seed & full_set(g.size())));
}
BENCHMARK(BM_Horizon)->Arg(16)->Arg(32);

void BM_CheckCum(benchmark::State& st) {
  ChoiceFunction f = ranked_function(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(check(f, "muCUM"));
}
BENCHMARK(BM_CheckCum)->Arg(3)->Arg(4)->Arg(5);

void BM_RepresentSmooth(benchmark::State& st) {
  ChoiceFunction f = ranked_function(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(represent_smooth(f));
}
BENCHMARK(BM_RepresentSmooth)->Arg(3)->Arg(4);

void BM_RepresentLevel3(benchmark::State& st) {
  ChoiceFunction f = ranked_function(3);
  for (auto _ : st) benchmark::DoNotOptimize(represent_level3_smooth(f));
}
BENCHMARK(BM_RepresentLevel3);

void BM_SearchRow7(benchmark::State& st) {
  SearchConfig c;
  c.hypotheses = {parse_property("muSub"), parse_property("muSubSup")};
  c.conclusions = {parse_property("muCUM")};
  c.bound = 3;
  for (auto _ : st) benchmark::DoNotOptimize(search_counterexample(c));
}
BENCHMARK(BM_SearchRow7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
