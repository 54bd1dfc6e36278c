#include "fixtures.hpp"

#include <benchmark/benchmark.h>

using namespace mvi;

namespace {

// Quaternary variables, one random function per size.
struct Workload {
  ContextPtr ctx;
  MviExpression expr;
  PolarityAssignment pa;
};

Workload workload(unsigned vars) {
  std::vector<MviVariable> vs;
  for (unsigned i = 0; i < vars; ++i)
    vs.push_back({"X" + std::to_string(i + 1), 4, {"x" + std::to_string(i) + "a", "x" + std::to_string(i) + "b"}});
  auto ctx = make_context(vs);
  fx::Gen g(vars);
  auto e = g.expression(ctx, 12);
  return {ctx, e, g.polarity(*ctx, true)};
}

void BM_ProductsMatching(benchmark::State& st) {
  const auto w = workload(static_cast<unsigned>(st.range(0)));
  const auto terms = output_terms({w.expr});
  for (auto _ : st) benchmark::DoNotOptimize(products_matching(terms, w.pa, 1));
}
BENCHMARK(BM_ProductsMatching)->DenseRange(2, 8, 2);

void BM_Butterfly(benchmark::State& st) {
  const auto w = workload(static_cast<unsigned>(st.range(0)));
  const auto mv = minterm_vector({w.expr});
  for (auto _ : st) benchmark::DoNotOptimize(butterfly_spectrum(mv, w.pa));
  st.SetComplexityN(std::int64_t{1} << (2 * st.range(0)));
}
BENCHMARK(BM_Butterfly)->DenseRange(2, 8, 2)->Complexity();

void BM_SynthesizeFprm(benchmark::State& st) {
  const auto a = fx::adder();
  const auto sp = fx::spectrum_of(a, fx::adder_p());
  for (auto _ : st) benchmark::DoNotOptimize(synthesize_fprm(sp, fx::ctx_adder(), {"fc", "f0", "f1"}));
}
BENCHMARK(BM_SynthesizeFprm);

void BM_Equivalence(benchmark::State& st) {
  const auto w = workload(static_cast<unsigned>(st.range(0)));
  const auto c = fx::fprm_circuit({w.expr}, w.pa);
  const auto tt = truth_table(w.expr);
  for (auto _ : st) benchmark::DoNotOptimize(equivalence(c, tt));
}
BENCHMARK(BM_Equivalence)->DenseRange(2, 6, 2);

void BM_Factorize(benchmark::State& st) {
  const auto e = spectrum_to_expression(fx::spectrum_of({fx::f2()}, fx::p12()), 0, fx::ctx12());
  for (auto _ : st) benchmark::DoNotOptimize(factorize_grm(e));
}
BENCHMARK(BM_Factorize);

void BM_SearchAdder(benchmark::State& st) {
  const MviFunction f{fx::ctx_adder(), fx::adder()};
  SearchConfig cfg;
  cfg.top = 1;
  cfg.jobs = static_cast<unsigned>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(search_best(f, cfg));
}
BENCHMARK(BM_SearchAdder)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
