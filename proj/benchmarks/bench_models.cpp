#include <benchmark/benchmark.h>

#include "systemt/analysis.hpp"
#include "systemt/brouwer.hpp"
#include "systemt/dialogue.hpp"

using namespace systemt;

namespace {

Term nested() {
  static Term t = parse_term("\\a:Nat->Nat. a (a 2)");
  return t;
}

Term iterate_term() {
  static Term t = parse_term("\\a:Nat->Nat. Rec[Nat] 0 (\\k:Nat. \\r:Nat. a r) (a 0)");
  return t;
}

}  // namespace

static void BM_eval_nested(benchmark::State& state) {
  Term applied = Term::app(nested(), Term::omega());
  Oracle alpha = oracle_seeded(7, 9);
  for (auto _ : state) benchmark::DoNotOptimize(eval_nat(applied, &alpha));
}
BENCHMARK(BM_eval_nested);

static void BM_eval_iterate(benchmark::State& state) {
  Term applied = Term::app(iterate_term(), Term::omega());
  Oracle alpha = oracle_seeded(7, 9);
  for (auto _ : state) benchmark::DoNotOptimize(eval_nat(applied, &alpha));
}
BENCHMARK(BM_eval_iterate);

static void BM_dialogue_play(benchmark::State& state) {
  DialogueTree t = dialogue_of(nested());
  Oracle alpha = oracle_seeded(7, 9);
  for (auto _ : state) benchmark::DoNotOptimize(deval(t, alpha));
}
BENCHMARK(BM_dialogue_play);

static void BM_brouwer_play(benchmark::State& state) {
  BrouwerOp t = brouwer_of(iterate_term());
  Oracle alpha = oracle_seeded(7, 9);
  for (auto _ : state) benchmark::DoNotOptimize(beval(t, alpha));
}
BENCHMARK(BM_brouwer_play);

static void BM_translate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(neighbourhood_term(iterate_term()));
}
BENCHMARK(BM_translate);

static void BM_gamma_query(benchmark::State& state) {
  NbhFn gamma = neighbourhood_term(nested());
  Seq a = prefix_of(oracle_seeded(7, 9), static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gamma.query(a));
}
BENCHMARK(BM_gamma_query)->Arg(0)->Arg(4)->Arg(8);

static void BM_gamma_query_recfun(benchmark::State& state) {
  NbhFn gamma = neighbourhood_term(parse_term(
      "\\a:Nat->Nat. Rec[Nat->Nat] (\\x:Nat. x) (\\k:Nat. \\g:Nat->Nat. \\x:Nat. a (g x)) 3 5"));
  Seq a = prefix_of(oracle_seeded(7, 4), 6);
  for (auto _ : state) benchmark::DoNotOptimize(gamma.query(a));
}
BENCHMARK(BM_gamma_query_recfun);

static void BM_modulus(benchmark::State& state) {
  NbhFn gamma = neighbourhood_term(nested());
  Oracle alpha = oracle_seeded(7, 9);
  for (auto _ : state) benchmark::DoNotOptimize(modulus(gamma, alpha, 10000).modulus);
}
BENCHMARK(BM_modulus);

static void BM_uc_modulus(benchmark::State& state) {
  NbhFn gamma = neighbourhood_term(parse_term("\\a:Nat->Nat. a 3"));
  for (auto _ : state) benchmark::DoNotOptimize(uc_modulus_cantor(gamma, 64));
}
BENCHMARK(BM_uc_modulus);

BENCHMARK_MAIN();
