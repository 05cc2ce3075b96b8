#include <benchmark/benchmark.h>

#include "lstar/chain_bench.hpp"
#include "lstar/checker.hpp"
#include "lstar/enrichment.hpp"
#include "lstar/godel.hpp"
#include "lstar/prenex.hpp"
#include "lstar/search.hpp"
#include "lstar/semantics.hpp"
#include "lstar/systems.hpp"

using namespace lstar;

static void BM_EvalNumeral(benchmark::State& state) {
  auto t = semantics::encode_nat(semantics::BigNat("987654321987654321"));
  semantics::Environment env;
  for (auto _ : state) benchmark::DoNotOptimize(semantics::eval_term(t, env));
}
BENCHMARK(BM_EvalNumeral);

static void BM_Root256(benchmark::State& state) {
  semantics::BigNat x = (semantics::BigNat(1) << 256) - 12345;
  for (auto _ : state) benchmark::DoNotOptimize(semantics::g_root(x, 7));
}
BENCHMARK(BM_Root256);

static void BM_DecideProseLocalization(benchmark::State& state) {
  auto f = systems::localized_mult_totality(static_cast<int>(state.range(0)),
                                            systems::LocalizationVariant::Prose);
  for (auto _ : state) benchmark::DoNotOptimize(semantics::decide_delta0(f, 100'000'000));
}
BENCHMARK(BM_DecideProseLocalization)->Arg(2)->Arg(3)->Arg(4);

static void BM_ParsePrintRoundTrip(benchmark::State& state) {
  std::string text = "A x. A y. E z <= x + y. sub(z, x) = y & (x <= y | ~(y = z))";
  for (auto _ : state) {
    auto f = lang::parse_formula(text);
    benchmark::DoNotOptimize(lang::print_formula(f));
  }
}
BENCHMARK(BM_ParsePrintRoundTrip);

static void BM_GodelRoundTrip(benchmark::State& state) {
  auto f = systems::totality_sentence(systems::Totality::Multiplication);
  for (auto _ : state) {
    auto g = godel::godel_number(f);
    benchmark::DoNotOptimize(godel::godel_decode(g));
  }
}
BENCHMARK(BM_GodelRoundTrip);

static void BM_ProveTautology(benchmark::State& state) {
  systems::AxiomBasis empty("empty");
  auto goal = lang::parse_formula("C0 = C0 | ~(C0 = C0)");
  for (auto _ : state) {
    auto r = tableaux::prove(goal, empty, enrichment::EnrichmentLevel::none(), 10'000);
    benchmark::DoNotOptimize(r.found());
  }
}
BENCHMARK(BM_ProveTautology);

static void BM_CheckRelationalAxiomProof(benchmark::State& state) {
  auto basis = systems::relational_arith_basis();
  auto goal = basis.at(0).sentence;
  auto r = tableaux::prove(goal, basis, enrichment::EnrichmentLevel::none(), 10'000);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        tableaux::check_proof(*r.proof, basis, enrichment::EnrichmentLevel::none()));
}
BENCHMARK(BM_CheckRelationalAxiomProof);

static void BM_ChainCutAssembly(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rep = bench::run_chain_bench(n, enrichment::EnrichmentLevel::rank_zero(), 2'000);
    benchmark::DoNotOptimize(rep.rows.back().enriched_size);
  }
}
BENCHMARK(BM_ChainCutAssembly)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
