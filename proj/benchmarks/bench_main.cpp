#include <benchmark/benchmark.h>

#include "rrcf/cf_engine.hpp"
#include "rrcf/classifier.hpp"
#include "rrcf/closed_forms.hpp"
#include "rrcf/cyclotomic.hpp"
#include "rrcf/witness.hpp"

using namespace rrcf;

namespace {

void BM_CycloMul(benchmark::State& state) {
    const long n = state.range(0);
    const CycloElem a = CycloElem::root(n, 1) + CycloElem::integer(n, 3);
    const CycloElem b = CycloElem::root(n, 2) - CycloElem::rational(n, mpq_class(1, 7));
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CycloMul)->Arg(5)->Arg(12)->Arg(60)->Arg(105);

void BM_CycloInv(benchmark::State& state) {
    const long n = state.range(0);
    const CycloElem a = CycloElem::root(n, 1) + CycloElem::integer(n, 3);
    for (auto _ : state) benchmark::DoNotOptimize(a.inv());
}
BENCHMARK(BM_CycloInv)->Arg(5)->Arg(12)->Arg(60);

void BM_ExactAdvance(benchmark::State& state) {
    const auto spec = ka_spec(CycloElem::root(12, 5), CycloElem::root(12, 7));
    const auto seed = initial_state(spec);
    for (auto _ : state) benchmark::DoNotOptimize(advance(seed, spec, state.range(0)));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExactAdvance)->Arg(100)->Arg(1000);

void BM_NumericAdvance(benchmark::State& state) {
    const auto spec = schur_spec_numeric(1, 7, static_cast<mpfr_prec_t>(state.range(1)));
    const auto seed = initial_state(spec);
    for (auto _ : state) benchmark::DoNotOptimize(advance(seed, spec, state.range(0)));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NumericAdvance)->Args({1000, 128})->Args({1000, 512})->Args({10000, 256});

void BM_TransferMatrix(benchmark::State& state) {
    const CycloElem a = CycloElem::root(3, 1);
    for (auto _ : state) benchmark::DoNotOptimize(transfer_matrix(a, state.range(0), 1));
}
BENCHMARK(BM_TransferMatrix)->Arg(7)->Arg(12)->Arg(30);

void BM_Classify(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(classify(RootOfUnity(2, 7), state.range(0)));
}
BENCHMARK(BM_Classify)->Arg(3)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_FieldMembership(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(field_membership(state.range(0), state.range(1)));
}
BENCHMARK(BM_FieldMembership)->Args({3, 7})->Args({10, 24})->Unit(benchmark::kMillisecond);

void BM_Witness(benchmark::State& state) {
    WitnessParams p;
    p.R = RValue::parse("0.3pi");
    for (auto _ : state) benchmark::DoNotOptimize(construct_witness(p));
}
BENCHMARK(BM_Witness)->Unit(benchmark::kMillisecond);

void BM_SchurRootBound(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(schur_root_bound(state.range(0), 1));
}
BENCHMARK(BM_SchurRootBound)->Arg(100)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
