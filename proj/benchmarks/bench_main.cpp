#include <benchmark/benchmark.h>

#include "ffgrowth/field.hpp"
#include "ffgrowth/fset.hpp"
#include "ffgrowth/harness.hpp"
#include "ffgrowth/heis.hpp"
#include "ffgrowth/matgrp.hpp"
#include "ffgrowth/setalg.hpp"

namespace {

using namespace ffgrowth;

FSet bench_set(const FieldCtx& ctx, u64 size, u64 seed) {
    return generate_set(Family::uniform_random, size, seed, ctx, true);
}

void BM_field_mul_prime(benchmark::State& state) {
    FieldCtx ctx = FieldCtx::make_prime(1048573);
    u64 a = 123456, b = 654321;
    for (auto _ : state) {
        a = ctx.mul(a, b);
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(BM_field_mul_prime);

void BM_field_mul_ext(benchmark::State& state) {
    FieldCtx ctx = FieldCtx::make(3, 4);
    u64 a = 47, b = 66;
    for (auto _ : state) {
        a = ctx.mul(a, b);
        if (a == 0) a = 47;
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(BM_field_mul_ext);

void BM_sumset(benchmark::State& state) {
    FieldCtx ctx = FieldCtx::make_prime(1009);
    FSet A = bench_set(ctx, state.range(0), 7);
    for (auto _ : state) {
        FSet S = sumset(A, A);
        benchmark::DoNotOptimize(S.size());
    }
}
BENCHMARK(BM_sumset)->Arg(32)->Arg(128);

void BM_bilinear_energy_Q(benchmark::State& state) {
    FieldCtx ctx = FieldCtx::make_prime(101);
    FSet A = bench_set(ctx, state.range(0), 11);
    for (auto _ : state) {
        EnergyReport r = bilinear_energy_Q(A, A, A, A);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_bilinear_energy_Q)->Arg(6)->Arg(12);

void BM_sl2_nu_statistics(benchmark::State& state) {
    FieldCtx ctx = FieldCtx::make_prime(401);
    FSet A = bench_set(ctx, state.range(0), 13);
    for (auto _ : state) {
        NuStats nu = nu_statistics(A);
        benchmark::DoNotOptimize(nu.T);
    }
}
BENCHMARK(BM_sl2_nu_statistics)->Arg(6)->Arg(10);

void BM_cube_product_size_cells(benchmark::State& state) {
    FieldCtx ctx = FieldCtx::make_prime(101);
    FSet A = bench_set(ctx, state.range(0), 17);
    FSet zero(ctx, {0});
    HeisCube K = make_cube(A, A, zero, 2);
    for (auto _ : state) {
        u128 s = cube_product_size(K, K);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_cube_product_size_cells)->Arg(4)->Arg(8);

void BM_cube_product_set_literal(benchmark::State& state) {
    FieldCtx ctx = FieldCtx::make_prime(101);
    FSet A = bench_set(ctx, state.range(0), 17);
    FSet zero(ctx, {0});
    HeisCube K = make_cube(A, A, zero, 2);
    for (auto _ : state) {
        HeisSet S = cube_product_set(K, K);
        benchmark::DoNotOptimize(S.size());
    }
}
BENCHMARK(BM_cube_product_set_literal)->Arg(4);

void BM_collision_fiber(benchmark::State& state) {
    FieldCtx ctx = FieldCtx::make_prime(101);
    FSet A = bench_set(ctx, state.range(0), 19);
    for (auto _ : state) {
        CollisionReport r = collision_count_fiber(A);
        benchmark::DoNotOptimize(r.N);
    }
}
BENCHMARK(BM_collision_fiber)->Arg(4)->Arg(5);

} // namespace

BENCHMARK_MAIN();
