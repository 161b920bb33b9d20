#include <benchmark/benchmark.h>

#include "csbm/sampler.hpp"
#include "csbm/synthgen.hpp"

namespace {

using namespace csbm;

void BM_GibbsSweepBinary(benchmark::State& state) {
  GenSpec gen;
  gen.n = static_cast<int>(state.range(0));
  gen.k = 3;
  gen.mechanism = GenSpec::Mechanism::bernoulli;
  gen.p_in = 0.15;
  gen.p_out = 0.02;
  const Generated g = generate(gen);
  Family f;
  f.kind = FamilyKind::beta_bernoulli;
  const FamilySpec spec{f, f, false};
  const PartitionPrior prior = PartitionPrior::dm(1.0, 3);
  Rng rng(1);
  SamplerState chain(g.data, spec, prior, Partition::random_init(gen.n, 3, rng), 1);
  for (auto _ : state) {
    chain.gibbs_sweep();
  }
  state.SetItemsProcessed(state.iterations() * gen.n);
}
BENCHMARK(BM_GibbsSweepBinary)->Arg(150)->Arg(600);

void BM_GibbsSweepCounts(benchmark::State& state) {
  GenSpec gen;
  gen.n = 150;
  gen.k = 3;
  gen.mechanism = GenSpec::Mechanism::poisson;
  gen.lambda_in = 1.5;
  gen.lambda_out = 0.15;
  const Generated g = generate(gen);
  Family f;
  f.kind = FamilyKind::gamma_poisson;
  const FamilySpec spec{f, f, false};
  const PartitionPrior prior = PartitionPrior::dm(1.0, 3);
  Rng rng(1);
  SamplerState chain(g.data, spec, prior, Partition::random_init(150, 3, rng), 1);
  for (auto _ : state) {
    chain.gibbs_sweep();
  }
  state.SetItemsProcessed(state.iterations() * 150);
}
BENCHMARK(BM_GibbsSweepCounts);

}  // namespace

BENCHMARK_MAIN();
