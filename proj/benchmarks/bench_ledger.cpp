#include <benchmark/benchmark.h>

#include "csbm/ledger.hpp"
#include "csbm/rng.hpp"
#include "csbm/synthgen.hpp"

namespace {

using namespace csbm;

FamilySpec bb_spec() {
  Family f;
  f.kind = FamilyKind::beta_bernoulli;
  return {f, f, false};
}

void BM_DetachAttach(benchmark::State& state) {
  GenSpec gen;
  gen.n = static_cast<int>(state.range(0));
  gen.k = 3;
  gen.mechanism = GenSpec::Mechanism::bernoulli;
  gen.p_in = 0.15;
  gen.p_out = 0.02;
  const Generated g = generate(gen);
  const FamilySpec spec = bb_spec();
  Rng rng(1);
  Partition part = Partition::random_init(gen.n, 3, rng);
  BlockLedger ledger(g.data, spec);
  ledger.init(part);
  int i = 0;
  for (auto _ : state) {
    ledger.detach(part, i);
    ledger.attach(part, i, static_cast<int>(rng.uniform_below(3)));
    i = (i + 1) % gen.n;
  }
}
BENCHMARK(BM_DetachAttach)->Arg(150)->Arg(600);

void BM_ScoreMove(benchmark::State& state) {
  GenSpec gen;
  gen.n = 150;
  gen.k = 3;
  gen.mechanism = GenSpec::Mechanism::bernoulli;
  gen.p_in = 0.15;
  gen.p_out = 0.02;
  const Generated g = generate(gen);
  const FamilySpec spec = bb_spec();
  Rng rng(1);
  Partition part = Partition::random_init(gen.n, 3, rng);
  BlockLedger ledger(g.data, spec);
  ledger.init(part);
  ledger.detach(part, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ledger.score_move(part, 7, 1));
  }
}
BENCHMARK(BM_ScoreMove);

}  // namespace
