#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csbm/dyad_data.hpp"
#include "csbm/families.hpp"
#include "csbm/ledger.hpp"
#include "csbm/partition.hpp"
#include "csbm/priors.hpp"
#include "csbm/report.hpp"
#include "csbm/rng.hpp"

namespace csbm {

struct SamplerConfig {
  int sweeps = 5000;
  int burn_in = 1000;
  int thin = 10;
  std::uint64_t seed = 1;
  int n_chains = 1;

  bool open_k = false;
  int k = 0;  // fixed-K mode
  bool allow_new_cluster = true;

  enum class Init { random, singleton, given };
  Init init = Init::random;
  std::vector<int> init_labels;

  bool track_psm = true;
  int check_every = 100;  // incremental-vs-recompute consistency cadence

  void validate(int n) const;
};

struct TraceRow {
  int sweep;
  double log_post;
  double ari;  // NaN when no truth labels were given
};

// One chain: partition + ledger + RNG + ZIP indicators + accumulators.
class SamplerState {
 public:
  SamplerState(const DyadData& data, const FamilySpec& spec,
               const PartitionPrior& prior, Partition init, std::uint64_t seed);

  void gibbs_sweep();
  void zip_update_indicators();

  // log p(z) + sum over blocks/layers of log marginals (+ the z-constant
  // data term when constants are kept).
  double log_posterior() const;

  // Recompute from scratch, check |incremental - full| <= tol, resync.
  void check_and_resync(double tol = 1e-6);

  const Partition& partition() const { return part_; }
  const BlockLedger& ledger() const { return ledger_; }
  const ZipIndicators* zip() const { return zip_ ? &*zip_ : nullptr; }
  Rng& rng() { return rng_; }

 private:
  const DyadData* data_;
  const FamilySpec* spec_;
  const PartitionPrior* prior_;
  Partition part_;
  BlockLedger ledger_;
  std::optional<ZipIndicators> zip_;
  Rng rng_;
  double data_constant_;
  std::vector<double> weights_;  // candidate scratch
};

struct ChainResult {
  std::uint64_t seed = 0;
  std::vector<int> z_map;
  double map_log_posterior = 0.0;
  int map_sweep = -1;
  std::vector<TraceRow> trace;
  PsmAccumulator psm;
  std::optional<ZipIndicators> map_zip;  // ZIP runs: indicators at the MAP sweep
};

struct RunResult {
  std::vector<int> z_map;
  double map_log_posterior = 0.0;
  int map_sweep = -1;
  int map_chain = -1;
  std::vector<int> cluster_sizes;
  double ari_vs_truth;  // NaN without truth
  PsmAccumulator psm;   // pooled across chains
  std::vector<ChainResult> chains;
  std::optional<ZipIndicators> map_zip;
};

// Fresh-ledger evaluation of log p(z) + log p(Y|z); the oracle route used by
// enumeration tests and scheduled consistency checks.
double full_log_posterior(const DyadData& data, const Partition& part,
                          const FamilySpec& spec, const PartitionPrior& prior,
                          const ZipIndicators* zip = nullptr);

// Collapsed posterior probability that a zero dyad is active, given the rest
// of its block: m_excl active dyads among n (this dyad excluded), value sum
// S_excl.
double zip_activation_probability(const Family& zip_family, std::int64_t m_excl,
                                  std::int64_t n, std::int64_t S_excl);

RunResult run(const SamplerConfig& config, const DyadData& data,
              const FamilySpec& spec, const PartitionPrior& prior,
              const std::vector<int>* truth = nullptr);

struct KGridRow {
  int k;
  double best_log_posterior;
};

// Fixed-K grid search: for each K, run and record the best sampled
// log p(z) + log p(Y|z). Requires full per-block constants.
std::vector<KGridRow> select_k(const DyadData& data, std::vector<int> k_values,
                               const SamplerConfig& config, const FamilySpec& spec,
                               double prior_alpha);

}  // namespace csbm
