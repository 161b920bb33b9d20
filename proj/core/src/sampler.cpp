#include "csbm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "csbm/errors.hpp"
#include "csbm/specfun.hpp"

namespace csbm {

void SamplerConfig::validate(int n) const {
  if (sweeps < 1) throw config_error("sampler: sweeps must be >= 1");
  if (burn_in < 0 || burn_in >= sweeps) {
    throw config_error("sampler: require 0 <= burn_in < sweeps");
  }
  if (thin < 1) throw config_error("sampler: thin must be >= 1");
  if (n_chains < 1) throw config_error("sampler: n_chains must be >= 1");
  if (!open_k && k < 1) throw config_error("sampler: fixed-K mode needs k >= 1");
  if (init == Init::given && static_cast<int>(init_labels.size()) != n) {
    throw config_error("sampler: init labels length != n");
  }
  if (check_every < 1) throw config_error("sampler: check_every must be >= 1");
}

SamplerState::SamplerState(const DyadData& data, const FamilySpec& spec,
                           const PartitionPrior& prior, Partition init,
                           std::uint64_t seed)
    : data_(&data),
      spec_(&spec),
      prior_(&prior),
      part_(std::move(init)),
      ledger_(data, spec),
      rng_(seed) {
  spec.validate(data.modality(), part_.mode() == Partition::Mode::fixed_k);
  if (spec.uses_zip_indicators()) {
    zip_ = ZipIndicators::from_data(data);
  }
  data_constant_ = spec.drop_constants ? 0.0 : -data.log_factorial_sum();
  ledger_.init(part_, zip());
}

double SamplerState::log_posterior() const {
  return prior_->log_prior(part_) + ledger_.total_log_marginal() + data_constant_;
}

void SamplerState::check_and_resync(double tol) {
  const double incremental = ledger_.total_log_marginal();
  ledger_.init(part_, zip());
  const double fresh = ledger_.total_log_marginal();
  if (std::fabs(incremental - fresh) > tol) {
    throw numeric_error("sampler: incremental log-likelihood drifted by " +
                        std::to_string(incremental - fresh));
  }
}

void SamplerState::gibbs_sweep() {
  const int n = part_.n();
  const bool open = part_.mode() == Partition::Mode::open_k;
  for (int i = 0; i < n; ++i) {
    ledger_.detach(part_, i, zip());
    const int existing = part_.num_labels();
    const bool with_new = open && prior_->open_k();
    const int ncand = existing + (with_new ? 1 : 0);
    weights_.resize(ncand);
    ledger_.score_moves(part_, i, ncand, zip(), weights_.data());
    for (int c = 0; c < existing; ++c) {
      weights_[c] += prior_->log_conditional(part_.size(c), n - 1, false);
    }
    if (with_new) {
      weights_[existing] += prior_->log_conditional(0, n - 1, true);
    }
    const int k = rng_.categorical_from_log_weights(weights_);
    ledger_.attach(part_, i, k, zip());
  }
}

double zip_activation_probability(const Family& zip_family, std::int64_t m_excl,
                                  std::int64_t n, std::int64_t S_excl) {
  const double with_active =
      zip_log_block_marginal(m_excl + 1, n, S_excl, zip_family.a_p, zip_family.b_p,
                             zip_family.a_lambda, zip_family.b_lambda);
  const double without =
      zip_log_block_marginal(m_excl, n, S_excl, zip_family.a_p, zip_family.b_p,
                             zip_family.a_lambda, zip_family.b_lambda);
  const double delta = with_active - without;
  // 1 / (1 + exp(-delta))
  if (delta > 0) return 1.0 / (1.0 + std::exp(-delta));
  const double e = std::exp(delta);
  return e / (1.0 + e);
}

void SamplerState::zip_update_indicators() {
  if (!zip_) throw config_error("zip_update_indicators: no ZIP family active");
  const int n = part_.n();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::size_t at = zip_->idx(i, j);
      if (zip_->y[at] > 0.0) continue;  // y > 0 forces Z = 1
      const int r = part_.label(i);
      const int s = part_.label(j);
      const bool cur = zip_->active[at] != 0;
      const BlockStats& st = ledger_.stats(0, r, s);
      const std::int64_t m_excl = st.cat[0] - (cur ? 1 : 0);
      const Family& fam = spec_->family_for(r == s);
      const double p_active = zip_activation_probability(fam, m_excl, st.n, st.cat[1]);
      const bool next = rng_.uniform() < p_active;
      if (next != cur) {
        zip_->active[at] = next ? 1 : 0;
        ledger_.apply_zip_delta(r, s, next ? +1 : -1, 0);
      }
    }
  }
}

double full_log_posterior(const DyadData& data, const Partition& part,
                          const FamilySpec& spec, const PartitionPrior& prior,
                          const ZipIndicators* zip) {
  BlockLedger ledger(data, spec);
  ledger.init(part, zip);
  const double data_constant = spec.drop_constants ? 0.0 : -data.log_factorial_sum();
  return prior.log_prior(part) + ledger.total_log_marginal() + data_constant;
}

namespace {

Partition make_init(const SamplerConfig& cfg, int n, Rng& rng) {
  switch (cfg.init) {
    case SamplerConfig::Init::random:
      // Default init: uniform random labels (fixed K), all singletons (open K).
      if (cfg.open_k) return Partition::singletons(n);
      return Partition::random_init(n, cfg.k, rng);
    case SamplerConfig::Init::singleton:
      if (!cfg.open_k) throw config_error("singleton init requires open-K mode");
      return Partition::singletons(n);
    case SamplerConfig::Init::given: {
      auto mode = cfg.open_k ? Partition::Mode::open_k : Partition::Mode::fixed_k;
      return Partition(cfg.init_labels, mode, cfg.k);
    }
  }
  throw config_error("sampler: bad init");
}

ChainResult run_chain(const SamplerConfig& cfg, const DyadData& data,
                      const FamilySpec& spec, const PartitionPrior& prior,
                      const std::vector<int>* truth, std::uint64_t seed) {
  Rng init_rng(seed);
  SamplerState state(data, spec, prior, make_init(cfg, data.n(), init_rng), seed);

  ChainResult out;
  out.seed = seed;
  out.psm = PsmAccumulator(cfg.track_psm ? data.n() : 0);
  out.map_log_posterior = -std::numeric_limits<double>::infinity();
  out.trace.reserve(cfg.sweeps);

  for (int sweep = 1; sweep <= cfg.sweeps; ++sweep) {
    state.gibbs_sweep();
    if (spec.uses_zip_indicators()) state.zip_update_indicators();
    if (sweep % cfg.check_every == 0) state.check_and_resync();
    const double lp = state.log_posterior();
    TraceRow row{sweep, lp, std::numeric_limits<double>::quiet_NaN()};
    if (truth) row.ari = ari(*truth, state.partition().labels());
    out.trace.push_back(row);

    const bool retained = sweep > cfg.burn_in && (sweep - cfg.burn_in) % cfg.thin == 0;
    if (retained) {
      if (cfg.track_psm) out.psm.add_sample(state.partition().labels());
      if (lp > out.map_log_posterior) {
        out.map_log_posterior = lp;
        out.map_sweep = sweep;
        out.z_map = state.partition().labels();
        if (state.zip()) out.map_zip = *state.zip();
      }
    }
  }
  if (out.z_map.empty()) {
    throw config_error("sampler: no retained samples (check burn_in/thin)");
  }
  return out;
}

}  // namespace

RunResult run(const SamplerConfig& config, const DyadData& data,
              const FamilySpec& spec, const PartitionPrior& prior,
              const std::vector<int>* truth) {
  config.validate(data.n());
  spec.validate(data.modality(), !config.open_k);
  if (config.open_k != prior.open_k()) {
    throw config_error("sampler: prior variant does not match open/fixed K mode");
  }
  if (truth && static_cast<int>(truth->size()) != data.n()) {
    throw config_error("sampler: truth labels length != n");
  }

  std::vector<ChainResult> chains(config.n_chains);
  if (config.n_chains == 1) {
    chains[0] = run_chain(config, data, spec, prior, truth, config.seed);
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(config.n_chains);
    workers.reserve(config.n_chains);
    for (int c = 0; c < config.n_chains; ++c) {
      workers.emplace_back([&, c] {
        try {
          chains[c] = run_chain(config, data, spec, prior, truth, config.seed + c);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  RunResult out;
  out.map_log_posterior = -std::numeric_limits<double>::infinity();
  out.psm = PsmAccumulator(config.track_psm ? data.n() : 0);
  for (int c = 0; c < config.n_chains; ++c) {
    if (config.track_psm) out.psm.merge(chains[c].psm);
    if (chains[c].map_log_posterior > out.map_log_posterior) {
      out.map_log_posterior = chains[c].map_log_posterior;
      out.map_sweep = chains[c].map_sweep;
      out.map_chain = c;
      out.z_map = chains[c].z_map;
      out.map_zip = chains[c].map_zip;
    }
  }
  int k_max = 0;
  for (int z : out.z_map) k_max = std::max(k_max, z + 1);
  out.cluster_sizes.assign(config.open_k ? k_max : config.k, 0);
  for (int z : out.z_map) ++out.cluster_sizes[z];
  out.ari_vs_truth =
      truth ? ari(*truth, out.z_map) : std::numeric_limits<double>::quiet_NaN();
  out.chains = std::move(chains);
  return out;
}

std::vector<KGridRow> select_k(const DyadData& data, std::vector<int> k_values,
                               const SamplerConfig& config, const FamilySpec& spec,
                               double prior_alpha) {
  if (k_values.empty()) throw config_error("select_k: empty K grid");
  if (spec.drop_constants) {
    throw config_error("select_k: comparable scores require drop_constants=false");
  }
  if (config.open_k) throw config_error("select_k: fixed-K grid only");
  std::sort(k_values.begin(), k_values.end());
  std::vector<KGridRow> rows;
  rows.reserve(k_values.size());
  for (int k : k_values) {
    if (k < 1) throw config_error("select_k: K values must be >= 1");
    SamplerConfig cfg = config;
    cfg.k = k;
    const PartitionPrior prior = PartitionPrior::dm(prior_alpha, k);
    const RunResult res = run(cfg, data, spec, prior, nullptr);
    rows.push_back({k, res.map_log_posterior});
  }
  return rows;
}

}  // namespace csbm
