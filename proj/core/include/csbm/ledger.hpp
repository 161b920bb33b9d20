#pragma once

#include <cstdint>
#include <vector>

#include "csbm/block_stats.hpp"
#include "csbm/dyad_data.hpp"
#include "csbm/families.hpp"
#include "csbm/partition.hpp"

namespace csbm {

// Latent ZIP activity indicators, one per unordered dyad, with a dense cache
// of the observed counts. Owned by the chain state and passed into ledger
// operations; dyads with y > 0 are always active.
struct ZipIndicators {
  int n = 0;
  std::vector<std::uint8_t> active;
  std::vector<double> y;

  static ZipIndicators from_data(const DyadData& data);

  std::size_t idx(int i, int j) const {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
  }
  bool is_active(int i, int j) const { return active[idx(i, j)] != 0; }
  double value(int i, int j) const { return y[idx(i, j)]; }
};

// Per-block-pair sufficient statistics plus cached per-block log-marginals,
// maintained incrementally under node detach/attach. One ledger is owned by
// exactly one chain.
class BlockLedger {
 public:
  BlockLedger(const DyadData& data, const FamilySpec& spec);

  // Full rebuild from scratch at the given partition.
  void init(const Partition& part, const ZipIndicators* zip = nullptr);

  // Remove node i from its community, updating all incident block stats.
  // Cost O(deg(i) + K) (O(n) for ZIP, which tracks every incident dyad).
  void detach(Partition& part, int i, const ZipIndicators* zip = nullptr);

  // Insert detached node i into community k; k == num_labels() opens a new
  // community in open-K mode.
  void attach(Partition& part, int i, int k, const ZipIndicators* zip = nullptr);

  // Likelihood part of the Gibbs weight for moving detached node i into k:
  // sum over affected blocks of log m(with i) - log m(without i).
  double score_move(const Partition& part, int i, int k,
                    const ZipIndicators* zip = nullptr) const;

  // All candidate scores at once (shares the per-node bucketing).
  // Fills out[0..num_candidates); candidate num_labels() = new community.
  void score_moves(const Partition& part, int i, int num_candidates,
                   const ZipIndicators* zip, double* out) const;

  // Toggle bookkeeping for one ZIP dyad (i,j) in block (r,s): delta_m = +/-1
  // active dyads, delta_s the matching value-sum change.
  void apply_zip_delta(int r, int s, int delta_m, std::int64_t delta_s);

  // Sum over layers and blocks of cached log-marginals (the collapsed
  // log-likelihood, up to z-constant data terms).
  double total_log_marginal() const { return total_.value(); }

  const BlockStats& stats(int layer, int r, int s) const {
    return stats_[slot(layer, r, s)];
  }
  double cached_log_marginal(int layer, int r, int s) const {
    return cache_[slot(layer, r, s)];
  }

  // Sum of n_rs over distinct blocks in one layer (= |D| when consistent).
  std::int64_t dyads_tracked() const;

  bool unordered_blocks() const { return unordered_; }
  int capacity() const { return cap_; }
  const DyadData& data() const { return *data_; }
  const FamilySpec& spec() const { return *spec_; }

  // Distinct block keys (r,s) for k communities: r<=s when unordered.
  static std::vector<std::pair<int, int>> block_keys(int k, bool unordered);

 private:
  struct Bucket;  // per-community accumulator of one node's incident dyads

  std::size_t slot(int layer, int r, int s) const {
    if (unordered_ && r > s) std::swap(r, s);
    return (static_cast<std::size_t>(layer) * cap_ + r) * cap_ + s;
  }
  void ensure_capacity(int labels);
  void rename_label(int from, int to, int num_labels);
  void refresh_block(int r, int s);
  void add_node_dyads(const Partition& part, int i, int r, int sign,
                      const ZipIndicators* zip);
  void bucket_node(const Partition& part, int i, const ZipIndicators* zip,
                   std::vector<Bucket>& buckets) const;
  double score_from_buckets(const Partition& part, int i, int k,
                            const std::vector<Bucket>& buckets) const;

  const DyadData* data_;
  const FamilySpec* spec_;
  bool unordered_;
  int cap_ = 0;
  std::vector<BlockStats> stats_;
  std::vector<double> cache_;
  KahanSum total_;

  friend class LedgerProbe;
};

// init_ledger convenience mirroring the ledger construction contract.
BlockLedger init_ledger(const DyadData& data, const Partition& part,
                        const FamilySpec& spec,
                        const ZipIndicators* zip = nullptr);

}  // namespace csbm
