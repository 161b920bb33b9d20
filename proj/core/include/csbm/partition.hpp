#pragma once

#include <vector>

#include "csbm/rng.hpp"

namespace csbm {

// Label vector z with cluster sizes. fixed_k keeps K addressable labels
// (empty clusters stay addressable candidates); open_k keeps labels
// contiguous 0..K_active-1, renaming the highest label into the gap when a
// cluster empties.
class Partition {
 public:
  enum class Mode { fixed_k, open_k };

  Partition(std::vector<int> labels, Mode mode, int fixed_k = 0);

  static Partition random_init(int n, int k, Rng& rng);
  static Partition singletons(int n);

  int n() const { return static_cast<int>(labels_.size()); }
  int label(int i) const { return labels_[i]; }
  bool is_detached(int i) const { return labels_[i] < 0; }
  int size(int k) const { return sizes_[k]; }
  Mode mode() const { return mode_; }

  // Addressable labels: K in fixed mode, K_active in open mode.
  int num_labels() const { return static_cast<int>(sizes_.size()); }
  // Nonempty labels.
  int k_active() const;

  const std::vector<int>& labels() const { return labels_; }
  const std::vector<int>& sizes() const { return sizes_; }

  // Low-level mutations used by the ledger's detach/attach; they keep
  // sizes_ consistent but do not touch block statistics.
  void detach_node(int i);
  void attach_node(int i, int k);
  void push_label();                 // open mode: new empty label
  void pop_label();                  // open mode: drop trailing empty label
  void rename_label(int from, int to);  // open mode gap fill; O(n)

 private:
  std::vector<int> labels_;
  std::vector<int> sizes_;
  Mode mode_;
};

}  // namespace csbm
