#include "csbm/partition.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "csbm/errors.hpp"

namespace csbm {

Partition::Partition(std::vector<int> labels, Mode mode, int fixed_k)
    : labels_(std::move(labels)), mode_(mode) {
  if (labels_.empty()) throw config_error("Partition: empty label vector");
  int max_label = -1;
  for (int z : labels_) {
    if (z < 0) throw config_error("Partition: negative label");
    max_label = std::max(max_label, z);
  }
  if (mode_ == Mode::fixed_k) {
    if (fixed_k < 1) throw config_error("Partition: fixed K must be >= 1");
    if (max_label >= fixed_k) {
      throw config_error("Partition: label " + std::to_string(max_label) +
                         " out of range for K=" + std::to_string(fixed_k));
    }
    sizes_.assign(fixed_k, 0);
  } else {
    sizes_.assign(max_label + 1, 0);
  }
  for (int z : labels_) ++sizes_[z];
  if (mode_ == Mode::open_k) {
    for (int k = 0; k < num_labels(); ++k) {
      if (sizes_[k] == 0) {
        throw config_error("Partition: open-K labels must be contiguous");
      }
    }
  }
}

Partition Partition::random_init(int n, int k, Rng& rng) {
  std::vector<int> z(n);
  for (int i = 0; i < n; ++i) z[i] = static_cast<int>(rng.uniform_below(k));
  return Partition(std::move(z), Mode::fixed_k, k);
}

Partition Partition::singletons(int n) {
  std::vector<int> z(n);
  for (int i = 0; i < n; ++i) z[i] = i;
  return Partition(std::move(z), Mode::open_k);
}

int Partition::k_active() const {
  int k = 0;
  for (int s : sizes_) k += s > 0 ? 1 : 0;
  return k;
}

void Partition::detach_node(int i) {
  if (labels_[i] < 0) throw std::invalid_argument("detach: node already detached");
  --sizes_[labels_[i]];
  labels_[i] = -1;
}

void Partition::attach_node(int i, int k) {
  if (labels_[i] >= 0) throw std::invalid_argument("attach: node already assigned");
  if (k < 0 || k >= num_labels()) throw std::invalid_argument("attach: label out of range");
  labels_[i] = k;
  ++sizes_[k];
}

void Partition::push_label() {
  if (mode_ != Mode::open_k) throw std::invalid_argument("push_label: fixed-K partition");
  sizes_.push_back(0);
}

void Partition::pop_label() {
  if (sizes_.empty() || sizes_.back() != 0) {
    throw std::invalid_argument("pop_label: trailing label not empty");
  }
  sizes_.pop_back();
}

void Partition::rename_label(int from, int to) {
  for (auto& z : labels_) {
    if (z == from) z = to;
  }
  sizes_[to] = sizes_[from];
  sizes_[from] = 0;
}

}  // namespace csbm
