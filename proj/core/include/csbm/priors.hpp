#pragma once

#include <string>

namespace csbm {

class Partition;

// Partition prior p(z): finite symmetric Dirichlet-multinomial over labeled
// vectors, or the CRP/Ewens prior over set partitions.
struct PartitionPrior {
  enum class Variant { dirichlet_multinomial, crp };

  Variant variant = Variant::dirichlet_multinomial;
  double alpha = 1.0;
  int k = 1;  // finite variant only

  static PartitionPrior dm(double alpha, int k);
  static PartitionPrior crp(double alpha);

  bool open_k() const { return variant == Variant::crp; }

  // Normalized log p(z).
  double log_prior(const Partition& part) const;

  // Single-site conditional log p(z_i = k | z_{-i}) with node i detached.
  // size_without_i is n_{k,-i}; n_without_i is n-1. For the CRP a new
  // cluster is requested with k == K_active (size 0); the DM variant
  // rejects new-cluster requests.
  double log_conditional(int size_without_i, int n_without_i, bool new_cluster) const;
};

PartitionPrior prior_from_strings(const std::string& variant, double alpha, int k);

}  // namespace csbm
