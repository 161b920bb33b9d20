#include "csbm/priors.hpp"

#include <cmath>
#include <stdexcept>

#include "csbm/errors.hpp"
#include "csbm/partition.hpp"
#include "csbm/specfun.hpp"

namespace csbm {

using specfun::log_gamma;

PartitionPrior PartitionPrior::dm(double alpha, int k) {
  if (!(alpha > 0) || k < 1) throw config_error("dm prior: alpha > 0, K >= 1 required");
  return {Variant::dirichlet_multinomial, alpha, k};
}

PartitionPrior PartitionPrior::crp(double alpha) {
  if (!(alpha > 0)) throw config_error("crp prior: alpha > 0 required");
  return {Variant::crp, alpha, 0};
}

PartitionPrior prior_from_strings(const std::string& variant, double alpha, int k) {
  if (variant == "dirichlet_multinomial") return PartitionPrior::dm(alpha, k);
  if (variant == "crp") return PartitionPrior::crp(alpha);
  throw config_error("unknown partition prior '" + variant + "'");
}

double PartitionPrior::log_prior(const Partition& part) const {
  const int n = part.n();
  if (variant == Variant::dirichlet_multinomial) {
    if (part.mode() != Partition::Mode::fixed_k || part.num_labels() != k) {
      throw config_error("dm prior: partition must be fixed-K with matching K");
    }
    const double ak = alpha / k;
    double v = log_gamma(alpha) - log_gamma(alpha + n);
    for (int c = 0; c < k; ++c) {
      v += log_gamma(ak + part.size(c)) - log_gamma(ak);
    }
    return v;
  }
  // Normalized Ewens form: alpha^K prod_k (n_k - 1)! / prod_{m=0}^{n-1} (alpha + m).
  if (part.mode() != Partition::Mode::open_k) {
    throw config_error("crp prior: partition must be open-K");
  }
  double v = part.num_labels() * std::log(alpha);
  for (int c = 0; c < part.num_labels(); ++c) {
    v += log_gamma(static_cast<double>(part.size(c)));
  }
  v -= log_gamma(alpha + n) - log_gamma(alpha);
  return v;
}

double PartitionPrior::log_conditional(int size_without_i, int n_without_i,
                                       bool new_cluster) const {
  if (variant == Variant::dirichlet_multinomial) {
    if (new_cluster) {
      throw std::invalid_argument("dm prior: new-cluster conditional undefined");
    }
    return std::log(size_without_i + alpha / k) - std::log(n_without_i + alpha);
  }
  if (new_cluster) {
    return std::log(alpha) - std::log(n_without_i + alpha);
  }
  if (size_without_i <= 0) {
    throw std::invalid_argument("crp prior: existing cluster must be nonempty");
  }
  return std::log(static_cast<double>(size_without_i)) - std::log(n_without_i + alpha);
}

}  // namespace csbm
