#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "csbm/errors.hpp"
#include "csbm/partition.hpp"
#include "csbm/priors.hpp"
#include "csbm/rng.hpp"
#include "oracles.hpp"

using namespace csbm;

TEST_CASE("dm prior base cases") {
  const PartitionPrior prior = PartitionPrior::dm(1.0, 2);
  const Partition together({0, 0}, Partition::Mode::fixed_k, 2);
  CHECK(prior.log_prior(together) == doctest::Approx(std::log(0.375)).epsilon(1e-12));
}

TEST_CASE("crp prior base cases") {
  const PartitionPrior prior = PartitionPrior::crp(1.0);
  const Partition together({0, 0}, Partition::Mode::open_k);
  CHECK(prior.log_prior(together) == doctest::Approx(std::log(0.5)).epsilon(1e-12));
  const Partition lone({0}, Partition::Mode::open_k);
  CHECK(prior.log_prior(lone) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("dm normalization over all label vectors") {
  for (const auto& [n, k, alpha] : {std::tuple{4, 2, 1.0}, {5, 3, 0.7}, {6, 2, 2.5}}) {
    const PartitionPrior prior = PartitionPrior::dm(alpha, k);
    std::vector<int> z(n, 0);
    double total = 0.0;
    for (;;) {
      total += std::exp(prior.log_prior(Partition(z, Partition::Mode::fixed_k, k)));
      int at = n - 1;
      while (at >= 0 && z[at] == k - 1) z[at--] = 0;
      if (at < 0) break;
      ++z[at];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("crp normalization over set partitions") {
  for (const auto& [n, alpha] : {std::pair{5, 1.0}, {7, 0.4}, {8, 2.0}}) {
    const PartitionPrior prior = PartitionPrior::crp(alpha);
    double total = 0.0;
    for (const auto& z : oracles::set_partitions(n)) {
      total += std::exp(prior.log_prior(Partition(z, Partition::Mode::open_k)));
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("dm conditional structure") {
  const PartitionPrior prior = PartitionPrior::dm(1.0, 3);
  // all other nodes in cluster 0
  const double big = prior.log_conditional(9, 9, false);
  const double empty = prior.log_conditional(0, 9, false);
  CHECK(big > empty);
  CHECK(std::exp(empty) == doctest::Approx((1.0 / 3.0) / 10.0).epsilon(1e-12));
  CHECK_THROWS_AS(prior.log_conditional(0, 9, true), std::invalid_argument);
}

TEST_CASE("crp new-cluster mass") {
  const PartitionPrior prior = PartitionPrior::crp(1.0);
  // alpha / (n - 1 + alpha) with n = 3
  CHECK(std::exp(prior.log_conditional(0, 2, true)) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(prior.log_conditional(0, 2, false), std::invalid_argument);
}

namespace {

// exp(log_prior(z)) must equal the product of sequential conditionals along
// any insertion order.
double sequential_dm(const std::vector<int>& z, double alpha, int k) {
  const PartitionPrior prior = PartitionPrior::dm(alpha, k);
  std::vector<int> counts(k, 0);
  double log_p = 0.0;
  int seen = 0;
  for (int zi : z) {
    log_p += prior.log_conditional(counts[zi], seen, false);
    ++counts[zi];
    ++seen;
  }
  return log_p;
}

double sequential_crp(const std::vector<int>& z, double alpha) {
  const PartitionPrior prior = PartitionPrior::crp(alpha);
  std::vector<int> counts;
  double log_p = 0.0;
  int seen = 0;
  for (int zi : z) {
    if (zi >= static_cast<int>(counts.size())) {
      log_p += prior.log_conditional(0, seen, true);
      counts.push_back(0);
    } else {
      log_p += prior.log_conditional(counts[zi], seen, false);
    }
    ++counts[zi];
    ++seen;
  }
  return log_p;
}

}  // namespace

TEST_CASE("conditionals are exchangeable-consistent") {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_below(5));
    const int k = 2 + static_cast<int>(rng.uniform_below(2));
    const double alpha = 0.3 + 3.0 * rng.uniform();
    std::vector<int> z(n);
    for (auto& zi : z) zi = static_cast<int>(rng.uniform_below(k));
    const PartitionPrior dm = PartitionPrior::dm(alpha, k);
    CHECK(dm.log_prior(Partition(z, Partition::Mode::fixed_k, k)) ==
          doctest::Approx(sequential_dm(z, alpha, k)).epsilon(1e-10));
  }
  for (int trial = 0; trial < 40; ++trial) {
    const double alpha = 0.3 + 3.0 * rng.uniform();
    const auto parts = oracles::set_partitions(2 + static_cast<int>(rng.uniform_below(5)));
    const auto& z = parts[rng.uniform_below(parts.size())];
    const PartitionPrior crp = PartitionPrior::crp(alpha);
    CHECK(crp.log_prior(Partition(z, Partition::Mode::open_k)) ==
          doctest::Approx(sequential_crp(z, alpha)).epsilon(1e-10));
  }
}

TEST_CASE("prior validation") {
  CHECK_THROWS_AS(PartitionPrior::dm(0.0, 2), config_error);
  CHECK_THROWS_AS(PartitionPrior::dm(1.0, 0), config_error);
  CHECK_THROWS_AS(PartitionPrior::crp(-1.0), config_error);
  const PartitionPrior dm = PartitionPrior::dm(1.0, 2);
  const Partition open({0, 1}, Partition::Mode::open_k);
  CHECK_THROWS_AS(dm.log_prior(open), config_error);
}
