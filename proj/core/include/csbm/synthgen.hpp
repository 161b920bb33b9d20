#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "csbm/dyad_data.hpp"

namespace csbm {

// Planted-partition generator spec. Cluster sizes default to an equal split
// with the remainder assigned to the first clusters.
struct GenSpec {
  enum class Mechanism { bernoulli, poisson, gaussian, zip, multiplex, dyad4, sign };

  int n = 150;
  int k = 3;
  std::vector<int> sizes;  // optional explicit sizes (must sum to n)
  std::uint64_t seed = 1;
  Mechanism mechanism = Mechanism::bernoulli;

  double p_in = 0.15, p_out = 0.02;             // bernoulli
  double lambda_in = 1.5, lambda_out = 0.15;    // poisson; zip intensity
  double mu_in = 1.0, mu_out = 0.0;             // gaussian
  double sigma_in = 1.0, sigma_out = 1.0;       // gaussian (shared by default)
  double zip_p_in = 0.5, zip_p_out = 0.05;      // zip activity

  // multiplex: per-layer Bernoulli params; p_in may be one value per
  // community (complementary layers) or a single shared value.
  struct LayerSpec {
    std::vector<double> p_in;
    double p_out = 0.02;
  };
  std::vector<LayerSpec> layers;

  // dyad4 state probabilities (00,10,01,11), community-oriented
  std::array<double, 4> dyad4_pi_in{0.76, 0.08, 0.08, 0.08};
  std::array<double, 4> dyad4_pi_out{0.93, 0.02, 0.04, 0.01};
  // signed state probabilities (0,+1,-1)
  std::array<double, 3> sign_theta_in{0.80, 0.15, 0.05};
  std::array<double, 3> sign_theta_out{0.90, 0.03, 0.07};

  void validate() const;
  std::vector<int> resolved_sizes() const;
};

GenSpec::Mechanism mechanism_from_string(const std::string& s);
std::string to_string(GenSpec::Mechanism m);

struct Generated {
  DyadData data;
  std::vector<int> truth;
};

// Dyads drawn independently given the block-determined parameters;
// deterministic in (spec, seed).
Generated generate(const GenSpec& spec);

}  // namespace csbm
