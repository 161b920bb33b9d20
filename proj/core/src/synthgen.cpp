#include "csbm/synthgen.hpp"

#include <cmath>
#include <numeric>
#include <span>

#include "csbm/errors.hpp"
#include "csbm/rng.hpp"

namespace csbm {

namespace {

void check_prob(double p, const char* name) {
  if (!(p >= 0.0) || !(p <= 1.0)) {
    throw config_error(std::string("generator: ") + name + " must be in [0,1]");
  }
}

void check_simplex(std::span<const double> v, const char* name) {
  double total = 0.0;
  for (double x : v) {
    if (!(x >= 0.0)) throw config_error(std::string("generator: ") + name + " entries >= 0");
    total += x;
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw config_error(std::string("generator: ") + name + " must sum to 1");
  }
}

int draw_categorical(Rng& rng, std::span<const double> probs) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t m = 0; m + 1 < probs.size(); ++m) {
    acc += probs[m];
    if (u < acc) return static_cast<int>(m);
  }
  return static_cast<int>(probs.size()) - 1;
}

}  // namespace

GenSpec::Mechanism mechanism_from_string(const std::string& s) {
  if (s == "bernoulli") return GenSpec::Mechanism::bernoulli;
  if (s == "poisson") return GenSpec::Mechanism::poisson;
  if (s == "gaussian") return GenSpec::Mechanism::gaussian;
  if (s == "zip") return GenSpec::Mechanism::zip;
  if (s == "multiplex") return GenSpec::Mechanism::multiplex;
  if (s == "dyad4") return GenSpec::Mechanism::dyad4;
  if (s == "signed") return GenSpec::Mechanism::sign;
  throw config_error("unknown generator mechanism '" + s + "'");
}

std::string to_string(GenSpec::Mechanism m) {
  switch (m) {
    case GenSpec::Mechanism::bernoulli: return "bernoulli";
    case GenSpec::Mechanism::poisson: return "poisson";
    case GenSpec::Mechanism::gaussian: return "gaussian";
    case GenSpec::Mechanism::zip: return "zip";
    case GenSpec::Mechanism::multiplex: return "multiplex";
    case GenSpec::Mechanism::dyad4: return "dyad4";
    case GenSpec::Mechanism::sign: return "signed";
  }
  return "?";
}

void GenSpec::validate() const {
  if (n < 2) throw config_error("generator: n must be >= 2");
  if (k < 1 || k > n) throw config_error("generator: need 1 <= K <= n");
  if (!sizes.empty()) {
    if (static_cast<int>(sizes.size()) != k) {
      throw config_error("generator: sizes length != K");
    }
    int total = 0;
    for (int s : sizes) {
      if (s < 1) throw config_error("generator: sizes must be >= 1");
      total += s;
    }
    if (total != n) throw config_error("generator: sizes must sum to n");
  }
  switch (mechanism) {
    case Mechanism::bernoulli:
      check_prob(p_in, "p_in");
      check_prob(p_out, "p_out");
      break;
    case Mechanism::poisson:
      if (!(lambda_in > 0) || !(lambda_out >= 0)) {
        throw config_error("generator: lambda_in > 0, lambda_out >= 0 required");
      }
      break;
    case Mechanism::gaussian:
      if (!(sigma_in > 0) || !(sigma_out > 0)) {
        throw config_error("generator: sigma must be > 0");
      }
      break;
    case Mechanism::zip:
      check_prob(zip_p_in, "p_in");
      check_prob(zip_p_out, "p_out");
      if (!(lambda_in > 0) || !(lambda_out > 0)) {
        throw config_error("generator: zip lambdas must be > 0");
      }
      break;
    case Mechanism::multiplex:
      if (layers.empty()) throw config_error("generator: multiplex needs layers");
      for (const auto& layer : layers) {
        if (layer.p_in.empty() ||
            (layer.p_in.size() != 1 && static_cast<int>(layer.p_in.size()) != k)) {
          throw config_error("generator: layer p_in must have 1 or K entries");
        }
        for (double p : layer.p_in) check_prob(p, "layer p_in");
        check_prob(layer.p_out, "layer p_out");
      }
      break;
    case Mechanism::dyad4:
      check_simplex(dyad4_pi_in, "pi_in");
      check_simplex(dyad4_pi_out, "pi_out");
      break;
    case Mechanism::sign:
      check_simplex(sign_theta_in, "theta_in");
      check_simplex(sign_theta_out, "theta_out");
      break;
  }
}

std::vector<int> GenSpec::resolved_sizes() const {
  if (!sizes.empty()) return sizes;
  std::vector<int> out(k, n / k);
  for (int c = 0; c < n % k; ++c) ++out[c];
  return out;
}

Generated generate(const GenSpec& spec) {
  spec.validate();
  const std::vector<int> sizes = spec.resolved_sizes();
  std::vector<int> truth;
  truth.reserve(spec.n);
  for (int c = 0; c < spec.k; ++c) {
    truth.insert(truth.end(), sizes[c], c);
  }

  Rng rng(spec.seed);
  const int n = spec.n;
  const int num_layers =
      spec.mechanism == GenSpec::Mechanism::multiplex ? static_cast<int>(spec.layers.size()) : 1;
  std::vector<std::vector<std::uint64_t>> keys(num_layers);
  std::vector<std::vector<double>> vals(num_layers);
  auto push = [&](int l, int i, int j, double v) {
    keys[l].push_back(DyadData::key(i, j));
    vals[l].push_back(v);
  };

  Kind kind = Kind::undirected;
  Modality modality = Modality::binary;

  switch (spec.mechanism) {
    case GenSpec::Mechanism::bernoulli:
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const double p = truth[i] == truth[j] ? spec.p_in : spec.p_out;
          if (rng.bernoulli(p)) push(0, i, j, 1.0);
        }
      }
      break;
    case GenSpec::Mechanism::poisson: {
      modality = Modality::count;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const double lam = truth[i] == truth[j] ? spec.lambda_in : spec.lambda_out;
          const std::int64_t y = rng.poisson(lam);
          if (y > 0) push(0, i, j, static_cast<double>(y));
        }
      }
      break;
    }
    case GenSpec::Mechanism::gaussian: {
      modality = Modality::real;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const bool within = truth[i] == truth[j];
          const double mu = within ? spec.mu_in : spec.mu_out;
          const double sigma = within ? spec.sigma_in : spec.sigma_out;
          push(0, i, j, mu + sigma * rng.normal());
        }
      }
      break;
    }
    case GenSpec::Mechanism::zip: {
      modality = Modality::count;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const bool within = truth[i] == truth[j];
          const double p = within ? spec.zip_p_in : spec.zip_p_out;
          if (!rng.bernoulli(p)) continue;
          const std::int64_t y = rng.poisson(within ? spec.lambda_in : spec.lambda_out);
          if (y > 0) push(0, i, j, static_cast<double>(y));
        }
      }
      break;
    }
    case GenSpec::Mechanism::multiplex:
      for (int l = 0; l < num_layers; ++l) {
        const auto& layer = spec.layers[l];
        for (int i = 0; i < n; ++i) {
          for (int j = i + 1; j < n; ++j) {
            double p;
            if (truth[i] == truth[j]) {
              p = layer.p_in.size() == 1 ? layer.p_in[0] : layer.p_in[truth[i]];
            } else {
              p = layer.p_out;
            }
            if (rng.bernoulli(p)) push(l, i, j, 1.0);
          }
        }
      }
      break;
    case GenSpec::Mechanism::dyad4: {
      kind = Kind::directed;
      modality = Modality::dyad4;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const bool within = truth[i] == truth[j];
          const auto& pi = within ? spec.dyad4_pi_in : spec.dyad4_pi_out;
          int state = draw_categorical(rng, pi);
          if (state == 0) continue;
          // The draw is community-oriented (10 = lower community -> higher);
          // map to node orientation for the canonical pair i<j.
          if (!within && truth[i] > truth[j] && state != 3) {
            state = state == 1 ? 2 : 1;
          }
          push(0, i, j, static_cast<double>(state));
        }
      }
      break;
    }
    case GenSpec::Mechanism::sign: {
      modality = Modality::sign;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const auto& theta =
              truth[i] == truth[j] ? spec.sign_theta_in : spec.sign_theta_out;
          const int cat = draw_categorical(rng, theta);
          if (cat == 1) push(0, i, j, 1.0);
          if (cat == 2) push(0, i, j, -1.0);
        }
      }
      break;
    }
  }

  Generated out{DyadData::from_dyads(n, kind, modality, keys, vals), std::move(truth)};
  return out;
}

}  // namespace csbm
