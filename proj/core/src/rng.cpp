#include "csbm/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace csbm {

double Rng::normal() {
  // Marsaglia polar method; discards the second variate to keep the
  // stream consumption pattern simple and reproducible.
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

std::int64_t Rng::poisson(double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("poisson: lambda < 0");
  if (lambda == 0.0) return 0;
  // Knuth multiplication below 30; above, split by Poisson additivity.
  if (lambda > 30.0) {
    const double half = 0.5 * lambda;
    return poisson(half) + poisson(lambda - half);
  }
  const double limit = std::exp(-lambda);
  std::int64_t k = 0;
  double prod = uniform();
  while (prod > limit) {
    ++k;
    prod *= uniform();
  }
  return k;
}

int Rng::categorical_from_log_weights(std::span<const double> log_weights) {
  if (log_weights.empty()) {
    throw std::invalid_argument("categorical_from_log_weights: empty input");
  }
  double mx = log_weights[0];
  for (double w : log_weights) mx = std::max(mx, w);
  std::vector<double> cum(log_weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    total += std::exp(log_weights[i] - mx);
    cum[i] = total;
  }
  const double u = uniform() * total;
  for (std::size_t i = 0; i + 1 < cum.size(); ++i) {
    if (u < cum[i]) return static_cast<int>(i);
  }
  return static_cast<int>(cum.size() - 1);
}

}  // namespace csbm
