#include "csbm/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "csbm/errors.hpp"
#include "csbm/specfun.hpp"

namespace csbm {

using specfun::inv_reg_inc_beta;
using specfun::log_beta;
using specfun::log_gamma;
using specfun::log_sum_exp;
using specfun::reg_inc_beta;
using specfun::reg_lower_inc_gamma;

FamilyKind family_kind_from_string(const std::string& s) {
  if (s == "beta_bernoulli") return FamilyKind::beta_bernoulli;
  if (s == "gamma_poisson") return FamilyKind::gamma_poisson;
  if (s == "nig") return FamilyKind::nig;
  if (s == "trunc_beta_bernoulli") return FamilyKind::trunc_beta_bernoulli;
  if (s == "trunc_gamma_poisson") return FamilyKind::trunc_gamma_poisson;
  if (s == "dirichlet_multinomial") return FamilyKind::dirichlet_multinomial;
  if (s == "zip") return FamilyKind::zip;
  if (s == "type_mixture") return FamilyKind::type_mixture;
  throw config_error("unknown family '" + s + "'");
}

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::beta_bernoulli: return "beta_bernoulli";
    case FamilyKind::gamma_poisson: return "gamma_poisson";
    case FamilyKind::nig: return "nig";
    case FamilyKind::trunc_beta_bernoulli: return "trunc_beta_bernoulli";
    case FamilyKind::trunc_gamma_poisson: return "trunc_gamma_poisson";
    case FamilyKind::dirichlet_multinomial: return "dirichlet_multinomial";
    case FamilyKind::zip: return "zip";
    case FamilyKind::type_mixture: return "type_mixture";
  }
  return "?";
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw config_error(what);
}

Modality required_modality(FamilyKind k, Modality data_modality) {
  switch (k) {
    case FamilyKind::beta_bernoulli:
    case FamilyKind::trunc_beta_bernoulli:
      return Modality::binary;
    case FamilyKind::gamma_poisson:
    case FamilyKind::trunc_gamma_poisson:
    case FamilyKind::zip:
      return Modality::count;
    case FamilyKind::nig:
      return Modality::real;
    case FamilyKind::dirichlet_multinomial:
      // Either sign or dyad4; the alpha length pins it down.
      return data_modality;
    case FamilyKind::type_mixture:
      return data_modality;
  }
  return data_modality;
}

}  // namespace

void Family::validate(Modality modality) const {
  switch (kind) {
    case FamilyKind::beta_bernoulli:
      require(a > 0 && b > 0, "beta_bernoulli: a, b must be > 0");
      require(modality == Modality::binary, "beta_bernoulli requires binary data");
      break;
    case FamilyKind::gamma_poisson:
      require(a > 0 && b > 0, "gamma_poisson: a, b must be > 0");
      require(modality == Modality::count, "gamma_poisson requires count data");
      break;
    case FamilyKind::nig:
      require(kappa0 > 0 && alpha0 > 0 && beta0 > 0, "nig: kappa0, alpha0, beta0 must be > 0");
      require(modality == Modality::real, "nig requires real data");
      break;
    case FamilyKind::trunc_beta_bernoulli:
      require(a > 0 && b > 0, "trunc_beta_bernoulli: a, b must be > 0");
      require(x_max > 0 && x_max <= 1, "trunc_beta_bernoulli: 0 < x_max <= 1");
      require(modality == Modality::binary, "trunc_beta_bernoulli requires binary data");
      break;
    case FamilyKind::trunc_gamma_poisson:
      require(a > 0 && b > 0, "trunc_gamma_poisson: a, b must be > 0");
      require(x_max > 0, "trunc_gamma_poisson: x_max must be > 0");
      require(modality == Modality::count, "trunc_gamma_poisson requires count data");
      break;
    case FamilyKind::dirichlet_multinomial: {
      require(modality == Modality::sign || modality == Modality::dyad4,
              "dirichlet_multinomial requires signed or dyad4 data");
      const std::size_t want = modality == Modality::sign ? 3 : 4;
      require(alpha.size() == want, "dirichlet_multinomial: alpha length must be " +
                                        std::to_string(want) + " for " + csbm::to_string(modality));
      for (double x : alpha) require(x > 0, "dirichlet_multinomial: alpha entries must be > 0");
      break;
    }
    case FamilyKind::zip:
      require(a_p > 0 && b_p > 0 && a_lambda > 0 && b_lambda > 0,
              "zip: all hyperparameters must be > 0");
      require(modality == Modality::count, "zip requires count data");
      break;
    case FamilyKind::type_mixture: {
      require(!mix_components.empty(), "type_mixture: empty type list");
      require(mix_weights.size() == mix_components.size(),
              "type_mixture: weights/components length mismatch");
      double total = 0.0;
      for (double w : mix_weights) {
        require(w > 0, "type_mixture: type weights must be > 0");
        total += w;
      }
      require(std::fabs(total - 1.0) <= 1e-9, "type_mixture: weights must sum to 1");
      for (const auto& c : mix_components) {
        require(c.kind != FamilyKind::type_mixture, "type_mixture: nested mixtures not supported");
        c.validate(modality);
      }
      break;
    }
  }
}

void FamilySpec::validate(Modality modality, bool fixed_k) const {
  diag.validate(modality);
  offdiag.validate(modality);
  if (diag.uses_zip_indicators() != offdiag.uses_zip_indicators()) {
    // ZIP redefines the block sufficient statistics, so it must govern both.
    throw config_error("ZIP must be used for both diagonal and off-diagonal blocks");
  }
  if (drop_constants && !fixed_k) {
    throw config_error("drop_constants requires a fixed number of communities");
  }
}

double bb_log_marginal(std::int64_t s, std::int64_t n, double a, double b) {
  if (s < 0 || s > n) throw std::domain_error("bb_log_marginal: need 0 <= s <= n");
  if (!(a > 0) || !(b > 0)) throw std::domain_error("bb_log_marginal: a, b > 0");
  return log_beta(a + s, b + (n - s)) - log_beta(a, b);
}

double gp_log_marginal(std::int64_t S, std::int64_t n, double a, double b,
                       bool drop_constants) {
  if (S < 0 || n < 0) throw std::domain_error("gp_log_marginal: need S >= 0, n >= 0");
  if (!(a > 0) || !(b > 0)) throw std::domain_error("gp_log_marginal: a, b > 0");
  double v = log_gamma(a + S) - (a + S) * std::log(b + n);
  if (!drop_constants) v += a * std::log(b) - log_gamma(a);
  return v;
}

double nig_log_marginal(std::int64_t n, double sum_y, double sum_y2, double mu0,
                        double kappa0, double alpha0, double beta0) {
  if (n < 0) throw std::domain_error("nig_log_marginal: n >= 0");
  if (!(kappa0 > 0) || !(alpha0 > 0) || !(beta0 > 0)) {
    throw std::domain_error("nig_log_marginal: kappa0, alpha0, beta0 > 0");
  }
  if (n == 0) return 0.0;
  const double ybar = sum_y / n;
  double q = sum_y2 - n * ybar * ybar;
  if (q < 0.0) {
    if (q < -1e-9 * std::max(1.0, std::fabs(sum_y2))) {
      throw numeric_error("nig_log_marginal: negative within-block variance");
    }
    q = 0.0;
  }
  const double kappa_n = kappa0 + n;
  const double beta_n =
      beta0 + 0.5 * q + 0.5 * kappa0 * n * (ybar - mu0) * (ybar - mu0) / kappa_n;
  constexpr double kLog2Pi = 1.8378770664093454836;
  return -0.5 * n * kLog2Pi + 0.5 * std::log(kappa0 / kappa_n) +
         log_gamma(alpha0 + 0.5 * n) - log_gamma(alpha0) + alpha0 * std::log(beta0) -
         (alpha0 + 0.5 * n) * std::log(beta_n);
}

double tbb_log_marginal(std::int64_t s, std::int64_t n, double a, double b,
                        double x_max) {
  if (!(x_max > 0) || !(x_max <= 1)) {
    throw std::domain_error("tbb_log_marginal: 0 < x_max <= 1");
  }
  const double base = bb_log_marginal(s, n, a, b);
  if (x_max == 1.0) return base;
  const double norm_prior = reg_inc_beta(x_max, a, b);
  const double norm_post = reg_inc_beta(x_max, a + s, b + (n - s));
  if (norm_prior <= 0.0) {
    throw numeric_error("tbb_log_marginal: truncated prior mass underflowed to 0 (a=" +
                        std::to_string(a) + ", b=" + std::to_string(b) +
                        ", x_max=" + std::to_string(x_max) + ")");
  }
  if (norm_post <= 0.0) {
    throw numeric_error("tbb_log_marginal: truncated posterior mass underflowed to 0");
  }
  return base + std::log(norm_post) - std::log(norm_prior);
}

double tgp_log_marginal(std::int64_t S, std::int64_t n, double a, double b,
                        double x_max) {
  if (S < 0 || n < 0) throw std::domain_error("tgp_log_marginal: need S >= 0, n >= 0");
  if (!(a > 0) || !(b > 0)) throw std::domain_error("tgp_log_marginal: a, b > 0");
  if (!(x_max > 0)) throw std::domain_error("tgp_log_marginal: x_max > 0");
  const double norm_prior = reg_lower_inc_gamma(a, b * x_max);
  const double norm_post = reg_lower_inc_gamma(a + S, (b + n) * x_max);
  if (norm_prior <= 0.0) {
    throw numeric_error("tgp_log_marginal: truncated prior mass underflowed to 0");
  }
  if (norm_post <= 0.0) {
    throw numeric_error("tgp_log_marginal: truncated posterior mass underflowed to 0");
  }
  return a * std::log(b) - log_gamma(a) - std::log(norm_prior) + log_gamma(a + S) +
         std::log(norm_post) - (a + S) * std::log(b + n);
}

double dirmult_log_marginal(std::span<const std::int64_t> counts,
                            std::span<const double> alpha) {
  if (counts.size() != alpha.size() || counts.empty()) {
    throw std::domain_error("dirmult_log_marginal: counts/alpha length mismatch");
  }
  double alpha_total = 0.0;
  std::int64_t count_total = 0;
  double v = 0.0;
  for (std::size_t m = 0; m < counts.size(); ++m) {
    if (counts[m] < 0) throw std::domain_error("dirmult_log_marginal: negative count");
    if (!(alpha[m] > 0)) throw std::domain_error("dirmult_log_marginal: alpha > 0");
    alpha_total += alpha[m];
    count_total += counts[m];
    v += log_gamma(alpha[m] + counts[m]) - log_gamma(alpha[m]);
  }
  return v + log_gamma(alpha_total) - log_gamma(alpha_total + count_total);
}

double zip_log_block_marginal(std::int64_t m_active, std::int64_t n,
                              std::int64_t S_active, double a_p, double b_p,
                              double a_lambda, double b_lambda) {
  if (m_active < 0 || m_active > n || S_active < 0) {
    throw std::domain_error("zip_log_block_marginal: need 0 <= m <= n, S >= 0");
  }
  return bb_log_marginal(m_active, n, a_p, b_p) +
         gp_log_marginal(S_active, m_active, a_lambda, b_lambda);
}

double type_mixture_log_marginal(const Family& mixture, const BlockStats& stats,
                                 Modality modality) {
  if (mixture.mix_components.empty()) {
    throw std::domain_error("type_mixture_log_marginal: empty type list");
  }
  std::vector<double> terms(mixture.mix_components.size());
  for (std::size_t t = 0; t < terms.size(); ++t) {
    terms[t] = std::log(mixture.mix_weights[t]) +
               family_log_marginal(mixture.mix_components[t], stats, modality);
  }
  return log_sum_exp(terms);
}

namespace {

// The per-block prior normalizing constant that Table-style "constants
// omitted" conventions drop (legal only under fixed K).
double structural_constant(const Family& f, Modality modality) {
  switch (f.kind) {
    case FamilyKind::beta_bernoulli:
      return -log_beta(f.a, f.b);
    case FamilyKind::gamma_poisson:
      return f.a * std::log(f.b) - log_gamma(f.a);
    case FamilyKind::nig:
      return -log_gamma(f.alpha0) + f.alpha0 * std::log(f.beta0) +
             0.5 * std::log(f.kappa0);
    case FamilyKind::trunc_beta_bernoulli:
      return -log_beta(f.a, f.b) - std::log(reg_inc_beta(f.x_max, f.a, f.b));
    case FamilyKind::trunc_gamma_poisson:
      return f.a * std::log(f.b) - log_gamma(f.a) -
             std::log(reg_lower_inc_gamma(f.a, f.b * f.x_max));
    case FamilyKind::dirichlet_multinomial: {
      double alpha_total = 0.0, v = 0.0;
      for (double x : f.alpha) {
        alpha_total += x;
        v -= log_gamma(x);
      }
      return v + log_gamma(alpha_total);
    }
    case FamilyKind::zip:
      return -log_beta(f.a_p, f.b_p) + f.a_lambda * std::log(f.b_lambda) -
             log_gamma(f.a_lambda);
    case FamilyKind::type_mixture:
      // Mixture weights couple the per-type constants; never dropped.
      return 0.0;
  }
  (void)modality;
  return 0.0;
}

}  // namespace

double family_log_marginal(const Family& family, const BlockStats& stats,
                           Modality modality, bool drop_constants) {
  double v = 0.0;
  switch (family.kind) {
    case FamilyKind::beta_bernoulli:
      v = bb_log_marginal(stats.cat[0], stats.n, family.a, family.b);
      break;
    case FamilyKind::gamma_poisson:
      v = gp_log_marginal(stats.cat[0], stats.n, family.a, family.b);
      break;
    case FamilyKind::nig:
      v = nig_log_marginal(stats.n, stats.sum_y.value(), stats.sum_y2.value(),
                           family.mu0, family.kappa0, family.alpha0, family.beta0);
      break;
    case FamilyKind::trunc_beta_bernoulli:
      v = tbb_log_marginal(stats.cat[0], stats.n, family.a, family.b, family.x_max);
      break;
    case FamilyKind::trunc_gamma_poisson:
      v = tgp_log_marginal(stats.cat[0], stats.n, family.a, family.b, family.x_max);
      break;
    case FamilyKind::dirichlet_multinomial: {
      if (modality == Modality::sign) {
        const std::int64_t counts[3] = {stats.n - stats.cat[0] - stats.cat[1],
                                        stats.cat[0], stats.cat[1]};
        v = dirmult_log_marginal(counts, family.alpha);
      } else {
        const std::int64_t counts[4] = {
            stats.n - stats.cat[0] - stats.cat[1] - stats.cat[2], stats.cat[0],
            stats.cat[1], stats.cat[2]};
        v = dirmult_log_marginal(counts, family.alpha);
      }
      break;
    }
    case FamilyKind::zip:
      v = zip_log_block_marginal(stats.cat[0], stats.n, stats.cat[1], family.a_p,
                                 family.b_p, family.a_lambda, family.b_lambda);
      break;
    case FamilyKind::type_mixture:
      return type_mixture_log_marginal(family, stats, modality);
  }
  if (drop_constants) v -= structural_constant(family, modality);
  return v;
}

// --- posterior summaries ----------------------------------------------------

namespace {

// Solve P(shape, rate*x) = p by bisection.
double gamma_quantile(double p, double shape, double rate) {
  if (p <= 0.0) return 0.0;
  const double mean = shape / rate;
  const double sd = std::sqrt(shape) / rate;
  double hi = mean + 10.0 * sd + 10.0 / rate;
  while (reg_lower_inc_gamma(shape, rate * hi) < p) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (reg_lower_inc_gamma(shape, rate * mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

// Student-t quantile via the incomplete beta identity.
double student_t_quantile(double p, double nu) {
  if (p == 0.5) return 0.0;
  const double tail = p < 0.5 ? p : 1.0 - p;
  const double x = inv_reg_inc_beta(2.0 * tail, 0.5 * nu, 0.5);
  const double t = std::sqrt(nu * (1.0 - x) / x);
  return p < 0.5 ? -t : t;
}

BlockPosterior::Item beta_item(const std::string& name, double a, double b,
                               double lo_p, double hi_p) {
  return {name, a / (a + b), inv_reg_inc_beta(lo_p, a, b), inv_reg_inc_beta(hi_p, a, b)};
}

}  // namespace

BlockPosterior block_posterior(const Family& family, const BlockStats& stats,
                               Modality modality, double level) {
  if (!(level > 0.0) || !(level < 1.0)) {
    throw std::domain_error("block_posterior: level in (0,1)");
  }
  const double lo_p = 0.5 * (1.0 - level);
  const double hi_p = 1.0 - lo_p;
  BlockPosterior out;
  switch (family.kind) {
    case FamilyKind::beta_bernoulli: {
      out.items.push_back(
          beta_item("p", family.a + stats.cat[0], family.b + (stats.n - stats.cat[0]),
                    lo_p, hi_p));
      break;
    }
    case FamilyKind::trunc_beta_bernoulli: {
      const double a = family.a + stats.cat[0];
      const double b = family.b + (stats.n - stats.cat[0]);
      const double x = family.x_max;
      const double mass = reg_inc_beta(x, a, b);
      if (mass <= 0.0) throw numeric_error("block_posterior: truncated mass underflow");
      // Mean of Beta(a,b) restricted to [0,x]; quantiles in the truncated
      // measure via p -> p * I_x(a,b) before inversion.
      const double mean = a / (a + b) * reg_inc_beta(x, a + 1.0, b) / mass;
      out.items.push_back({"p", mean, inv_reg_inc_beta(lo_p * mass, a, b),
                           inv_reg_inc_beta(hi_p * mass, a, b)});
      break;
    }
    case FamilyKind::gamma_poisson: {
      const double shape = family.a + stats.cat[0];
      const double rate = family.b + stats.n;
      out.items.push_back({"lambda", shape / rate, gamma_quantile(lo_p, shape, rate),
                           gamma_quantile(hi_p, shape, rate)});
      break;
    }
    case FamilyKind::trunc_gamma_poisson: {
      const double shape = family.a + stats.cat[0];
      const double rate = family.b + stats.n;
      const double x = family.x_max;
      const double mass = reg_lower_inc_gamma(shape, rate * x);
      if (mass <= 0.0) throw numeric_error("block_posterior: truncated mass underflow");
      const double mean =
          shape / rate * reg_lower_inc_gamma(shape + 1.0, rate * x) / mass;
      out.items.push_back({"lambda", mean, gamma_quantile(lo_p * mass, shape, rate),
                           gamma_quantile(hi_p * mass, shape, rate)});
      break;
    }
    case FamilyKind::nig: {
      const std::int64_t n = stats.n;
      const double sum_y = stats.sum_y.value();
      const double sum_y2 = stats.sum_y2.value();
      const double ybar = n > 0 ? sum_y / n : 0.0;
      const double q = n > 0 ? std::max(0.0, sum_y2 - n * ybar * ybar) : 0.0;
      const double kappa_n = family.kappa0 + n;
      const double mu_n = (family.kappa0 * family.mu0 + sum_y) / kappa_n;
      const double alpha_n = family.alpha0 + 0.5 * n;
      const double beta_n =
          family.beta0 + 0.5 * q +
          0.5 * family.kappa0 * n * (ybar - family.mu0) * (ybar - family.mu0) / kappa_n;
      const double scale = std::sqrt(beta_n / (alpha_n * kappa_n));
      const double nu = 2.0 * alpha_n;
      out.items.push_back({"mu", mu_n, mu_n + scale * student_t_quantile(lo_p, nu),
                           mu_n + scale * student_t_quantile(hi_p, nu)});
      if (alpha_n > 0.5) {
        out.sigma_mean =
            std::sqrt(beta_n) * std::exp(log_gamma(alpha_n - 0.5) - log_gamma(alpha_n));
      }
      break;
    }
    case FamilyKind::dirichlet_multinomial: {
      const bool is_sign = modality == Modality::sign;
      std::vector<std::int64_t> counts;
      std::vector<std::string> names;
      if (is_sign) {
        counts = {stats.n - stats.cat[0] - stats.cat[1], stats.cat[0], stats.cat[1]};
        names = {"p0", "p_plus", "p_minus"};
      } else {
        counts = {stats.n - stats.cat[0] - stats.cat[1] - stats.cat[2], stats.cat[0],
                  stats.cat[1], stats.cat[2]};
        names = {"p00", "p10", "p01", "p11"};
      }
      double post_total = 0.0;
      for (std::size_t m = 0; m < counts.size(); ++m) {
        post_total += family.alpha[m] + counts[m];
      }
      for (std::size_t m = 0; m < counts.size(); ++m) {
        const double am = family.alpha[m] + counts[m];
        out.items.push_back(beta_item(names[m], am, post_total - am, lo_p, hi_p));
      }
      break;
    }
    case FamilyKind::zip: {
      const double pa = family.a_p + stats.cat[0];
      const double pb = family.b_p + (stats.n - stats.cat[0]);
      out.items.push_back(beta_item("p", pa, pb, lo_p, hi_p));
      const double shape = family.a_lambda + stats.cat[1];
      const double rate = family.b_lambda + stats.cat[0];
      out.items.push_back({"lambda", shape / rate, gamma_quantile(lo_p, shape, rate),
                           gamma_quantile(hi_p, shape, rate)});
      const double p_mean = out.items[0].mean;
      const double l_mean = out.items[1].mean;
      out.zip_mu = p_mean * l_mean;
      out.zip_q = p_mean * (1.0 - std::exp(-l_mean));
      break;
    }
    case FamilyKind::type_mixture: {
      // Posterior over types, then the best-supported type's summaries.
      std::vector<double> log_post(family.mix_components.size());
      for (std::size_t t = 0; t < log_post.size(); ++t) {
        log_post[t] = std::log(family.mix_weights[t]) +
                      family_log_marginal(family.mix_components[t], stats, modality);
      }
      const double norm = log_sum_exp(log_post);
      std::size_t best = 0;
      out.type_weights.resize(log_post.size());
      for (std::size_t t = 0; t < log_post.size(); ++t) {
        out.type_weights[t] = std::exp(log_post[t] - norm);
        if (log_post[t] > log_post[best]) best = t;
      }
      BlockPosterior inner =
          block_posterior(family.mix_components[best], stats, modality, level);
      out.items = std::move(inner.items);
      out.zip_mu = inner.zip_mu;
      out.zip_q = inner.zip_q;
      out.sigma_mean = inner.sigma_mean;
      break;
    }
  }
  return out;
}

}  // namespace csbm
