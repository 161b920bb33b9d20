#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csbm/block_stats.hpp"
#include "csbm/dyad_data.hpp"

namespace csbm {

enum class FamilyKind {
  beta_bernoulli,
  gamma_poisson,
  nig,
  trunc_beta_bernoulli,
  trunc_gamma_poisson,
  dirichlet_multinomial,
  zip,
  type_mixture,
};

FamilyKind family_kind_from_string(const std::string& s);
std::string to_string(FamilyKind k);

// One collapsed block family plus its hyperparameters. Only the fields for
// the active kind are meaningful.
struct Family {
  FamilyKind kind = FamilyKind::beta_bernoulli;

  double a = 1.0, b = 1.0;      // Beta/Gamma shape-rate pairs
  double x_max = 1.0;           // truncation cap
  double mu0 = 0.0, kappa0 = 1.0, alpha0 = 1.0, beta0 = 1.0;  // NIG
  std::vector<double> alpha;    // Dirichlet concentration
  double a_p = 1.0, b_p = 1.0, a_lambda = 1.0, b_lambda = 1.0;  // ZIP

  std::vector<double> mix_weights;     // type prior pi(t), sums to 1
  std::vector<Family> mix_components;  // conjugate (non-mixture) families

  // Throws config_error when hyperparameters or the modality pairing are
  // invalid.
  void validate(Modality modality) const;

  bool uses_zip_indicators() const { return kind == FamilyKind::zip; }
};

// Which family governs diagonal vs off-diagonal blocks.
struct FamilySpec {
  Family diag;
  Family offdiag;
  // Drop per-block normalizing constants that are fixed under label moves.
  // Legal only when the number of block factors cannot change (fixed K).
  bool drop_constants = false;

  const Family& family_for(bool diagonal) const {
    return diagonal ? diag : offdiag;
  }
  bool uses_zip_indicators() const {
    return diag.uses_zip_indicators() || offdiag.uses_zip_indicators();
  }
  void validate(Modality modality, bool fixed_k) const;
};

// --- closed-form collapsed log-marginals -----------------------------------

double bb_log_marginal(std::int64_t s, std::int64_t n, double a, double b);

// Poisson data constants (the -sum ln y! term) are z-constant and handled
// globally by the caller, never here.
double gp_log_marginal(std::int64_t S, std::int64_t n, double a, double b,
                       bool drop_constants = false);

double nig_log_marginal(std::int64_t n, double sum_y, double sum_y2, double mu0,
                        double kappa0, double alpha0, double beta0);

double tbb_log_marginal(std::int64_t s, std::int64_t n, double a, double b,
                        double x_max);

double tgp_log_marginal(std::int64_t S, std::int64_t n, double a, double b,
                        double x_max);

double dirmult_log_marginal(std::span<const std::int64_t> counts,
                            std::span<const double> alpha);

double zip_log_block_marginal(std::int64_t m_active, std::int64_t n,
                              std::int64_t S_active, double a_p, double b_p,
                              double a_lambda, double b_lambda);

// log sum_t pi_t exp(log m_t(stats)), via log-sum-exp.
double type_mixture_log_marginal(const Family& mixture, const BlockStats& stats,
                                 Modality modality);

// Dispatch on family kind; `stats` interpreted per the modality conventions
// in block_stats.hpp.
double family_log_marginal(const Family& family, const BlockStats& stats,
                           Modality modality, bool drop_constants = false);

// --- posterior summaries ----------------------------------------------------

struct BlockPosterior {
  struct Item {
    std::string name;
    double mean, lo, hi;
  };
  std::vector<Item> items;  // family-specific, see block_posterior

  // ZIP plug-in summaries at posterior means: mu = p*lambda,
  // q = p*(1 - e^{-lambda}).
  std::optional<double> zip_mu;
  std::optional<double> zip_q;
  std::optional<double> sigma_mean;          // NIG: E[sigma]
  std::vector<double> type_weights;          // mixture: posterior over types
};

// Conjugate posterior mean and central credible interval per parameter:
// p (Beta-Bernoulli), lambda (Gamma-Poisson), mu (NIG), one entry per
// category (Dirichlet-multinomial), p and lambda (ZIP). Truncated families
// are summarized in the truncated measure. level is the central interval
// mass (default 95%).
BlockPosterior block_posterior(const Family& family, const BlockStats& stats,
                               Modality modality, double level = 0.95);

}  // namespace csbm
