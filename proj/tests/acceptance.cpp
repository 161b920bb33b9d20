// Acceptance suite: each criterion prints one PASS/FAIL line.
// Usage: acceptance [N]   (no argument runs all ten)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "csbm/families.hpp"
#include "csbm/ledger.hpp"
#include "csbm/report.hpp"
#include "csbm/rng.hpp"
#include "csbm/sampler.hpp"
#include "csbm/synthgen.hpp"
#include "oracles.hpp"

using namespace csbm;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) {
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

FamilySpec make_spec(FamilyKind diag, FamilyKind offdiag, double x_max = 1.0) {
  FamilySpec spec;
  spec.diag.kind = diag;
  spec.offdiag.kind = offdiag;
  spec.offdiag.x_max = x_max;
  return spec;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

// --- criterion 1: exact posterior oracle ------------------------------------

double tv_against_enumeration(const DyadData& data, const FamilySpec& spec,
                              int sweeps, std::uint64_t seed) {
  const PartitionPrior prior = PartitionPrior::dm(1.0, 2);
  const auto exact = oracles::enumerate_posterior(data, 2, spec, prior);
  Rng rng(seed);
  SamplerState state(data, spec, prior, Partition::random_init(data.n(), 2, rng), seed);
  std::map<std::string, double> freq;
  for (int s = 0; s < sweeps; ++s) {
    state.gibbs_sweep();
    if (spec.uses_zip_indicators()) state.zip_update_indicators();
    freq[oracles::partition_key(state.partition().labels())] += 1.0 / sweeps;
  }
  double tv = 0.0;
  for (const auto& [key, p] : exact) {
    const auto it = freq.find(key);
    tv += std::fabs((it == freq.end() ? 0.0 : it->second) - p);
  }
  for (const auto& [key, p] : freq) {
    if (!exact.count(key)) tv += p;
  }
  return tv / 2.0;
}

Check criterion1() {
  Check c;
  const int sweeps = 200000;

  GenSpec gen;
  gen.n = 8;
  gen.k = 2;
  gen.seed = 71;

  {
    gen.mechanism = GenSpec::Mechanism::bernoulli;
    gen.p_in = 0.7;
    gen.p_out = 0.2;
    const Generated g = generate(gen);
    const auto t0 = std::chrono::steady_clock::now();
    const double tv = tv_against_enumeration(
        g.data, make_spec(FamilyKind::beta_bernoulli, FamilyKind::beta_bernoulli),
        sweeps, 1);
    const double secs = elapsed_s(t0);
    c.expect(tv <= 0.05, "beta-bernoulli TV=" + fmt(tv));
    c.expect(secs < 120.0, "beta-bernoulli runtime " + fmt(secs) + "s");
    c.note("bb TV=" + fmt(tv));
  }
  {
    gen.mechanism = GenSpec::Mechanism::poisson;
    gen.lambda_in = 2.0;
    gen.lambda_out = 0.4;
    const Generated g = generate(gen);
    const auto t0 = std::chrono::steady_clock::now();
    const double tv = tv_against_enumeration(
        g.data, make_spec(FamilyKind::gamma_poisson, FamilyKind::gamma_poisson), sweeps,
        2);
    const double secs = elapsed_s(t0);
    c.expect(tv <= 0.05, "gamma-poisson TV=" + fmt(tv));
    c.expect(secs < 120.0, "gamma-poisson runtime " + fmt(secs) + "s");
    c.note("gp TV=" + fmt(tv));
  }
  {
    gen.mechanism = GenSpec::Mechanism::bernoulli;
    gen.p_in = 0.7;
    gen.p_out = 0.15;
    const Generated g = generate(gen);
    const auto t0 = std::chrono::steady_clock::now();
    const double tv = tv_against_enumeration(
        g.data,
        make_spec(FamilyKind::beta_bernoulli, FamilyKind::trunc_beta_bernoulli, 0.3),
        sweeps, 3);
    const double secs = elapsed_s(t0);
    c.expect(tv <= 0.05, "trunc-beta TV=" + fmt(tv));
    c.expect(secs < 120.0, "trunc-beta runtime " + fmt(secs) + "s");
    c.note("tbb TV=" + fmt(tv));
  }
  return c;
}

// --- criterion 2: S1 recovery ------------------------------------------------

Check criterion2() {
  Check c;
  GenSpec gen;
  gen.n = 150;
  gen.k = 3;
  gen.mechanism = GenSpec::Mechanism::bernoulli;
  gen.p_in = 0.15;
  gen.p_out = 0.02;

  SamplerConfig cfg;
  cfg.k = 3;
  cfg.sweeps = 5000;
  cfg.burn_in = 1000;
  cfg.thin = 10;

  std::vector<double> aris;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    gen.seed = seed;
    cfg.seed = seed;
    const Generated g = generate(gen);
    const auto t0 = std::chrono::steady_clock::now();
    const RunResult res =
        run(cfg, g.data, make_spec(FamilyKind::beta_bernoulli, FamilyKind::beta_bernoulli),
            PartitionPrior::dm(1.0, 3), &g.truth);
    const double secs = elapsed_s(t0);
    c.expect(secs < 60.0, "seed " + std::to_string(seed) + " runtime " + fmt(secs) + "s");
    aris.push_back(res.ari_vs_truth);
  }
  const double med = median(aris);
  c.expect(med >= 0.90, "median ARI=" + fmt(med));
  c.note("median ARI=" + fmt(med));
  return c;
}

// --- criterion 3: S2 recovery and calibration --------------------------------

Check criterion3() {
  Check c;
  GenSpec gen;
  gen.n = 150;
  gen.k = 3;
  gen.mechanism = GenSpec::Mechanism::poisson;
  gen.lambda_in = 1.5;
  gen.lambda_out = 0.15;

  SamplerConfig cfg;
  cfg.k = 3;
  cfg.sweeps = 5000;
  cfg.burn_in = 1000;
  cfg.thin = 10;

  const FamilySpec spec = make_spec(FamilyKind::gamma_poisson, FamilyKind::gamma_poisson);
  int perfect = 0;
  bool calibrated = false;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    gen.seed = seed;
    cfg.seed = seed;
    const Generated g = generate(gen);
    const RunResult res = run(cfg, g.data, spec, PartitionPrior::dm(1.0, 3), &g.truth);
    if (res.ari_vs_truth >= 1.0) ++perfect;
    if (!calibrated && res.ari_vs_truth >= 1.0) {
      calibrated = true;
      const auto table = block_summary(g.data, res.z_map, spec);
      for (const auto& row : table.rows) {
        const double mean = row.posterior.items[0].mean;
        if (row.within) {
          c.expect(std::fabs(mean - 1.5) <= 0.15,
                   "within intensity " + fmt(mean) + " off 1.5");
        } else {
          c.expect(std::fabs(mean - 0.15) <= 0.05,
                   "between intensity " + fmt(mean) + " off 0.15");
        }
      }
    }
  }
  c.expect(perfect >= 4, "ARI=1.0 in " + std::to_string(perfect) + "/5 seeds");
  c.expect(calibrated, "no seed reached ARI=1.0 for calibration checks");
  c.note("perfect=" + std::to_string(perfect) + "/5");
  return c;
}

// --- criterion 4: S3 gap-constrained table + refit ---------------------------

Check criterion4() {
  Check c;
  struct Row {
    bool within;
    std::int64_t n, s;
    double mean, lo, hi;
  };
  // Blockwise edge counts and posterior summaries under the gap prior
  // (x_max = 0.02), reproduced to 4 decimal places.
  const Row rows[] = {
      {true, 1176, 130, 0.1112, 0.0939, 0.1298},
      {false, 2450, 11, 0.0049, 0.0025, 0.0080},
      {false, 2499, 10, 0.0044, 0.0022, 0.0073},
      {true, 1225, 154, 0.1263, 0.1083, 0.1455},
      {false, 2550, 12, 0.0051, 0.0027, 0.0082},
      {true, 1275, 143, 0.1128, 0.0960, 0.1307},
  };
  Family diag;
  diag.kind = FamilyKind::beta_bernoulli;
  Family offdiag;
  offdiag.kind = FamilyKind::trunc_beta_bernoulli;
  offdiag.x_max = 0.02;
  auto round4 = [](double v) { return std::round(v * 1e4) / 1e4; };
  for (const auto& row : rows) {
    BlockStats st;
    st.n = row.n;
    st.cat[0] = row.s;
    const BlockPosterior bp =
        block_posterior(row.within ? diag : offdiag, st, Modality::binary);
    c.expect(round4(bp.items[0].mean) == row.mean,
             "mean " + fmt(bp.items[0].mean) + " != " + fmt(row.mean));
    c.expect(round4(bp.items[0].lo) == row.lo,
             "lo " + fmt(bp.items[0].lo) + " != " + fmt(row.lo));
    c.expect(round4(bp.items[0].hi) == row.hi,
             "hi " + fmt(bp.items[0].hi) + " != " + fmt(row.hi));
  }

  // Refit on regenerated gap-constrained data.
  GenSpec gen;
  gen.n = 150;
  gen.k = 3;
  gen.seed = 42;
  gen.mechanism = GenSpec::Mechanism::bernoulli;
  gen.p_in = 0.12;
  gen.p_out = 0.005;
  const Generated g = generate(gen);
  SamplerConfig cfg;
  cfg.k = 3;
  cfg.sweeps = 5000;
  cfg.burn_in = 1000;
  cfg.thin = 10;
  cfg.seed = 42;
  FamilySpec spec;
  spec.diag = diag;
  spec.offdiag = offdiag;
  const RunResult res = run(cfg, g.data, spec, PartitionPrior::dm(1.0, 3), &g.truth);
  c.expect(res.ari_vs_truth >= 0.90, "refit ARI=" + fmt(res.ari_vs_truth));
  c.note("refit ARI=" + fmt(res.ari_vs_truth));
  return c;
}

// --- criterion 5: truncated-marginal numerics --------------------------------

Check criterion5() {
  Check c;
  Rng rng(20260810);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double a = 0.7 + 4.0 * rng.uniform();
    const double b = 0.7 + 4.0 * rng.uniform();
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng.uniform_below(3000));
    const double x = 0.01 + 0.7 * rng.uniform();
    const std::int64_t s = static_cast<std::int64_t>(
        rng.uniform_below(static_cast<std::uint64_t>(n * x / 2) + 2));
    const double got = tbb_log_marginal(s, n, a, b, x);
    const double want = oracles::tbb_oracle(s, n, a, b, x);
    const double rel = std::fabs(got - want) / std::max(1.0, std::fabs(want));
    worst = std::max(worst, rel);
  }
  c.expect(worst <= 1e-7, "tbb worst rel err " + fmt(worst));
  c.note("tbb worst=" + fmt(worst));

  worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double a = 0.8 + 5.0 * rng.uniform();
    const double b = 0.3 + 4.0 * rng.uniform();
    const std::int64_t n = static_cast<std::int64_t>(rng.uniform_below(2500));
    const double x = 0.05 + 4.0 * rng.uniform();
    const std::int64_t S = static_cast<std::int64_t>(
        rng.uniform_below(static_cast<std::uint64_t>(n * x / 2) + 10));
    const double got = tgp_log_marginal(S, n, a, b, x);
    const double want = oracles::tgp_oracle(S, n, a, b, x);
    const double rel = std::fabs(got - want) / std::max(1.0, std::fabs(want));
    worst = std::max(worst, rel);
  }
  c.expect(worst <= 1e-7, "tgp worst rel err " + fmt(worst));
  c.note("tgp worst=" + fmt(worst));
  return c;
}

// --- criterion 6: ZIP recovery ------------------------------------------------

Check criterion6() {
  Check c;
  GenSpec gen;
  gen.n = 120;
  gen.k = 3;
  gen.seed = 7;
  gen.mechanism = GenSpec::Mechanism::zip;
  gen.zip_p_in = 0.5;
  gen.zip_p_out = 0.05;
  gen.lambda_in = 2.0;
  gen.lambda_out = 0.4;
  const Generated g = generate(gen);

  FamilySpec spec = make_spec(FamilyKind::zip, FamilyKind::zip);
  SamplerConfig cfg;
  cfg.k = 3;
  cfg.sweeps = 3000;
  cfg.burn_in = 1000;
  cfg.thin = 10;
  cfg.seed = 7;
  const RunResult res = run(cfg, g.data, spec, PartitionPrior::dm(1.0, 3), &g.truth);
  c.note("ARI=" + fmt(res.ari_vs_truth));

  const auto table = block_summary_at(g.data, res.z_map, spec, 0.95,
                                      res.map_zip ? &*res.map_zip : nullptr);
  for (const auto& row : table.rows) {
    const double p_mean = row.posterior.items[0].mean;
    const double l_mean = row.posterior.items[1].mean;
    const double mu = *row.posterior.zip_mu;
    if (row.within) {
      c.expect(p_mean >= 0.45 && p_mean <= 0.56, "within p_mean " + fmt(p_mean));
      c.expect(l_mean >= 1.7 && l_mean <= 2.2, "within lambda_mean " + fmt(l_mean));
    } else {
      c.expect(mu < 0.05, "between mu_mean " + fmt(mu));
    }
  }
  return c;
}

// --- criterion 7: multiplex dominance ------------------------------------------

Check criterion7() {
  Check c;
  GenSpec gen;
  gen.n = 150;
  gen.k = 3;
  gen.mechanism = GenSpec::Mechanism::multiplex;
  gen.layers = {{{0.25, 0.05, 0.05}, 0.02},
                {{0.05, 0.25, 0.05}, 0.02},
                {{0.05, 0.05, 0.25}, 0.02}};

  SamplerConfig cfg;
  cfg.k = 3;
  cfg.sweeps = 1500;
  cfg.burn_in = 500;
  cfg.thin = 10;

  const FamilySpec spec = make_spec(FamilyKind::beta_bernoulli, FamilyKind::beta_bernoulli);
  int dominated = 0;
  int multiplex_perfect = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    gen.seed = seed;
    cfg.seed = seed;
    const Generated g = generate(gen);

    // layer 0 alone
    std::vector<std::vector<std::uint64_t>> keys(1);
    std::vector<std::vector<double>> vals(1);
    for (const auto& [k, v] : g.data.layer(0).values) {
      keys[0].push_back(k);
      vals[0].push_back(v);
    }
    const DyadData single =
        DyadData::from_dyads(g.data.n(), Kind::undirected, Modality::binary, keys, vals);

    const RunResult multi = run(cfg, g.data, spec, PartitionPrior::dm(1.0, 3), &g.truth);
    const RunResult lone = run(cfg, single, spec, PartitionPrior::dm(1.0, 3), &g.truth);
    if (multi.ari_vs_truth >= lone.ari_vs_truth) ++dominated;
    if (multi.ari_vs_truth >= 1.0) ++multiplex_perfect;
  }
  c.expect(dominated >= 9, "multiplex >= single in " + std::to_string(dominated) + "/10");
  c.expect(multiplex_perfect >= 7,
           "multiplex ARI=1.0 in " + std::to_string(multiplex_perfect) + "/10");
  c.note("dominated=" + std::to_string(dominated) + "/10, perfect=" +
         std::to_string(multiplex_perfect) + "/10");
  return c;
}

// --- criterion 8: dyad-state and signed fits ------------------------------------

Check criterion8() {
  Check c;
  {
    GenSpec gen;
    gen.n = 120;
    gen.k = 2;
    gen.mechanism = GenSpec::Mechanism::dyad4;
    gen.dyad4_pi_in = {0.76, 0.08, 0.08, 0.08};
    gen.dyad4_pi_out = {0.93, 0.02, 0.04, 0.01};
    FamilySpec spec;
    spec.diag.kind = FamilyKind::dirichlet_multinomial;
    spec.diag.alpha = {1, 1, 1, 1};
    spec.offdiag = spec.diag;
    SamplerConfig cfg;
    cfg.k = 2;
    cfg.sweeps = 3000;
    cfg.burn_in = 1000;
    cfg.thin = 10;
    std::vector<double> aris;
    bool ordered = false;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      gen.seed = seed;
      cfg.seed = seed;
      const Generated g = generate(gen);
      const RunResult res = run(cfg, g.data, spec, PartitionPrior::dm(1.0, 2), &g.truth);
      aris.push_back(res.ari_vs_truth);
      if (!ordered && res.ari_vs_truth >= 0.9) {
        ordered = true;
        const auto table = block_summary(g.data, res.z_map, spec);
        double within_mutual = 1.0, between_mutual = 0.0;
        for (const auto& row : table.rows) {
          const double p11 = row.posterior.items[3].mean;
          if (row.within) {
            within_mutual = std::min(within_mutual, p11);
          } else {
            between_mutual = std::max(between_mutual, p11);
          }
        }
        c.expect(within_mutual > between_mutual,
                 "dyad4 mutual mass not ordered: within " + fmt(within_mutual) +
                     " vs between " + fmt(between_mutual));
      }
    }
    const double med = median(aris);
    c.expect(med >= 0.9, "dyad4 median ARI=" + fmt(med));
    c.expect(ordered, "no dyad4 seed recovered well enough to check ordering");
    c.note("dyad4 median ARI=" + fmt(med));
  }
  {
    GenSpec gen;
    gen.n = 150;
    gen.k = 3;
    gen.mechanism = GenSpec::Mechanism::sign;
    gen.sign_theta_in = {0.80, 0.15, 0.05};
    gen.sign_theta_out = {0.90, 0.03, 0.07};
    FamilySpec spec;
    spec.diag.kind = FamilyKind::dirichlet_multinomial;
    spec.diag.alpha = {1, 1, 1};
    spec.offdiag = spec.diag;
    SamplerConfig cfg;
    cfg.k = 3;
    cfg.sweeps = 3000;
    cfg.burn_in = 1000;
    cfg.thin = 10;
    std::vector<double> aris;
    bool ordered = false;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      gen.seed = seed;
      cfg.seed = seed;
      const Generated g = generate(gen);
      const RunResult res = run(cfg, g.data, spec, PartitionPrior::dm(1.0, 3), &g.truth);
      aris.push_back(res.ari_vs_truth);
      if (!ordered && res.ari_vs_truth >= 0.9) {
        ordered = true;
        const auto table = block_summary(g.data, res.z_map, spec);
        double within_plus = 1.0, between_plus = 0.0;
        for (const auto& row : table.rows) {
          const double pp = row.posterior.items[1].mean;
          if (row.within) {
            within_plus = std::min(within_plus, pp);
          } else {
            between_plus = std::max(between_plus, pp);
          }
        }
        c.expect(within_plus > between_plus,
                 "signed positive mass not ordered: within " + fmt(within_plus) +
                     " vs between " + fmt(between_plus));
      }
    }
    const double med = median(aris);
    c.expect(med >= 0.9, "signed median ARI=" + fmt(med));
    c.expect(ordered, "no signed seed recovered well enough to check ordering");
    c.note("signed median ARI=" + fmt(med));
  }
  return c;
}

// --- criterion 9: Occam property -------------------------------------------------

Check criterion9() {
  Check c;
  GenSpec gen;
  gen.n = 100;
  gen.k = 1;
  gen.mechanism = GenSpec::Mechanism::bernoulli;
  gen.p_in = 0.05;
  gen.p_out = 0.05;

  SamplerConfig cfg;
  cfg.sweeps = 1000;
  cfg.burn_in = 200;
  cfg.thin = 5;

  const FamilySpec spec = make_spec(FamilyKind::beta_bernoulli, FamilyKind::beta_bernoulli);
  int k1_wins = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    gen.seed = seed;
    cfg.seed = seed;
    const Generated g = generate(gen);
    const auto rows = select_k(g.data, {1, 2, 3}, cfg, spec, 1.0);
    int best_k = rows[0].k;
    double best = rows[0].best_log_posterior;
    for (const auto& row : rows) {
      if (row.best_log_posterior > best) {
        best = row.best_log_posterior;
        best_k = row.k;
      }
    }
    if (best_k == 1) ++k1_wins;
  }
  c.expect(k1_wins >= 8, "K=1 ranked first in " + std::to_string(k1_wins) + "/10 seeds");
  c.note("K=1 wins " + std::to_string(k1_wins) + "/10");
  return c;
}

// --- criterion 10: ledger integrity -----------------------------------------------

bool stats_match(const BlockStats& a, const BlockStats& b, double tol, bool* int_exact) {
  if (a.n != b.n || a.cat != b.cat) {
    *int_exact = false;
    return false;
  }
  return std::fabs(a.sum_y.value() - b.sum_y.value()) <= tol &&
         std::fabs(a.sum_y2.value() - b.sum_y2.value()) <= tol;
}

Check criterion10() {
  Check c;
  // 1e6 random detach/attach on a random graph with n=200: binary (integer
  // stats, exact) and gaussian (real accumulators within 1e-7).
  for (const bool gaussian : {false, true}) {
    GenSpec gen;
    gen.n = 200;
    gen.k = 4;
    gen.seed = 1000 + gaussian;
    gen.mechanism = gaussian ? GenSpec::Mechanism::gaussian : GenSpec::Mechanism::bernoulli;
    gen.p_in = 0.08;
    gen.p_out = 0.03;
    const Generated g = generate(gen);
    const FamilySpec spec = gaussian
                                ? make_spec(FamilyKind::nig, FamilyKind::nig)
                                : make_spec(FamilyKind::beta_bernoulli,
                                            FamilyKind::beta_bernoulli);
    Rng rng(5);
    Partition part = Partition::random_init(200, 4, rng);
    BlockLedger ledger(g.data, spec);
    ledger.init(part);
    const int ops = 1000000;
    for (int op = 0; op < ops; ++op) {
      const int i = static_cast<int>(rng.uniform_below(200));
      ledger.detach(part, i);
      ledger.attach(part, i, static_cast<int>(rng.uniform_below(4)));
    }
    BlockLedger fresh(g.data, spec);
    fresh.init(part);
    bool int_exact = true;
    bool all = true;
    for (int r = 0; r < 4; ++r) {
      for (int s = r; s < 4; ++s) {
        all = all && stats_match(ledger.stats(0, r, s), fresh.stats(0, r, s), 1e-7,
                                 &int_exact);
      }
    }
    c.expect(all, std::string(gaussian ? "gaussian" : "binary") +
                      " ledger mismatch after 1e6 ops");
    c.expect(int_exact, "integer statistics drifted");
  }

  // score_move vs full-recompute deltas on n <= 8 instances.
  double worst = 0.0;
  for (auto mech : {GenSpec::Mechanism::bernoulli, GenSpec::Mechanism::poisson,
                    GenSpec::Mechanism::gaussian}) {
    GenSpec gen;
    gen.n = 8;
    gen.k = 2;
    gen.seed = 17;
    gen.mechanism = mech;
    gen.p_in = 0.6;
    gen.p_out = 0.2;
    const Generated g = generate(gen);
    FamilySpec spec;
    switch (mech) {
      case GenSpec::Mechanism::poisson:
        spec = make_spec(FamilyKind::gamma_poisson, FamilyKind::gamma_poisson);
        break;
      case GenSpec::Mechanism::gaussian:
        spec = make_spec(FamilyKind::nig, FamilyKind::nig);
        break;
      default:
        spec = make_spec(FamilyKind::beta_bernoulli, FamilyKind::beta_bernoulli);
        break;
    }
    const PartitionPrior prior = PartitionPrior::dm(1.0, 2);
    Rng rng(3);
    for (int trial = 0; trial < 40; ++trial) {
      Partition part = Partition::random_init(8, 2, rng);
      BlockLedger ledger(g.data, spec);
      ledger.init(part);
      const int i = static_cast<int>(rng.uniform_below(8));
      ledger.detach(part, i);
      const double s0 = ledger.score_move(part, i, 0);
      const double s1 = ledger.score_move(part, i, 1);
      // full recompute of both completed assignments
      Partition p0 = part, p1 = part;
      p0.attach_node(i, 0);
      p1.attach_node(i, 1);
      const double f0 = full_log_posterior(g.data, p0, spec, prior) - prior.log_prior(p0);
      const double f1 = full_log_posterior(g.data, p1, spec, prior) - prior.log_prior(p1);
      worst = std::max(worst, std::fabs((s0 - s1) - (f0 - f1)));
      ledger.attach(part, i, 0);
    }
  }
  c.expect(worst <= 1e-8, "score_move delta mismatch " + fmt(worst));
  c.note("score delta worst=" + fmt(worst));
  return c;
}

const char* kDescriptions[] = {
    "exact-posterior oracle (n=8 enumeration, TV <= 0.05, three families)",
    "S1 binary recovery (median ARI >= 0.90 over 5 seeds)",
    "S2 count recovery and intensity calibration",
    "S3 gap-constrained table reproduction + refit ARI",
    "truncated-marginal numerics vs quadrature oracles (200-point battery)",
    "ZIP recovery: activity/intensity bands at the MAP state",
    "multiplex dominance over single-layer fits",
    "dyad-state and signed recovery with ordered block masses",
    "Occam check: K=1 wins on homogeneous ER data",
    "ledger integrity: 1e6 ops + score_move deltas",
};

Check run_criterion(int n) {
  switch (n) {
    case 1: return criterion1();
    case 2: return criterion2();
    case 3: return criterion3();
    case 4: return criterion4();
    case 5: return criterion5();
    case 6: return criterion6();
    case 7: return criterion7();
    case 8: return criterion8();
    case 9: return criterion9();
    case 10: return criterion10();
  }
  Check c;
  c.expect(false, "unknown criterion");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> todo;
  if (argc > 1) {
    todo.push_back(std::atoi(argv[1]));
  } else {
    for (int n = 1; n <= 10; ++n) todo.push_back(n);
  }
  int failures = 0;
  for (int n : todo) {
    if (n < 1 || n > 10) {
      std::printf("FAIL criterion %d: unknown criterion\n", n);
      ++failures;
      continue;
    }
    const Check c = run_criterion(n);
    std::printf("%s criterion %d: %s%s%s\n", c.ok ? "PASS" : "FAIL", n,
                kDescriptions[n - 1], c.detail.empty() ? "" : " -- ",
                c.detail.c_str());
    std::fflush(stdout);
    failures += c.ok ? 0 : 1;
  }
  return failures;
}
