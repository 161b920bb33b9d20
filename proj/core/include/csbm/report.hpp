#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csbm/dyad_data.hpp"
#include "csbm/families.hpp"

namespace csbm {

// Adjusted Rand index between two equal-length label vectors; exact 64-bit
// pair counting.
double ari(const std::vector<int>& z1, const std::vector<int>& z2);

// K1 x K2 count matrix; no permutation applied.
std::vector<std::vector<std::int64_t>> confusion(const std::vector<int>& z_true,
                                                 const std::vector<int>& z_map);

struct BlockSummaryRow {
  int r, s;
  bool within;
  std::int64_t n_dyads;
  std::vector<double> raw_stats;  // family-specific observed statistics
  BlockPosterior posterior;
};

struct BlockSummaryTable {
  std::vector<std::string> stat_names;
  std::vector<BlockSummaryRow> rows;
};

// Ledger built at z, conjugate posterior per block; one row per block per
// layer. ZIP zero dyads are treated as inactive unless indicators are given.
BlockSummaryTable block_summary(const DyadData& data, const std::vector<int>& z,
                                const FamilySpec& spec, double level = 0.95);

struct ZipIndicators;
BlockSummaryTable block_summary_at(const DyadData& data, const std::vector<int>& z,
                                   const FamilySpec& spec, double level,
                                   const ZipIndicators* zip);

// Exposure-adjusted Gamma-Poisson block means:
// omega_ab = (a + S_ab) / (b + T_ab) with T_ab = sum_{(i,j) in D_ab} theta_i theta_j.
std::vector<std::vector<double>> degree_corrected_summary(
    const DyadData& data, const std::vector<int>& z, const DegreePropensity& prop,
    double a, double b);

struct PsmAccumulator {
  int n = 0;
  std::int64_t retained = 0;
  std::vector<std::uint32_t> counts;  // strict upper triangle, row-major

  explicit PsmAccumulator(int n_nodes = 0);
  std::size_t idx(int i, int j) const {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
  }
  void add_sample(const std::vector<int>& z);
  void merge(const PsmAccumulator& other);
};

struct PsmResult {
  std::vector<double> matrix;  // dense n x n, row-major; unit diagonal
  std::vector<int> order;      // display ordering grouped by z_map clusters
};

PsmResult finalize_psm(const PsmAccumulator& acc, const std::vector<int>& z_map);

// --- CSV / file writers -------------------------------------------------

void write_block_summary_csv(const BlockSummaryTable& table, const std::string& path);
void write_matrix_csv(const std::vector<std::vector<double>>& m, const std::string& path);
void write_confusion_csv(const std::vector<std::vector<std::int64_t>>& m,
                         const std::string& path);
void write_psm_csv(const PsmResult& psm, int n, const std::string& path);
void write_order_csv(const std::vector<int>& order, const std::string& path);

}  // namespace csbm
