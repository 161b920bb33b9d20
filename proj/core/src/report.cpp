#include "csbm/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "csbm/errors.hpp"
#include "csbm/ledger.hpp"

namespace csbm {

namespace {

std::int64_t choose2(std::int64_t m) { return m * (m - 1) / 2; }

std::vector<int> compact_labels(const std::vector<int>& z, int* k_out) {
  std::map<int, int> remap;
  for (int v : z) remap.emplace(v, 0);
  int next = 0;
  for (auto& [lab, idx] : remap) idx = next++;
  std::vector<int> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = remap[z[i]];
  if (k_out) *k_out = next;
  return out;
}

}  // namespace

double ari(const std::vector<int>& z1, const std::vector<int>& z2) {
  if (z1.size() != z2.size() || z1.empty()) {
    throw std::invalid_argument("ari: label vectors must have equal nonzero length");
  }
  int k1 = 0, k2 = 0;
  const std::vector<int> a = compact_labels(z1, &k1);
  const std::vector<int> b = compact_labels(z2, &k2);
  std::vector<std::int64_t> table(static_cast<std::size_t>(k1) * k2, 0);
  std::vector<std::int64_t> rows(k1, 0), cols(k2, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++table[static_cast<std::size_t>(a[i]) * k2 + b[i]];
    ++rows[a[i]];
    ++cols[b[i]];
  }
  std::int64_t index = 0, row_pairs = 0, col_pairs = 0;
  for (std::int64_t v : table) index += choose2(v);
  for (std::int64_t v : rows) row_pairs += choose2(v);
  for (std::int64_t v : cols) col_pairs += choose2(v);
  const double total_pairs = static_cast<double>(choose2(static_cast<std::int64_t>(a.size())));
  const double expected = static_cast<double>(row_pairs) * col_pairs / total_pairs;
  const double max_index = 0.5 * (row_pairs + col_pairs);
  const double denom = max_index - expected;
  if (denom == 0.0) return 1.0;  // both partitions trivial in the same way
  return (index - expected) / denom;
}

std::vector<std::vector<std::int64_t>> confusion(const std::vector<int>& z_true,
                                                 const std::vector<int>& z_map) {
  if (z_true.size() != z_map.size()) {
    throw std::invalid_argument("confusion: length mismatch");
  }
  int k1 = 0, k2 = 0;
  const std::vector<int> a = compact_labels(z_true, &k1);
  const std::vector<int> b = compact_labels(z_map, &k2);
  std::vector<std::vector<std::int64_t>> m(k1, std::vector<std::int64_t>(k2, 0));
  for (std::size_t i = 0; i < a.size(); ++i) ++m[a[i]][b[i]];
  return m;
}

namespace {

std::vector<std::string> raw_stat_names(const FamilySpec& spec, Modality modality) {
  if (spec.uses_zip_indicators()) return {"m_active", "S_sum"};
  switch (modality) {
    case Modality::binary: return {"s"};
    case Modality::count: return {"S"};
    case Modality::real: return {"sum_y", "sum_y2"};
    case Modality::sign: return {"n0", "n_plus", "n_minus"};
    case Modality::dyad4: return {"c00", "c10", "c01", "c11"};
  }
  return {};
}

std::vector<double> raw_stats_of(const BlockStats& st, const FamilySpec& spec,
                                 Modality modality) {
  if (spec.uses_zip_indicators()) {
    return {static_cast<double>(st.cat[0]), static_cast<double>(st.cat[1])};
  }
  switch (modality) {
    case Modality::binary:
    case Modality::count:
      return {static_cast<double>(st.cat[0])};
    case Modality::real:
      return {st.sum_y.value(), st.sum_y2.value()};
    case Modality::sign:
      return {static_cast<double>(st.n - st.cat[0] - st.cat[1]),
              static_cast<double>(st.cat[0]), static_cast<double>(st.cat[1])};
    case Modality::dyad4:
      return {static_cast<double>(st.n - st.cat[0] - st.cat[1] - st.cat[2]),
              static_cast<double>(st.cat[0]), static_cast<double>(st.cat[1]),
              static_cast<double>(st.cat[2])};
  }
  return {};
}

}  // namespace

BlockSummaryTable block_summary_at(const DyadData& data, const std::vector<int>& z,
                                   const FamilySpec& spec, double level,
                                   const ZipIndicators* zip) {
  if (static_cast<int>(z.size()) != data.n()) {
    throw config_error("block_summary: label vector length != n");
  }
  int k = 0;
  const std::vector<int> labels = compact_labels(z, &k);
  Partition part(labels, Partition::Mode::fixed_k, k);
  ZipIndicators local_zip;
  if (spec.uses_zip_indicators() && zip == nullptr) {
    local_zip = ZipIndicators::from_data(data);
    zip = &local_zip;
  }
  BlockLedger ledger(data, spec);
  ledger.init(part, zip);

  BlockSummaryTable table;
  table.stat_names = raw_stat_names(spec, data.modality());
  for (int layer = 0; layer < data.num_layers(); ++layer) {
    for (const auto& [r, s] : BlockLedger::block_keys(k, ledger.unordered_blocks())) {
      const BlockStats& st = ledger.stats(layer, r, s);
      BlockSummaryRow row;
      row.r = r;
      row.s = s;
      row.within = r == s;
      row.n_dyads = st.n;
      row.raw_stats = raw_stats_of(st, spec, data.modality());
      row.posterior =
          block_posterior(spec.family_for(r == s), st, data.modality(), level);
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

BlockSummaryTable block_summary(const DyadData& data, const std::vector<int>& z,
                                const FamilySpec& spec, double level) {
  return block_summary_at(data, z, spec, level, nullptr);
}

std::vector<std::vector<double>> degree_corrected_summary(
    const DyadData& data, const std::vector<int>& z, const DegreePropensity& prop,
    double a, double b) {
  if (data.modality() != Modality::count && data.modality() != Modality::real) {
    throw config_error("degree_corrected_summary: count or real modality required");
  }
  if (static_cast<int>(z.size()) != data.n() ||
      static_cast<int>(prop.theta.size()) != data.n()) {
    throw config_error("degree_corrected_summary: length mismatch");
  }
  int k = 0;
  const std::vector<int> labels = compact_labels(z, &k);
  const bool ordered = data.kind() == Kind::directed;

  std::vector<double> theta_sum(k, 0.0), theta_sq(k, 0.0);
  for (int i = 0; i < data.n(); ++i) {
    theta_sum[labels[i]] += prop.theta[i];
    theta_sq[labels[i]] += prop.theta[i] * prop.theta[i];
  }
  std::vector<std::vector<double>> s_sum(k, std::vector<double>(k, 0.0));
  for (const auto& [key, v] : data.layer(0).values) {
    if (v < 0.0) throw std::domain_error("degree_corrected_summary: negative value");
    const int i = static_cast<int>(key >> 32);
    const int j = static_cast<int>(key & 0xffffffffULL);
    s_sum[labels[i]][labels[j]] += v;
  }
  std::vector<std::vector<double>> omega(k, std::vector<double>(k, 0.0));
  for (int r = 0; r < k; ++r) {
    for (int s = 0; s < k; ++s) {
      double t_exposure, s_total;
      if (r == s) {
        const double within = theta_sum[r] * theta_sum[r] - theta_sq[r];
        t_exposure = ordered ? within : 0.5 * within;
        s_total = s_sum[r][r];
      } else if (ordered) {
        t_exposure = theta_sum[r] * theta_sum[s];
        s_total = s_sum[r][s];
      } else {
        t_exposure = theta_sum[r] * theta_sum[s];
        s_total = s_sum[r][s] + s_sum[s][r];
      }
      omega[r][s] = (a + s_total) / (b + t_exposure);
    }
  }
  return omega;
}

PsmAccumulator::PsmAccumulator(int n_nodes) : n(n_nodes) {
  if (n > 0) counts.assign(static_cast<std::size_t>(n) * (n - 1) / 2, 0);
}

void PsmAccumulator::add_sample(const std::vector<int>& z) {
  if (static_cast<int>(z.size()) != n) {
    throw std::invalid_argument("psm: label length mismatch");
  }
  std::size_t at = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++at) {
      counts[at] += z[i] == z[j] ? 1 : 0;
    }
  }
  ++retained;
}

void PsmAccumulator::merge(const PsmAccumulator& other) {
  if (other.n != n) throw std::invalid_argument("psm merge: size mismatch");
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  retained += other.retained;
}

PsmResult finalize_psm(const PsmAccumulator& acc, const std::vector<int>& z_map) {
  if (acc.retained < 1) throw config_error("finalize_psm: zero retained samples");
  const int n = acc.n;
  PsmResult out;
  out.matrix.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    out.matrix[static_cast<std::size_t>(i) * n + i] = 1.0;
    for (int j = i + 1; j < n; ++j) {
      const double p = static_cast<double>(acc.counts[acc.idx(i, j)]) / acc.retained;
      out.matrix[static_cast<std::size_t>(i) * n + j] = p;
      out.matrix[static_cast<std::size_t>(j) * n + i] = p;
    }
  }
  out.order.resize(n);
  for (int i = 0; i < n; ++i) out.order[i] = i;
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](int a, int b) { return z_map[a] < z_map[b]; });
  return out;
}

// --- writers ------------------------------------------------------------

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write '" + path + "'");
  return out;
}

}  // namespace

void write_block_summary_csv(const BlockSummaryTable& table, const std::string& path) {
  auto out = open_out(path);
  out << "r,s,type,n_dyads";
  for (const auto& name : table.stat_names) out << ',' << name;
  if (!table.rows.empty()) {
    const auto& first = table.rows.front().posterior;
    for (const auto& item : first.items) {
      out << ',' << item.name << "_mean," << item.name << "_lo," << item.name << "_hi";
    }
    if (first.zip_mu) out << ",mu,q";
    if (first.sigma_mean) out << ",sigma_mean";
  }
  out << '\n';
  for (const auto& row : table.rows) {
    out << row.r << ',' << row.s << ',' << (row.within ? "within" : "between") << ','
        << row.n_dyads;
    for (double v : row.raw_stats) out << ',' << fmt(v);
    for (const auto& item : row.posterior.items) {
      out << ',' << fmt(item.mean) << ',' << fmt(item.lo) << ',' << fmt(item.hi);
    }
    if (row.posterior.zip_mu) {
      out << ',' << fmt(*row.posterior.zip_mu) << ',' << fmt(*row.posterior.zip_q);
    }
    if (row.posterior.sigma_mean) out << ',' << fmt(*row.posterior.sigma_mean);
    out << '\n';
  }
}

void write_matrix_csv(const std::vector<std::vector<double>>& m, const std::string& path) {
  auto out = open_out(path);
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      out << fmt(row[j]);
    }
    out << '\n';
  }
}

void write_confusion_csv(const std::vector<std::vector<std::int64_t>>& m,
                         const std::string& path) {
  auto out = open_out(path);
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      out << row[j];
    }
    out << '\n';
  }
}

void write_psm_csv(const PsmResult& psm, int n, const std::string& path) {
  auto out = open_out(path);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) out << ',';
      out << fmt(psm.matrix[static_cast<std::size_t>(i) * n + j]);
    }
    out << '\n';
  }
}

void write_order_csv(const std::vector<int>& order, const std::string& path) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < order.size(); ++i) {
    out << order[i] << '\n';
  }
}

}  // namespace csbm
