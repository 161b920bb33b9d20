#include "csbm/dyad_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "csbm/errors.hpp"
#include "csbm/specfun.hpp"

namespace csbm {

Kind kind_from_string(const std::string& s) {
  if (s == "undirected") return Kind::undirected;
  if (s == "directed") return Kind::directed;
  throw config_error("unknown kind '" + s + "'");
}

Modality modality_from_string(const std::string& s) {
  if (s == "binary") return Modality::binary;
  if (s == "count") return Modality::count;
  if (s == "real") return Modality::real;
  if (s == "signed") return Modality::sign;
  if (s == "dyad4") return Modality::dyad4;
  throw config_error("unknown modality '" + s + "'");
}

std::string to_string(Kind k) {
  return k == Kind::undirected ? "undirected" : "directed";
}

std::string to_string(Modality m) {
  switch (m) {
    case Modality::binary: return "binary";
    case Modality::count: return "count";
    case Modality::real: return "real";
    case Modality::sign: return "signed";
    case Modality::dyad4: return "dyad4";
  }
  return "?";
}

namespace {

void validate_value(Modality modality, double v, const std::string& where) {
  switch (modality) {
    case Modality::binary:
      if (v != 0.0 && v != 1.0) throw config_error(where + ": binary value must be 0 or 1");
      break;
    case Modality::count:
      if (v < 0.0 || v != std::floor(v)) {
        throw config_error(where + ": count value must be a nonnegative integer");
      }
      break;
    case Modality::real:
      if (!std::isfinite(v)) throw config_error(where + ": real value must be finite");
      break;
    case Modality::sign:
      if (v != -1.0 && v != 0.0 && v != 1.0) {
        throw config_error(where + ": signed value must be -1, 0 or +1");
      }
      break;
    case Modality::dyad4:
      if (v != 0.0 && v != 1.0) {
        throw config_error(where + ": dyad4 input is a directed binary edge list");
      }
      break;
  }
}

struct RawLayer {
  // merged values keyed canonically
  std::map<std::uint64_t, double> merged;
  int max_index = -1;
};

RawLayer parse_file(const std::string& path, Kind kind, Modality modality) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open edge list '" + path + "'");
  const bool ordered = (kind == Kind::directed);  // dyad4 pairs after merging
  RawLayer raw;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream ss(line);
    long long src = 0, dst = 0;
    if (!(ss >> src)) continue;  // blank or comment-only line
    const std::string where = path + ":" + std::to_string(lineno);
    if (!(ss >> dst)) throw config_error(where + ": expected `src dst [value]`");
    double value = 1.0;
    if (std::string tok; ss >> tok) {
      try {
        std::size_t used = 0;
        value = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw config_error(where + ": bad value '" + tok + "'");
      }
      if (std::string extra; ss >> extra) {
        throw config_error(where + ": trailing token '" + extra + "'");
      }
    }
    if (src < 0 || dst < 0) throw config_error(where + ": negative node index");
    if (src == dst) throw config_error(where + ": self-loops are not allowed");
    validate_value(modality, value, where);
    raw.max_index = std::max(raw.max_index, static_cast<int>(std::max(src, dst)));
    int i = static_cast<int>(src), j = static_cast<int>(dst);
    if (!ordered && i > j) std::swap(i, j);
    const std::uint64_t k = DyadData::key(i, j);
    auto [it, inserted] = raw.merged.try_emplace(k, value);
    if (!inserted) {
      switch (modality) {
        case Modality::binary:
        case Modality::dyad4:
          it->second = (it->second != 0.0 || value != 0.0) ? 1.0 : 0.0;
          break;
        case Modality::count:
        case Modality::real:
          it->second += value;
          break;
        case Modality::sign:
          it->second = value;
          break;
      }
    }
  }
  return raw;
}

}  // namespace

DyadData DyadData::from_dyads(int n, Kind kind, Modality modality,
                              const std::vector<std::vector<std::uint64_t>>& keys,
                              const std::vector<std::vector<double>>& vals) {
  if (keys.size() != vals.size() || keys.empty()) {
    throw config_error("from_dyads: inconsistent layer arrays");
  }
  if (modality == Modality::dyad4 && kind != Kind::directed) {
    throw config_error("dyad4 modality requires directed data");
  }
  if (modality == Modality::sign && kind != Kind::undirected) {
    throw config_error("signed modality requires undirected data");
  }
  DyadData d;
  d.n_ = n;
  d.kind_ = kind;
  d.modality_ = modality;
  d.layers_.resize(keys.size());
  for (std::size_t l = 0; l < keys.size(); ++l) {
    auto& layer = d.layers_[l];
    layer.adjacency.assign(n, {});
    for (std::size_t e = 0; e < keys[l].size(); ++e) {
      const std::uint64_t k = keys[l][e];
      const int i = static_cast<int>(k >> 32);
      const int j = static_cast<int>(k & 0xffffffffULL);
      const double v = vals[l][e];
      if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
        throw config_error("from_dyads: bad dyad (" + std::to_string(i) + "," +
                           std::to_string(j) + ") for n=" + std::to_string(n));
      }
      if (d.unordered_storage() && i > j) {
        throw config_error("from_dyads: key not canonical");
      }
      if (v == 0.0 && modality != Modality::real) continue;  // absent <=> 0
      if (!layer.values.emplace(k, v).second) {
        throw config_error("from_dyads: duplicate dyad key");
      }
      if (kind == Kind::directed && modality != Modality::dyad4) {
        layer.adjacency[i].push_back({j, v, true});
        layer.adjacency[j].push_back({i, v, false});
      } else {
        layer.adjacency[i].push_back({j, v, true});
        layer.adjacency[j].push_back({i, v, false});
      }
    }
  }
  return d;
}

double DyadData::value_at(int layer, int i, int j) const {
  const auto& m = layers_[layer].values;
  const auto it = m.find(canonical_key(i, j));
  return it == m.end() ? 0.0 : it->second;
}

std::int64_t DyadData::total_dyads() const {
  const std::int64_t n = n_;
  if (kind_ == Kind::directed && modality_ != Modality::dyad4) return n * (n - 1);
  return n * (n - 1) / 2;
}

double DyadData::log_factorial_sum() const {
  if (modality_ != Modality::count) return 0.0;
  double total = 0.0;
  for (const auto& layer : layers_) {
    for (const auto& [k, v] : layer.values) {
      if (v > 1.0) total += specfun::log_gamma(v + 1.0);
    }
  }
  return total;
}

bool DyadData::operator==(const DyadData& other) const {
  if (n_ != other.n_ || kind_ != other.kind_ || modality_ != other.modality_ ||
      layers_.size() != other.layers_.size()) {
    return false;
  }
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    if (layers_[l].values != other.layers_[l].values) return false;
  }
  return true;
}

namespace {

DyadData build_from_raw(const std::vector<RawLayer>& raws, Kind kind,
                        Modality modality, std::optional<int> n_hint) {
  int max_index = -1;
  for (const auto& r : raws) max_index = std::max(max_index, r.max_index);
  int n = max_index + 1;
  if (n_hint) {
    if (*n_hint < n) {
      throw config_error("n_hint=" + std::to_string(*n_hint) +
                         " smaller than max node index + 1 = " + std::to_string(n));
    }
    n = *n_hint;
  }
  if (n < 1) throw config_error("edge list defines no nodes");

  std::vector<std::vector<std::uint64_t>> keys(raws.size());
  std::vector<std::vector<double>> vals(raws.size());
  for (std::size_t l = 0; l < raws.size(); ++l) {
    if (modality == Modality::dyad4) {
      // Pair ordered binary edges (A_ij, A_ji) into one state per i<j.
      std::map<std::uint64_t, int> states;
      for (const auto& [k, v] : raws[l].merged) {
        if (v == 0.0) continue;
        const int i = static_cast<int>(k >> 32);
        const int j = static_cast<int>(k & 0xffffffffULL);
        const bool lower_to_upper = i < j;
        const std::uint64_t ck = lower_to_upper ? k : DyadData::key(j, i);
        states[ck] |= lower_to_upper ? 1 : 2;
      }
      for (const auto& [k, s] : states) {
        keys[l].push_back(k);
        vals[l].push_back(static_cast<double>(s));
      }
    } else {
      for (const auto& [k, v] : raws[l].merged) {
        if (v == 0.0 && modality != Modality::real) continue;
        keys[l].push_back(k);
        vals[l].push_back(v);
      }
    }
  }
  return DyadData::from_dyads(n, kind, modality, keys, vals);
}

}  // namespace

DyadData load_edge_list(const std::string& path, Kind kind, Modality modality,
                        std::optional<int> n_hint) {
  std::vector<RawLayer> raws;
  raws.push_back(parse_file(path, kind, modality));
  return build_from_raw(raws, kind, modality, n_hint);
}

DyadData load_multiplex(const std::vector<std::string>& paths, Kind kind,
                        Modality modality, std::optional<int> n_hint) {
  if (paths.empty()) throw config_error("load_multiplex: empty path list");
  std::vector<RawLayer> raws;
  raws.reserve(paths.size());
  for (const auto& p : paths) raws.push_back(parse_file(p, kind, modality));
  return build_from_raw(raws, kind, modality, n_hint);
}

void write_edge_list(const DyadData& data, int layer, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write '" + path + "'");
  std::map<std::uint64_t, double> sorted(data.layer(layer).values.begin(),
                                         data.layer(layer).values.end());
  char buf[64];
  for (const auto& [k, v] : sorted) {
    const int i = static_cast<int>(k >> 32);
    const int j = static_cast<int>(k & 0xffffffffULL);
    if (data.modality() == Modality::dyad4) {
      const int s = static_cast<int>(v);
      if (s & 1) out << i << ' ' << j << '\n';
      if (s & 2) out << j << ' ' << i << '\n';
    } else if (data.modality() == Modality::real) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << i << ' ' << j << ' ' << buf << '\n';
    } else {
      out << i << ' ' << j << ' ' << static_cast<long long>(v) << '\n';
    }
  }
}

std::vector<int> load_labels(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open label file '" + path + "'");
  std::vector<int> labels(n, -1);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    long long idx = 0, lab = 0;
    if (!(ss >> idx)) continue;
    if (!(ss >> lab) || idx < 0 || idx >= n) {
      throw config_error(path + ":" + std::to_string(lineno) + ": bad label row");
    }
    labels[idx] = static_cast<int>(lab);
  }
  for (int i = 0; i < n; ++i) {
    if (labels[i] < 0) {
      throw config_error(path + ": node " + std::to_string(i) + " has no label");
    }
  }
  return labels;
}

void write_labels(const std::string& path, const std::vector<int>& labels) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write '" + path + "'");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << i << '\t' << labels[i] << '\n';
  }
}

std::vector<std::string> load_label_map(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open label map '" + path + "'");
  std::vector<std::string> names(n);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw config_error(path + ":" + std::to_string(lineno) + ": expected `index<TAB>name`");
    }
    const int idx = std::stoi(line.substr(0, tab));
    if (idx < 0 || idx >= n) {
      throw config_error(path + ":" + std::to_string(lineno) + ": index out of range");
    }
    names[idx] = line.substr(tab + 1);
  }
  return names;
}

DegreePropensity estimate_propensities(const DyadData& data) {
  if (data.num_layers() != 1) {
    throw config_error("estimate_propensities: single layer required");
  }
  if (data.modality() != Modality::binary && data.modality() != Modality::count &&
      data.modality() != Modality::real) {
    throw config_error("estimate_propensities: binary/count/real modality required");
  }
  const int n = data.n();
  std::vector<double> strength(n, 0.0);
  for (const auto& [k, v] : data.layer(0).values) {
    if (v < 0.0) throw std::domain_error("estimate_propensities: negative weight");
    const int i = static_cast<int>(k >> 32);
    const int j = static_cast<int>(k & 0xffffffffULL);
    strength[i] += v;
    strength[j] += v;
  }
  double total = 0.0;
  for (double s : strength) total += s;
  DegreePropensity out;
  out.theta.resize(n);
  if (total <= 0.0) {
    std::fill(out.theta.begin(), out.theta.end(), 1.0);
    return out;
  }
  const double mean = total / n;
  double renorm_total = 0.0;
  for (int i = 0; i < n; ++i) {
    out.theta[i] = std::max(strength[i] / mean, 1e-6);
    renorm_total += out.theta[i];
  }
  const double scale = n / renorm_total;
  for (double& t : out.theta) t *= scale;
  return out;
}

}  // namespace csbm
