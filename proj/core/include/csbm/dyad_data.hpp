#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace csbm {

enum class Kind { undirected, directed };

enum class Modality { binary, count, real, sign, dyad4 };

Kind kind_from_string(const std::string& s);
Modality modality_from_string(const std::string& s);
std::string to_string(Kind k);
std::string to_string(Modality m);

// Dyad orientation tags in a node's incidence list.
//
//   undirected/sign : value of the dyad {i,j}; `forward` unused (true).
//   directed        : forward=true means the edge i->other.
//   dyad4           : value is the state code 1..3 (1 = lower->upper only,
//                     2 = upper->lower only, 3 = mutual) for the canonical
//                     pair (min,max); forward=true when i is the lower index.
struct Incident {
  int other;
  double value;
  bool forward;
};

// Immutable observed network. One instance may be shared read-only by any
// number of chains.
class DyadData {
 public:
  struct Layer {
    // Canonical key: (i<<32)|j with i<j for undirected-style storage,
    // ordered (i,j) for directed. Absent key means value 0 except for the
    // real modality, where zeros are stored explicitly as observations.
    std::unordered_map<std::uint64_t, double> values;
    std::vector<std::vector<Incident>> adjacency;
  };

  static DyadData from_dyads(int n, Kind kind, Modality modality,
                             const std::vector<std::vector<std::uint64_t>>& keys,
                             const std::vector<std::vector<double>>& vals);

  int n() const { return n_; }
  Kind kind() const { return kind_; }
  Modality modality() const { return modality_; }
  int num_layers() const { return static_cast<int>(layers_.size()); }
  const Layer& layer(int l) const { return layers_[l]; }

  // 0 when the dyad is absent. Canonicalizes (i,j) for undirected storage.
  double value_at(int layer, int i, int j) const;

  static std::uint64_t key(int i, int j) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
           static_cast<std::uint32_t>(j);
  }
  // Whether dyads are stored once per unordered pair.
  bool unordered_storage() const {
    return kind_ == Kind::undirected || modality_ == Modality::dyad4;
  }
  std::uint64_t canonical_key(int i, int j) const {
    if (unordered_storage() && i > j) std::swap(i, j);
    return key(i, j);
  }

  // Number of dyads |D| in one layer.
  std::int64_t total_dyads() const;

  // Sum over all layers of ln(y!) for count-like values; the z-constant
  // factorial term of Poisson marginals.
  double log_factorial_sum() const;

  std::vector<std::string> node_names;  // optional, empty when unnamed

  bool operator==(const DyadData& other) const;

 private:
  int n_ = 0;
  Kind kind_ = Kind::undirected;
  Modality modality_ = Modality::binary;
  std::vector<Layer> layers_;
};

// Node degree propensities, normalized to mean 1.
struct DegreePropensity {
  std::vector<double> theta;
};

// Text edge list: `src dst [value]`, whitespace separated, `#` comments,
// value defaults to 1. Duplicates merge by sum (count/real), OR (binary),
// overwrite (sign). dyad4 parses a *directed binary* list and derives the
// four-state dyad encoding by pairing (A_ij, A_ji).
DyadData load_edge_list(const std::string& path, Kind kind, Modality modality,
                        std::optional<int> n_hint = std::nullopt);

// One file per layer; all layers share n = global max index + 1.
DyadData load_multiplex(const std::vector<std::string>& paths, Kind kind,
                        Modality modality,
                        std::optional<int> n_hint = std::nullopt);

// Writes layer `layer` in the edge-list format above (dyad4 re-emits the
// directed binary list). Round-trips through load_edge_list.
void write_edge_list(const DyadData& data, int layer, const std::string& path);

// `index<TAB>label` files.
std::vector<int> load_labels(const std::string& path, int n);
void write_labels(const std::string& path, const std::vector<int>& labels);

// `index<TAB>name` node-name map.
std::vector<std::string> load_label_map(const std::string& path, int n);

// theta_i = strength_i / mean strength, zero-strength nodes floored at 1e-6
// and the vector renormalized to mean 1. Single layer, nonnegative values.
DegreePropensity estimate_propensities(const DyadData& data);

}  // namespace csbm
