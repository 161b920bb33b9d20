#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csbm/dyad_data.hpp"
#include "csbm/families.hpp"
#include "csbm/priors.hpp"
#include "csbm/sampler.hpp"
#include "csbm/synthgen.hpp"

namespace csbm {

// Flag overrides applied on top of the config file.
struct CliOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> sweeps;
  std::optional<int> k;
  std::optional<std::string> out;
};

struct RunConfig {
  std::string command;  // generate | fit | select-k | report
  std::string out_dir;

  // data block (fit/select-k/report)
  std::vector<std::string> data_paths;
  Kind kind = Kind::undirected;
  Modality modality = Modality::binary;
  std::optional<int> n_hint;
  std::string names_path;

  std::string truth_path;

  GenSpec gen;
  FamilySpec family;
  PartitionPrior prior = PartitionPrior::dm(1.0, 1);
  SamplerConfig sampler;
  std::string init_labels_path;
  std::vector<int> k_grid;

  // report block
  std::string report_z_path;
  double level = 0.95;
  bool degree_corrected = false;
  double dc_a = 1.0, dc_b = 1.0;
};

// Parses the JSON config file; unknown keys are hard errors. Overrides are
// applied after parsing (seed also steers the generator).
RunConfig parse_config_file(const std::string& path, const CliOverrides& overrides);
RunConfig parse_config_text(const std::string& text, const CliOverrides& overrides);

// Runs the configured command and writes all artifacts plus manifest.json
// under out_dir. Returns the manifest as serialized JSON.
std::string execute(const RunConfig& config);

}  // namespace csbm
