#include "csbm/run_config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "csbm/errors.hpp"
#include "csbm/report.hpp"

namespace csbm {

namespace {

using nlohmann::ordered_json;

// Object view that records consumed keys so typos become hard errors.
class Strict {
 public:
  Strict(const ordered_json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw config_error(path_ + ": expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  template <typename T>
  T get(const std::string& key) {
    if (!j_.contains(key)) throw config_error(path_ + ": missing key '" + key + "'");
    seen_.insert(key);
    try {
      return j_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw config_error(path_ + ": bad value for '" + key + "'");
    }
  }

  template <typename T>
  T get_or(const std::string& key, T fallback) {
    if (!j_.contains(key)) return fallback;
    return get<T>(key);
  }

  const ordered_json& child(const std::string& key) {
    if (!j_.contains(key)) throw config_error(path_ + ": missing key '" + key + "'");
    seen_.insert(key);
    return j_.at(key);
  }

  const ordered_json* child_if(const std::string& key) {
    if (!j_.contains(key)) return nullptr;
    seen_.insert(key);
    return &j_.at(key);
  }

  void done() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) {
        throw config_error(path_ + ": unknown key '" + key + "'");
      }
    }
  }

  const std::string& path() const { return path_; }

 private:
  const ordered_json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

Family parse_family(const ordered_json& j, const std::string& path) {
  Strict obj(j, path);
  Family f;
  f.kind = family_kind_from_string(obj.get<std::string>("type"));
  switch (f.kind) {
    case FamilyKind::beta_bernoulli:
    case FamilyKind::gamma_poisson:
      f.a = obj.get_or("a", 1.0);
      f.b = obj.get_or("b", 1.0);
      break;
    case FamilyKind::trunc_beta_bernoulli:
    case FamilyKind::trunc_gamma_poisson:
      f.a = obj.get_or("a", 1.0);
      f.b = obj.get_or("b", 1.0);
      f.x_max = obj.get<double>("x_max");
      break;
    case FamilyKind::nig:
      f.mu0 = obj.get_or("mu0", 0.0);
      f.kappa0 = obj.get_or("kappa0", 1.0);
      f.alpha0 = obj.get_or("alpha0", 1.0);
      f.beta0 = obj.get_or("beta0", 1.0);
      break;
    case FamilyKind::dirichlet_multinomial:
      f.alpha = obj.get<std::vector<double>>("alpha");
      break;
    case FamilyKind::zip:
      f.a_p = obj.get_or("a_p", 1.0);
      f.b_p = obj.get_or("b_p", 1.0);
      f.a_lambda = obj.get_or("a_lambda", 1.0);
      f.b_lambda = obj.get_or("b_lambda", 1.0);
      break;
    case FamilyKind::type_mixture: {
      const auto& types = obj.child("types");
      if (!types.is_array()) throw config_error(path + ".types: expected an array");
      int idx = 0;
      for (const auto& t : types) {
        Strict entry(t, path + ".types[" + std::to_string(idx) + "]");
        f.mix_weights.push_back(entry.get<double>("weight"));
        f.mix_components.push_back(
            parse_family(entry.child("family"), entry.path() + ".family"));
        entry.done();
        ++idx;
      }
      break;
    }
  }
  obj.done();
  return f;
}

ordered_json family_to_json(const Family& f) {
  ordered_json j;
  j["type"] = to_string(f.kind);
  switch (f.kind) {
    case FamilyKind::beta_bernoulli:
    case FamilyKind::gamma_poisson:
      j["a"] = f.a;
      j["b"] = f.b;
      break;
    case FamilyKind::trunc_beta_bernoulli:
    case FamilyKind::trunc_gamma_poisson:
      j["a"] = f.a;
      j["b"] = f.b;
      j["x_max"] = f.x_max;
      break;
    case FamilyKind::nig:
      j["mu0"] = f.mu0;
      j["kappa0"] = f.kappa0;
      j["alpha0"] = f.alpha0;
      j["beta0"] = f.beta0;
      break;
    case FamilyKind::dirichlet_multinomial:
      j["alpha"] = f.alpha;
      break;
    case FamilyKind::zip:
      j["a_p"] = f.a_p;
      j["b_p"] = f.b_p;
      j["a_lambda"] = f.a_lambda;
      j["b_lambda"] = f.b_lambda;
      break;
    case FamilyKind::type_mixture: {
      ordered_json types = ordered_json::array();
      for (std::size_t t = 0; t < f.mix_components.size(); ++t) {
        ordered_json entry;
        entry["weight"] = f.mix_weights[t];
        entry["family"] = family_to_json(f.mix_components[t]);
        types.push_back(entry);
      }
      j["types"] = types;
      break;
    }
  }
  return j;
}

GenSpec parse_generator(const ordered_json& j) {
  Strict obj(j, "generator");
  GenSpec g;
  g.n = obj.get<int>("n");
  g.k = obj.get<int>("k");
  g.seed = obj.get_or<std::uint64_t>("seed", 1);
  g.sizes = obj.get_or("sizes", std::vector<int>{});
  g.mechanism = mechanism_from_string(obj.get<std::string>("mechanism"));
  switch (g.mechanism) {
    case GenSpec::Mechanism::bernoulli:
      g.p_in = obj.get<double>("p_in");
      g.p_out = obj.get<double>("p_out");
      break;
    case GenSpec::Mechanism::poisson:
      g.lambda_in = obj.get<double>("lambda_in");
      g.lambda_out = obj.get<double>("lambda_out");
      break;
    case GenSpec::Mechanism::gaussian:
      g.mu_in = obj.get<double>("mu_in");
      g.mu_out = obj.get<double>("mu_out");
      g.sigma_in = obj.get_or("sigma", 1.0);
      g.sigma_out = g.sigma_in;
      g.sigma_in = obj.get_or("sigma_in", g.sigma_in);
      g.sigma_out = obj.get_or("sigma_out", g.sigma_out);
      break;
    case GenSpec::Mechanism::zip:
      g.zip_p_in = obj.get<double>("p_in");
      g.zip_p_out = obj.get<double>("p_out");
      g.lambda_in = obj.get<double>("lambda_in");
      g.lambda_out = obj.get<double>("lambda_out");
      break;
    case GenSpec::Mechanism::multiplex: {
      const auto& layers = obj.child("layers");
      if (!layers.is_array() || layers.empty()) {
        throw config_error("generator.layers: expected a nonempty array");
      }
      int idx = 0;
      for (const auto& l : layers) {
        Strict entry(l, "generator.layers[" + std::to_string(idx) + "]");
        GenSpec::LayerSpec layer;
        const auto& pin = entry.child("p_in");
        if (pin.is_array()) {
          layer.p_in = pin.get<std::vector<double>>();
        } else {
          layer.p_in = {pin.get<double>()};
        }
        layer.p_out = entry.get<double>("p_out");
        entry.done();
        g.layers.push_back(std::move(layer));
        ++idx;
      }
      break;
    }
    case GenSpec::Mechanism::dyad4: {
      const auto pi_in = obj.get<std::vector<double>>("pi_in");
      const auto pi_out = obj.get<std::vector<double>>("pi_out");
      if (pi_in.size() != 4 || pi_out.size() != 4) {
        throw config_error("generator: pi_in/pi_out need 4 entries (00,10,01,11)");
      }
      std::copy(pi_in.begin(), pi_in.end(), g.dyad4_pi_in.begin());
      std::copy(pi_out.begin(), pi_out.end(), g.dyad4_pi_out.begin());
      break;
    }
    case GenSpec::Mechanism::sign: {
      const auto t_in = obj.get<std::vector<double>>("theta_in");
      const auto t_out = obj.get<std::vector<double>>("theta_out");
      if (t_in.size() != 3 || t_out.size() != 3) {
        throw config_error("generator: theta_in/theta_out need 3 entries (0,+,-)");
      }
      std::copy(t_in.begin(), t_in.end(), g.sign_theta_in.begin());
      std::copy(t_out.begin(), t_out.end(), g.sign_theta_out.begin());
      break;
    }
  }
  obj.done();
  g.validate();
  return g;
}

ordered_json generator_to_json(const GenSpec& g) {
  ordered_json j;
  j["n"] = g.n;
  j["k"] = g.k;
  j["seed"] = g.seed;
  if (!g.sizes.empty()) j["sizes"] = g.sizes;
  j["mechanism"] = to_string(g.mechanism);
  switch (g.mechanism) {
    case GenSpec::Mechanism::bernoulli:
      j["p_in"] = g.p_in;
      j["p_out"] = g.p_out;
      break;
    case GenSpec::Mechanism::poisson:
      j["lambda_in"] = g.lambda_in;
      j["lambda_out"] = g.lambda_out;
      break;
    case GenSpec::Mechanism::gaussian:
      j["mu_in"] = g.mu_in;
      j["mu_out"] = g.mu_out;
      j["sigma_in"] = g.sigma_in;
      j["sigma_out"] = g.sigma_out;
      break;
    case GenSpec::Mechanism::zip:
      j["p_in"] = g.zip_p_in;
      j["p_out"] = g.zip_p_out;
      j["lambda_in"] = g.lambda_in;
      j["lambda_out"] = g.lambda_out;
      break;
    case GenSpec::Mechanism::multiplex: {
      ordered_json layers = ordered_json::array();
      for (const auto& l : g.layers) {
        ordered_json entry;
        entry["p_in"] = l.p_in;
        entry["p_out"] = l.p_out;
        layers.push_back(entry);
      }
      j["layers"] = layers;
      break;
    }
    case GenSpec::Mechanism::dyad4:
      j["pi_in"] = std::vector<double>(g.dyad4_pi_in.begin(), g.dyad4_pi_in.end());
      j["pi_out"] = std::vector<double>(g.dyad4_pi_out.begin(), g.dyad4_pi_out.end());
      break;
    case GenSpec::Mechanism::sign:
      j["theta_in"] = std::vector<double>(g.sign_theta_in.begin(), g.sign_theta_in.end());
      j["theta_out"] = std::vector<double>(g.sign_theta_out.begin(), g.sign_theta_out.end());
      break;
  }
  return j;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const CliOverrides& overrides) {
  ordered_json root_json;
  try {
    root_json = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config parse error: ") + e.what());
  }
  Strict root(root_json, "config");
  RunConfig cfg;
  cfg.command = root.get<std::string>("command");
  if (cfg.command != "generate" && cfg.command != "fit" && cfg.command != "select-k" &&
      cfg.command != "report") {
    throw config_error("config: unknown command '" + cfg.command + "'");
  }
  cfg.out_dir = root.get<std::string>("out");

  if (const auto* data = root.child_if("data")) {
    Strict obj(*data, "data");
    cfg.data_paths = obj.get<std::vector<std::string>>("paths");
    cfg.kind = kind_from_string(obj.get<std::string>("kind"));
    cfg.modality = modality_from_string(obj.get<std::string>("modality"));
    if (obj.has("n_hint")) cfg.n_hint = obj.get<int>("n_hint");
    cfg.names_path = obj.get_or<std::string>("names", "");
    obj.done();
  }
  cfg.truth_path = root.get_or<std::string>("truth", "");

  if (const auto* gen = root.child_if("generator")) {
    cfg.gen = parse_generator(*gen);
  } else if (cfg.command == "generate") {
    throw config_error("config: generate command needs a generator block");
  }

  if (const auto* fam = root.child_if("family")) {
    Strict obj(*fam, "family");
    cfg.family.diag = parse_family(obj.child("diag"), "family.diag");
    if (obj.has("offdiag")) {
      cfg.family.offdiag = parse_family(obj.child("offdiag"), "family.offdiag");
    } else {
      cfg.family.offdiag = cfg.family.diag;
    }
    cfg.family.drop_constants = obj.get_or("drop_constants", false);
    obj.done();
  } else if (cfg.command == "fit" || cfg.command == "select-k" || cfg.command == "report") {
    throw config_error("config: command '" + cfg.command + "' needs a family block");
  }

  double prior_alpha = 1.0;
  std::string prior_type = "dirichlet_multinomial";
  if (const auto* prior = root.child_if("prior")) {
    Strict obj(*prior, "prior");
    prior_type = obj.get_or<std::string>("type", "dirichlet_multinomial");
    prior_alpha = obj.get_or("alpha", 1.0);
    obj.done();
  }

  if (const auto* sampler = root.child_if("sampler")) {
    Strict obj(*sampler, "sampler");
    cfg.sampler.open_k = obj.get_or("open_k", false);
    cfg.sampler.k = obj.get_or("k", 0);
    cfg.sampler.sweeps = obj.get_or("sweeps", 5000);
    cfg.sampler.burn_in = obj.get_or("burn_in", cfg.sampler.sweeps / 5);
    cfg.sampler.thin = obj.get_or("thin", 10);
    cfg.sampler.seed = obj.get_or<std::uint64_t>("seed", 1);
    cfg.sampler.n_chains = obj.get_or("chains", 1);
    cfg.sampler.allow_new_cluster = obj.get_or("allow_new_cluster", true);
    cfg.sampler.track_psm = obj.get_or("psm", true);
    cfg.sampler.check_every = obj.get_or("check_every", 100);
    const std::string init = obj.get_or<std::string>("init", "random");
    if (init == "random") {
      cfg.sampler.init = SamplerConfig::Init::random;
    } else if (init == "singleton") {
      cfg.sampler.init = SamplerConfig::Init::singleton;
    } else if (init == "given") {
      cfg.sampler.init = SamplerConfig::Init::given;
      cfg.init_labels_path = obj.get<std::string>("init_labels");
    } else {
      throw config_error("sampler.init must be random|singleton|given");
    }
    obj.done();
  } else if (cfg.command == "fit" || cfg.command == "select-k") {
    throw config_error("config: command '" + cfg.command + "' needs a sampler block");
  }

  cfg.k_grid = root.get_or("k_grid", std::vector<int>{});
  if (cfg.command == "select-k" && cfg.k_grid.empty()) {
    throw config_error("config: select-k needs a k_grid");
  }

  if (const auto* report = root.child_if("report")) {
    Strict obj(*report, "report");
    cfg.report_z_path = obj.get_or<std::string>("z", "");
    cfg.level = obj.get_or("level", 0.95);
    cfg.degree_corrected = obj.get_or("degree_corrected", false);
    cfg.dc_a = obj.get_or("dc_a", 1.0);
    cfg.dc_b = obj.get_or("dc_b", 1.0);
    obj.done();
  }
  if (cfg.command == "report" && cfg.report_z_path.empty()) {
    throw config_error("config: report command needs report.z (a label file)");
  }
  root.done();

  // Overrides after parsing.
  if (overrides.seed) {
    cfg.sampler.seed = *overrides.seed;
    cfg.gen.seed = *overrides.seed;
  }
  if (overrides.sweeps) cfg.sampler.sweeps = *overrides.sweeps;
  if (overrides.k) {
    cfg.sampler.k = *overrides.k;
    cfg.gen.k = *overrides.k;
  }
  if (overrides.out) cfg.out_dir = *overrides.out;
  if (cfg.sampler.burn_in >= cfg.sampler.sweeps) {
    cfg.sampler.burn_in = cfg.sampler.sweeps / 5;
  }

  cfg.prior = cfg.sampler.open_k ? PartitionPrior::crp(prior_alpha)
                                 : PartitionPrior::dm(prior_alpha, std::max(cfg.sampler.k, 1));
  if (prior_type == "crp" && !cfg.sampler.open_k) {
    throw config_error("config: crp prior requires sampler.open_k = true");
  }
  if (prior_type == "dirichlet_multinomial" && cfg.sampler.open_k) {
    throw config_error("config: dirichlet_multinomial prior requires fixed K");
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path, const CliOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), overrides);
}

namespace {

ordered_json effective_config_json(const RunConfig& cfg) {
  ordered_json j;
  j["command"] = cfg.command;
  j["out"] = cfg.out_dir;
  if (!cfg.data_paths.empty()) {
    ordered_json d;
    d["paths"] = cfg.data_paths;
    d["kind"] = to_string(cfg.kind);
    d["modality"] = to_string(cfg.modality);
    if (cfg.n_hint) d["n_hint"] = *cfg.n_hint;
    if (!cfg.names_path.empty()) d["names"] = cfg.names_path;
    j["data"] = d;
  }
  if (!cfg.truth_path.empty()) j["truth"] = cfg.truth_path;
  if (cfg.command == "generate") j["generator"] = generator_to_json(cfg.gen);
  if (cfg.command == "fit" || cfg.command == "select-k" || cfg.command == "report") {
    ordered_json fam;
    fam["diag"] = family_to_json(cfg.family.diag);
    fam["offdiag"] = family_to_json(cfg.family.offdiag);
    fam["drop_constants"] = cfg.family.drop_constants;
    j["family"] = fam;
    ordered_json prior;
    prior["type"] = cfg.prior.variant == PartitionPrior::Variant::crp
                        ? "crp"
                        : "dirichlet_multinomial";
    prior["alpha"] = cfg.prior.alpha;
    j["prior"] = prior;
  }
  if (cfg.command == "fit" || cfg.command == "select-k") {
    ordered_json s;
    s["open_k"] = cfg.sampler.open_k;
    if (!cfg.sampler.open_k) s["k"] = cfg.sampler.k;
    s["sweeps"] = cfg.sampler.sweeps;
    s["burn_in"] = cfg.sampler.burn_in;
    s["thin"] = cfg.sampler.thin;
    s["seed"] = cfg.sampler.seed;
    s["chains"] = cfg.sampler.n_chains;
    s["psm"] = cfg.sampler.track_psm;
    j["sampler"] = s;
  }
  if (!cfg.k_grid.empty()) j["k_grid"] = cfg.k_grid;
  if (cfg.command == "report") {
    ordered_json r;
    r["z"] = cfg.report_z_path;
    r["level"] = cfg.level;
    r["degree_corrected"] = cfg.degree_corrected;
    j["report"] = r;
  }
  return j;
}

DyadData load_configured_data(const RunConfig& cfg) {
  if (cfg.data_paths.empty()) {
    throw config_error("config: command '" + cfg.command + "' needs a data block");
  }
  DyadData data = cfg.data_paths.size() == 1
                      ? load_edge_list(cfg.data_paths[0], cfg.kind, cfg.modality, cfg.n_hint)
                      : load_multiplex(cfg.data_paths, cfg.kind, cfg.modality, cfg.n_hint);
  if (!cfg.names_path.empty()) {
    data.node_names = load_label_map(cfg.names_path, data.n());
  }
  return data;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write '" + path + "'");
  out << text;
}

void write_trace_csv(const std::vector<TraceRow>& trace, bool with_ari,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write '" + path + "'");
  out << (with_ari ? "sweep,logpost,ari\n" : "sweep,logpost\n");
  char buf[64];
  for (const auto& row : trace) {
    std::snprintf(buf, sizeof buf, "%.10f", row.log_post);
    out << row.sweep << ',' << buf;
    if (with_ari) {
      std::snprintf(buf, sizeof buf, "%.6f", row.ari);
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace

std::string execute(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw config_error("cannot create output directory '" + cfg.out_dir + "'");
  const auto at = [&](const std::string& name) {
    return (fs::path(cfg.out_dir) / name).string();
  };

  ordered_json manifest;
  manifest["command"] = cfg.command;
  manifest["effective_config"] = effective_config_json(cfg);
  ordered_json outputs = ordered_json::array();

  if (cfg.command == "generate") {
    const Generated g = generate(cfg.gen);
    for (int l = 0; l < g.data.num_layers(); ++l) {
      const std::string name =
          g.data.num_layers() == 1 ? "edges.tsv" : "edges_" + std::to_string(l) + ".tsv";
      write_edge_list(g.data, l, at(name));
      outputs.push_back(name);
    }
    write_labels(at("truth.tsv"), g.truth);
    outputs.push_back("truth.tsv");
    ordered_json results;
    results["n"] = g.data.n();
    results["layers"] = g.data.num_layers();
    std::int64_t mass = 0;
    for (int l = 0; l < g.data.num_layers(); ++l) {
      mass += static_cast<std::int64_t>(g.data.layer(l).values.size());
    }
    results["stored_dyads"] = mass;
    manifest["results"] = results;
  } else if (cfg.command == "fit") {
    const DyadData data = load_configured_data(cfg);
    std::vector<int> truth;
    if (!cfg.truth_path.empty()) truth = load_labels(cfg.truth_path, data.n());
    SamplerConfig sampler_cfg = cfg.sampler;
    if (cfg.sampler.init == SamplerConfig::Init::given) {
      sampler_cfg.init_labels = load_labels(cfg.init_labels_path, data.n());
    }
    const RunResult res = run(sampler_cfg, data, cfg.family, cfg.prior,
                              truth.empty() ? nullptr : &truth);

    write_labels(at("z_map.tsv"), res.z_map);
    outputs.push_back("z_map.tsv");
    for (std::size_t c = 0; c < res.chains.size(); ++c) {
      const std::string name = "trace_" + std::to_string(c) + ".csv";
      write_trace_csv(res.chains[c].trace, !truth.empty(), at(name));
      outputs.push_back(name);
    }
    const BlockSummaryTable table = block_summary_at(
        data, res.z_map, cfg.family, cfg.level,
        res.map_zip ? &*res.map_zip : nullptr);
    write_block_summary_csv(table, at("block_summary.csv"));
    outputs.push_back("block_summary.csv");
    if (cfg.sampler.track_psm) {
      const PsmResult psm = finalize_psm(res.psm, res.z_map);
      write_psm_csv(psm, data.n(), at("psm.csv"));
      write_order_csv(psm.order, at("psm_order.csv"));
      outputs.push_back("psm.csv");
      outputs.push_back("psm_order.csv");
    }
    if (!truth.empty()) {
      write_confusion_csv(confusion(truth, res.z_map), at("confusion.csv"));
      outputs.push_back("confusion.csv");
    }

    ordered_json results;
    results["map_log_posterior"] = res.map_log_posterior;
    results["map_sweep"] = res.map_sweep;
    results["map_chain"] = res.map_chain;
    results["cluster_sizes"] = res.cluster_sizes;
    if (!truth.empty()) results["ari"] = res.ari_vs_truth;
    ordered_json seeds = ordered_json::array();
    for (const auto& c : res.chains) seeds.push_back(c.seed);
    results["chain_seeds"] = seeds;
    manifest["results"] = results;
  } else if (cfg.command == "select-k") {
    const DyadData data = load_configured_data(cfg);
    const auto rows = select_k(data, cfg.k_grid, cfg.sampler, cfg.family,
                               cfg.prior.alpha);
    std::ostringstream csv;
    csv << "K,best_log_posterior\n";
    ordered_json results = ordered_json::array();
    int best_k = rows.front().k;
    double best_v = rows.front().best_log_posterior;
    char buf[64];
    for (const auto& row : rows) {
      std::snprintf(buf, sizeof buf, "%.10f", row.best_log_posterior);
      csv << row.k << ',' << buf << '\n';
      ordered_json entry;
      entry["K"] = row.k;
      entry["best_log_posterior"] = row.best_log_posterior;
      results.push_back(entry);
      if (row.best_log_posterior > best_v) {
        best_v = row.best_log_posterior;
        best_k = row.k;
      }
    }
    write_text(at("kgrid.csv"), csv.str());
    outputs.push_back("kgrid.csv");
    manifest["results"] = ordered_json{{"grid", results}, {"best_K", best_k}};
  } else {  // report
    const DyadData data = load_configured_data(cfg);
    const std::vector<int> z = load_labels(cfg.report_z_path, data.n());
    const BlockSummaryTable table = block_summary(data, z, cfg.family, cfg.level);
    write_block_summary_csv(table, at("block_summary.csv"));
    outputs.push_back("block_summary.csv");
    ordered_json results;
    if (!cfg.truth_path.empty()) {
      const std::vector<int> truth = load_labels(cfg.truth_path, data.n());
      write_confusion_csv(confusion(truth, z), at("confusion.csv"));
      outputs.push_back("confusion.csv");
      results["ari"] = ari(truth, z);
    }
    if (cfg.degree_corrected) {
      const DegreePropensity prop = estimate_propensities(data);
      const auto omega = degree_corrected_summary(data, z, prop, cfg.dc_a, cfg.dc_b);
      write_matrix_csv(omega, at("degree_corrected.csv"));
      outputs.push_back("degree_corrected.csv");
    }
    manifest["results"] = results;
  }

  manifest["outputs"] = outputs;
  const std::string text = manifest.dump(2) + "\n";
  write_text(at("manifest.json"), text);
  return text;
}

}  // namespace csbm
