// Apache License, Version 2.0, refer to LICENSE.txt
#include "netgen/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "netgen/error.hpp"
#include "netgen/graph_io.hpp"
#include "netgen/models.hpp"
#include "netgen/parallel.hpp"
#include "netgen/rng.hpp"
#include "netgen/snap.hpp"

namespace netgen {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) { throw ConfigError(what); }

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) config_error("unknown key '" + key + "' in " + where);
  }
}

std::size_t as_count(const json& v, const std::string& key) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)) {
    config_error("'" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double as_real(const json& v, const std::string& key) {
  if (!v.is_number()) config_error("'" + key + "' must be a number");
  return v.get<double>();
}

bool valid_model_name(const std::string& name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '.';
  });
}

json ground_truth_json(const ExperimentConfig& c) {
  if (!c.generator) return {{"dataset", c.dataset.generic_string()}};
  const GeneratorConfig& g = *c.generator;
  json out = {{"generator", std::string(generator_name(g.kind))}};
  switch (g.kind) {
    case GeneratorKind::DirectedEr:
      out["er_p"] = g.er_p;
      break;
    case GeneratorKind::ConfigModel:
      out["exponent"] = g.degree_law_exponent;
      break;
    case GeneratorKind::Krapivsky:
      out["krapivsky_p"] = g.krapivsky_p;
      out["lambda"] = g.krapivsky_lambda;
      out["mu"] = g.krapivsky_mu;
      break;
  }
  return out;
}

json matrix_json(const MeanAdjacency& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.n_nodes; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.n_nodes; ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

MeanAdjacency matrix_from_json(const json& rows) {
  MeanAdjacency m;
  m.n_nodes = rows.size();
  for (const auto& row : rows)
    for (const auto& v : row) m.values.push_back(v.get<double>());
  return m;
}

// Parent graphs for ego subsampling, ego at node 0.
std::vector<DirectedGraph> load_parents(const std::filesystem::path& path) {
  std::vector<DirectedGraph> parents;
  if (std::filesystem::is_directory(path)) {
    for (auto& ego : load_snap_ego(path)) parents.push_back(std::move(ego.graph));
  } else {
    GraphSet set = load_graphset(path);
    parents.assign(set.begin(), set.end());
  }
  if (parents.empty()) throw IoError("dataset " + path.string() + " contains no graphs");
  return parents;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed4(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

void write_adjacency(const std::filesystem::path& dir, const std::string& stem, const json& rows) {
  const MeanAdjacency m = matrix_from_json(rows);
  std::ostringstream csv, pgm;
  write_matrix_csv(csv, m);
  write_matrix_pgm(pgm, m);
  write_file(dir / (stem + ".csv"), csv.str());
  write_file(dir / (stem + ".pgm"), pgm.str());
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& doc) {
  if (!doc.is_object()) config_error("experiment config must be a JSON object");
  reject_unknown(doc,
                 {"ground_truth", "network_sizes", "models", "n_train", "n_sample", "statistics",
                  "alpha", "n_perm", "master_seed", "output_dir", "threads"},
                 "experiment config");
  ExperimentConfig c;

  if (!doc.contains("ground_truth") || !doc["ground_truth"].is_object()) {
    config_error("'ground_truth' object is required");
  }
  const json& gt = doc["ground_truth"];
  if (gt.contains("dataset")) {
    reject_unknown(gt, {"dataset"}, "ground_truth");
    if (!gt["dataset"].is_string()) config_error("'dataset' must be a path string");
    c.dataset = gt["dataset"].get<std::string>();
  } else if (gt.contains("generator")) {
    reject_unknown(gt, {"generator", "er_p", "exponent", "krapivsky_p", "lambda", "mu"},
                   "ground_truth");
    GeneratorConfig g;
    try {
      g.kind = parse_generator_kind(gt["generator"].get<std::string>());
    } catch (const std::exception& e) {
      config_error(std::string("ground_truth.generator: ") + e.what());
    }
    if (gt.contains("er_p")) g.er_p = as_real(gt["er_p"], "er_p");
    if (gt.contains("exponent")) g.degree_law_exponent = as_real(gt["exponent"], "exponent");
    if (gt.contains("krapivsky_p")) g.krapivsky_p = as_real(gt["krapivsky_p"], "krapivsky_p");
    if (gt.contains("lambda")) g.krapivsky_lambda = as_real(gt["lambda"], "lambda");
    if (gt.contains("mu")) g.krapivsky_mu = as_real(gt["mu"], "mu");
    c.generator = g;
  } else {
    config_error("ground_truth needs 'generator' or 'dataset'");
  }

  if (doc.contains("network_sizes")) {
    if (!doc["network_sizes"].is_array()) config_error("'network_sizes' must be an array");
    c.network_sizes.clear();
    for (const auto& v : doc["network_sizes"]) c.network_sizes.push_back(as_count(v, "network_sizes"));
  }
  if (doc.contains("models")) {
    if (!doc["models"].is_array()) config_error("'models' must be an array");
    for (const auto& m : doc["models"]) {
      if (!m.is_object()) config_error("each model must be an object");
      reject_unknown(m, {"name", "kind", "params"}, "model");
      ModelSpec spec;
      if (!m.contains("kind") || !m["kind"].is_string()) config_error("model needs a 'kind' string");
      spec.kind = m["kind"].get<std::string>();
      spec.name = m.contains("name") ? (m["name"].is_string() ? m["name"].get<std::string>() : "")
                                     : spec.kind;
      if (m.contains("params")) spec.params = m["params"];
      c.models.push_back(std::move(spec));
    }
  }
  if (doc.contains("n_train")) c.n_train = as_count(doc["n_train"], "n_train");
  if (doc.contains("n_sample")) c.n_sample = as_count(doc["n_sample"], "n_sample");
  if (doc.contains("statistics")) {
    if (!doc["statistics"].is_array()) config_error("'statistics' must be an array");
    c.statistics.clear();
    for (const auto& v : doc["statistics"]) {
      if (!v.is_string()) config_error("statistics entries must be strings");
      try {
        c.statistics.push_back(parse_statistic(v.get<std::string>()));
      } catch (const ParseError& e) {
        config_error(e.what());
      }
    }
  }
  if (doc.contains("alpha")) c.alpha = as_real(doc["alpha"], "alpha");
  if (doc.contains("n_perm")) c.n_perm = as_count(doc["n_perm"], "n_perm");
  if (doc.contains("master_seed")) c.master_seed = as_count(doc["master_seed"], "master_seed");
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) config_error("'output_dir' must be a string");
    c.output_dir = doc["output_dir"].get<std::string>();
  }
  if (doc.contains("threads")) c.threads = static_cast<unsigned>(as_count(doc["threads"], "threads"));
  validate(c);
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    config_error(path.string() + ": " + e.what());
  }
  return parse_experiment_config(doc);
}

void validate(const ExperimentConfig& c) {
  if (c.generator.has_value() == !c.dataset.empty()) {
    config_error("exactly one of generator or dataset must be set");
  }
  if (!c.generator && !std::filesystem::exists(c.dataset)) {
    config_error("dataset not found: " + c.dataset.string());
  }
  if (c.network_sizes.empty()) config_error("network_sizes must not be empty");
  std::set<std::size_t> sizes;
  for (std::size_t n : c.network_sizes) {
    if (n < 2) config_error("network sizes must be >= 2");
    if (!sizes.insert(n).second) config_error("duplicate network size " + std::to_string(n));
    if (c.generator) {
      GeneratorConfig g = *c.generator;
      g.n_nodes = n;
      g.count = c.n_train;
      try {
        netgen::validate(g);
      } catch (const InvalidArgument& e) {
        config_error(std::string("ground_truth: ") + e.what());
      }
    }
  }
  if (c.n_train < 2) config_error("n_train must be >= 2");
  if (c.n_sample < 2) config_error("n_sample must be >= 2");
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) config_error("alpha must lie in (0, 1)");
  if (c.n_perm < 1) config_error("n_perm must be >= 1");
  if (c.statistics.empty()) config_error("statistics must not be empty");
  std::set<std::string> names;
  for (const auto& m : c.models) {
    if (!valid_model_name(m.name)) config_error("invalid model name '" + m.name + "'");
    if (!names.insert(m.name).second) config_error("duplicate model name '" + m.name + "'");
    if (!is_model_kind(m.kind)) config_error("unknown model kind '" + m.kind + "'");
    validate_model_params(m.kind, m.params);
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  std::vector<DirectedGraph> parents;
  if (!config.generator) parents = load_parents(config.dataset);

  json cfg = {{"ground_truth", ground_truth_json(config)},
              {"network_sizes", config.network_sizes},
              {"n_train", config.n_train},
              {"n_sample", config.n_sample},
              {"alpha", config.alpha},
              {"n_perm", config.n_perm},
              {"master_seed", config.master_seed}};
  json stats = json::array();
  for (auto s : config.statistics) stats.push_back(std::string(statistic_name(s)));
  cfg["statistics"] = stats;
  json models = json::array();
  for (const auto& m : config.models) {
    models.push_back({{"name", m.name}, {"kind", m.kind}, {"params", m.params}});
  }
  cfg["models"] = models;

  // Ground truth per size; a failure here fails every cell of that size.
  const std::size_t n_sizes = config.network_sizes.size();
  std::vector<std::optional<GraphSet>> truth(n_sizes);
  std::vector<json> size_entries(n_sizes);
  std::vector<std::string> size_errors(n_sizes);
  std::vector<std::vector<double>> truth_stats(n_sizes);
  for (std::size_t s = 0; s < n_sizes; ++s) {
    const std::size_t n = config.network_sizes[s];
    const std::uint64_t size_seed = derive_seed(config.master_seed, "size/" + std::to_string(n));
    const std::uint64_t gt_seed = derive_seed(size_seed, "ground-truth");
    json entry = {{"size", n}, {"seed", gt_seed}};
    try {
      if (config.generator) {
        GeneratorConfig g = *config.generator;
        g.n_nodes = n;
        g.count = config.n_train;
        g.seed = gt_seed;
        truth[s] = generate(g);
      } else {
        truth[s] = sample_ego_set(parents, n, config.n_train, gt_seed);
      }
      entry["status"] = "ok";
      json means = json::object();
      for (auto st : config.statistics) {
        auto v = graph_statistics(st, *truth[s]);
        double mean = 0.0;
        for (double x : v) mean += x;
        means[std::string(statistic_name(st))] = mean / static_cast<double>(v.size());
      }
      entry["statistic_means"] = means;
      entry["mean_adjacency"] = matrix_json(mean_adjacency(*truth[s]));
    } catch (const std::exception& e) {
      entry["status"] = "failed";
      entry["error"] = e.what();
      size_errors[s] = e.what();
    }
    size_entries[s] = std::move(entry);
  }

  const std::size_t n_models = config.models.size();
  const std::size_t n_cells = n_sizes * n_models;
  std::vector<json> cells(n_cells);
  std::vector<double> seconds(n_cells, 0.0);
  parallel_for(
      n_cells,
      [&](std::size_t c) {
        const std::size_t s = c / n_models;
        const ModelSpec& spec = config.models[c % n_models];
        const std::size_t n = config.network_sizes[s];
        const auto start = std::chrono::steady_clock::now();
        const std::uint64_t size_seed = derive_seed(config.master_seed, "size/" + std::to_string(n));
        const std::uint64_t base = derive_seed(size_seed, "model/" + spec.name);
        const std::uint64_t fit_seed = derive_seed(base, "fit");
        const std::uint64_t sample_seed = derive_seed(base, "sample");
        json cell = {{"size", n},
                     {"model", spec.name},
                     {"kind", spec.kind},
                     {"seeds", {{"fit", fit_seed}, {"sample", sample_seed}}}};
        try {
          if (!truth[s]) throw std::runtime_error("ground truth unavailable: " + size_errors[s]);
          AnyModel model = fit_model(spec.kind, spec.params, *truth[s], fit_seed);
          cell["diagnostics"] = model_diagnostics(model);
          GraphSet sample = sample_model(model, config.n_sample, spec.params, sample_seed);
          json tests = json::array();
          for (auto st : config.statistics) {
            const std::string name(statistic_name(st));
            const std::uint64_t test_seed = derive_seed(base, "test/" + name);
            PermTestResult r = permutation_test(*truth[s], sample, st, config.n_perm, test_seed);
            tests.push_back({{"statistic", name},
                             {"p_value", r.p_value},
                             {"pass", r.p_value >= config.alpha},
                             {"t_obs", r.t_obs},
                             {"effect_size", r.effect_size},
                             {"mean_ground_truth", r.mean1},
                             {"mean_sample", r.mean2},
                             {"n_permutations", r.n_permutations},
                             {"exhaustive", r.exhaustive},
                             {"seed", test_seed}});
          }
          cell["tests"] = tests;
          cell["mean_adjacency"] = matrix_json(mean_adjacency(sample));
          cell["status"] = "ok";
        } catch (const std::exception& e) {
          cell["status"] = "failed";
          cell["error"] = e.what();
        }
        cells[c] = std::move(cell);
        seconds[c] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      },
      config.threads);

  ExperimentResult result;
  result.report = {{"format", "netgen-report"},
                   {"version", 1},
                   {"config", cfg},
                   {"sizes", size_entries},
                   {"cells", cells}};
  json timings = json::array();
  for (std::size_t c = 0; c < n_cells; ++c) {
    timings.push_back({{"size", cells[c]["size"]}, {"model", cells[c]["model"]}, {"seconds", seconds[c]}});
  }
  result.timings = {{"cells", timings}};
  return result;
}

std::string report_text(const json& report) { return report.dump(2) + "\n"; }

void render_report(const json& report, const std::filesystem::path& directory) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(directory / "adjacency", ec);
  if (ec) throw IoError("cannot create " + directory.string() + ": " + ec.message());

  const json empty = json::array();
  const json& config = report.contains("config") ? report["config"] : json::object();
  std::vector<std::string> stats;
  for (const auto& s : config.value("statistics", empty)) stats.push_back(s.get<std::string>());
  std::vector<std::string> models;
  for (const auto& m : config.value("models", empty)) models.push_back(m["name"].get<std::string>());
  const json& cells = report.contains("cells") ? report["cells"] : empty;
  const json& sizes = report.contains("sizes") ? report["sizes"] : empty;

  auto find_test = [](const json& cell, const std::string& stat) -> const json* {
    if (!cell.contains("tests")) return nullptr;
    for (const auto& t : cell["tests"])
      if (t["statistic"] == stat) return &t;
    return nullptr;
  };
  // Markers follow p >= alpha; reports without an alpha keep their stored flags.
  auto passes = [&](const json& t) {
    if (config.contains("alpha")) return t["p_value"].get<double>() >= config["alpha"].get<double>();
    return t["pass"].get<bool>();
  };

  // p-value grid
  std::ostringstream csv;
  csv << "size,model,kind,status";
  for (const auto& s : stats) csv << ',' << s << "_p," << s << "_pass";
  csv << '\n';
  for (const auto& cell : cells) {
    csv << cell["size"].get<std::size_t>() << ',' << cell["model"].get<std::string>() << ','
        << cell["kind"].get<std::string>() << ',' << cell["status"].get<std::string>();
    for (const auto& s : stats) {
      const json* t = find_test(cell, s);
      if (t) {
        csv << ',' << g17((*t)["p_value"].get<double>()) << ','
            << (passes(*t) ? "pass" : "fail");
      } else {
        csv << ",,n/a";
      }
    }
    csv << '\n';
  }
  write_file(directory / "pvalues.csv", csv.str());

  // text table; '*' marks cells where the null is not rejected
  std::ostringstream txt;
  txt << std::left << std::setw(6) << "size" << std::setw(16) << "model";
  for (const auto& s : stats) txt << std::setw(14) << s;
  txt << '\n';
  for (const auto& cell : cells) {
    txt << std::setw(6) << cell["size"].get<std::size_t>() << std::setw(16)
        << cell["model"].get<std::string>();
    for (const auto& s : stats) {
      const json* t = find_test(cell, s);
      std::string field = "failed";
      if (t) field = fixed4((*t)["p_value"].get<double>()) + (passes(*t) ? "*" : "");
      txt << std::setw(14) << field;
    }
    txt << '\n';
  }
  if (config.contains("alpha")) {
    txt << "* p >= " << config["alpha"].get<double>() << " (null not rejected)\n";
  }
  write_file(directory / "pvalues.txt", txt.str());

  // effect sizes, one row per network size
  std::vector<std::size_t> size_list;
  for (const auto& cell : cells) size_list.push_back(cell["size"].get<std::size_t>());
  std::sort(size_list.begin(), size_list.end());
  size_list.erase(std::unique(size_list.begin(), size_list.end()), size_list.end());
  std::ostringstream eff;
  eff << "size";
  for (const auto& m : models)
    for (const auto& s : stats) eff << ',' << m << ':' << s;
  eff << '\n';
  for (std::size_t n : size_list) {
    eff << n;
    for (const auto& m : models) {
      for (const auto& s : stats) {
        eff << ',';
        for (const auto& cell : cells) {
          if (cell["size"] == n && cell["model"] == m) {
            if (const json* t = find_test(cell, s)) eff << g17((*t)["effect_size"].get<double>());
          }
        }
      }
    }
    eff << '\n';
  }
  write_file(directory / "effect_sizes.csv", eff.str());

  const fs::path adj = directory / "adjacency";
  for (const auto& entry : sizes) {
    if (entry.contains("mean_adjacency")) {
      write_adjacency(adj, "ground_truth_n" + std::to_string(entry["size"].get<std::size_t>()),
                      entry["mean_adjacency"]);
    }
  }
  for (const auto& cell : cells) {
    if (cell.contains("mean_adjacency")) {
      write_adjacency(adj,
                      cell["model"].get<std::string>() + "_n" +
                          std::to_string(cell["size"].get<std::size_t>()),
                      cell["mean_adjacency"]);
    }
  }
}

}  // namespace netgen
