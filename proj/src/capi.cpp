// Apache License, Version 2.0, refer to LICENSE.txt
#include "netgen/netgen.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include <json.hpp>

#include "netgen/error.hpp"
#include "netgen/evaluation.hpp"
#include "netgen/experiment.hpp"
#include "netgen/generators.hpp"
#include "netgen/graph_io.hpp"
#include "netgen/models.hpp"
#include "netgen/snap.hpp"

struct netgen_graphset {
  netgen::GraphSet set;
};

struct netgen_model {
  netgen::AnyModel model;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_warnings;

netgen_status from_code(netgen::ErrorCode code) {
  switch (code) {
    case netgen::ErrorCode::InvalidArgument:
      return NETGEN_ERR_INVALID_ARGUMENT;
    case netgen::ErrorCode::Io:
      return NETGEN_ERR_IO;
    case netgen::ErrorCode::Parse:
      return NETGEN_ERR_PARSE;
    case netgen::ErrorCode::Numeric:
      return NETGEN_ERR_NUMERIC;
    case netgen::ErrorCode::EgoTooSmall:
      return NETGEN_ERR_EGO_TOO_SMALL;
    case netgen::ErrorCode::Config:
      return NETGEN_ERR_CONFIG;
  }
  return NETGEN_ERR_INTERNAL;
}

netgen_status fail(netgen_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <typename F>
netgen_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return NETGEN_OK;
  } catch (const netgen::Error& e) {
    return fail(from_code(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(NETGEN_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(NETGEN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NETGEN_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NETGEN_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw netgen::InvalidArgument(what);
}

nlohmann::json parse_params(const char* params_json) {
  if (params_json == nullptr || *params_json == '\0') return nlohmann::json::object();
  try {
    return nlohmann::json::parse(params_json);
  } catch (const nlohmann::json::parse_error& e) {
    throw netgen::ConfigError(std::string("params: ") + e.what());
  }
}

netgen::StatisticKind to_statistic(netgen_statistic s) {
  if (s == NETGEN_STAT_IN_DEGREE) return netgen::StatisticKind::MeanInDegree;
  if (s == NETGEN_STAT_CLUSTERING) return netgen::StatisticKind::MeanClustering;
  throw netgen::InvalidArgument("unknown statistic");
}

void fill(const netgen::PermTestResult& r, netgen_perm_result* out) {
  out->t_obs = r.t_obs;
  out->p_value = r.p_value;
  out->n_permutations = r.n_permutations;
  out->effect_size = r.effect_size;
  out->mean1 = r.mean1;
  out->mean2 = r.mean2;
  out->exhaustive = r.exhaustive ? 1 : 0;
}

char* copy_string(const std::string& s) {
  char* p = new char[s.size() + 1];
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* netgen_last_error(void) { return last_error.c_str(); }
const char* netgen_last_warnings(void) { return last_warnings.c_str(); }

const char* netgen_status_name(netgen_status status) {
  switch (status) {
    case NETGEN_OK:
      return "ok";
    case NETGEN_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case NETGEN_ERR_IO:
      return "i/o error";
    case NETGEN_ERR_PARSE:
      return "parse error";
    case NETGEN_ERR_NUMERIC:
      return "numeric error";
    case NETGEN_ERR_EGO_TOO_SMALL:
      return "ego network too small";
    case NETGEN_ERR_CONFIG:
      return "configuration error";
    case NETGEN_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void netgen_string_free(char* s) { delete[] s; }

netgen_status netgen_graphset_load(const char* path, netgen_graphset** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new netgen_graphset{netgen::load_graphset(path)};
  });
}

netgen_status netgen_graphset_save(const netgen_graphset* set, const char* path) {
  return guarded([&] {
    require(set && path, "null argument");
    netgen::save_graphset(path, set->set);
  });
}

void netgen_graphset_free(netgen_graphset* set) { delete set; }

size_t netgen_graphset_count(const netgen_graphset* set) { return set ? set->set.size() : 0; }

size_t netgen_graphset_n_nodes(const netgen_graphset* set) { return set ? set->set.n_nodes() : 0; }

netgen_status netgen_graphset_adjacency(const netgen_graphset* set, size_t index, uint8_t* out,
                                        size_t out_len) {
  return guarded([&] {
    require(set && out, "null argument");
    require(index < set->set.size(), "graph index out of range");
    const auto adj = set->set[index].adjacency();
    require(out_len == adj.size(), "output buffer must hold n*n entries");
    std::memcpy(out, adj.data(), adj.size());
  });
}

netgen_status netgen_graphset_from_adjacency(size_t count, size_t n_nodes, const uint8_t* data,
                                             netgen_graphset** out) {
  return guarded([&] {
    require(data && out, "null argument");
    require(count >= 1 && n_nodes >= 1, "count and n_nodes must be >= 1");
    std::vector<netgen::DirectedGraph> graphs;
    graphs.reserve(count);
    for (size_t g = 0; g < count; ++g) {
      netgen::DirectedGraph graph(n_nodes);
      const uint8_t* m = data + g * n_nodes * n_nodes;
      for (size_t i = 0; i < n_nodes; ++i) {
        for (size_t j = 0; j < n_nodes; ++j) {
          const uint8_t v = m[i * n_nodes + j];
          require(v <= 1, "adjacency entries must be 0 or 1");
          require(!(i == j && v), "self-loops are not allowed");
          if (v) graph.set_edge(i, j, true);
        }
      }
      graphs.push_back(std::move(graph));
    }
    *out = new netgen_graphset{netgen::GraphSet(std::move(graphs))};
  });
}

void netgen_generator_config_init(netgen_generator_config* config) {
  if (!config) return;
  const netgen::GeneratorConfig d;
  config->kind = NETGEN_GEN_ER;
  config->n_nodes = d.n_nodes;
  config->count = d.count;
  config->seed = d.seed;
  config->er_p = d.er_p;
  config->degree_law_exponent = d.degree_law_exponent;
  config->krapivsky_p = d.krapivsky_p;
  config->krapivsky_lambda = d.krapivsky_lambda;
  config->krapivsky_mu = d.krapivsky_mu;
}

netgen_status netgen_generator_kind_parse(const char* name, netgen_generator_kind* out) {
  return guarded([&] {
    require(name && out, "null argument");
    *out = static_cast<netgen_generator_kind>(netgen::parse_generator_kind(name));
  });
}

netgen_status netgen_generate(const netgen_generator_config* config, netgen_graphset** out) {
  return guarded([&] {
    require(config && out, "null argument");
    netgen::GeneratorConfig c;
    require(config->kind >= NETGEN_GEN_ER && config->kind <= NETGEN_GEN_KRAPIVSKY,
            "unknown generator kind");
    c.kind = static_cast<netgen::GeneratorKind>(config->kind);
    c.n_nodes = config->n_nodes;
    c.count = config->count;
    c.seed = config->seed;
    c.er_p = config->er_p;
    c.degree_law_exponent = config->degree_law_exponent;
    c.krapivsky_p = config->krapivsky_p;
    c.krapivsky_lambda = config->krapivsky_lambda;
    c.krapivsky_mu = config->krapivsky_mu;
    *out = new netgen_graphset{netgen::generate(c)};
  });
}

netgen_status netgen_ego_sample(const char* path, size_t n_nodes, size_t count, uint64_t seed,
                                size_t* n_egos_out, netgen_graphset** out) {
  return guarded([&] {
    require(path && out, "null argument");
    last_warnings.clear();
    std::vector<netgen::DirectedGraph> parents;
    if (std::filesystem::is_directory(path)) {
      std::vector<std::string> warnings;
      for (auto& ego : netgen::load_snap_ego(path, &warnings)) parents.push_back(std::move(ego.graph));
      for (const auto& w : warnings) last_warnings += w + "\n";
    } else {
      netgen::GraphSet set = netgen::load_graphset(path);
      parents.assign(set.begin(), set.end());
    }
    if (n_egos_out) *n_egos_out = parents.size();
    *out = new netgen_graphset{netgen::sample_ego_set(parents, n_nodes, count, seed)};
  });
}

netgen_status netgen_model_fit(const char* kind, const char* params_json,
                               const netgen_graphset* train, uint64_t seed, netgen_model** out) {
  return guarded([&] {
    require(kind && train && out, "null argument");
    *out = new netgen_model{netgen::fit_model(kind, parse_params(params_json), train->set, seed)};
  });
}

netgen_status netgen_model_sample(const netgen_model* model, size_t count, const char* params_json,
                                  uint64_t seed, netgen_graphset** out) {
  return guarded([&] {
    require(model && out, "null argument");
    require(count >= 1, "count must be >= 1");
    *out = new netgen_graphset{
        netgen::sample_model(model->model, count, parse_params(params_json), seed)};
  });
}

netgen_status netgen_model_save(const netgen_model* model, const char* path) {
  return guarded([&] {
    require(model && path, "null argument");
    netgen::save_model(path, model->model);
  });
}

netgen_status netgen_model_load(const char* path, netgen_model** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new netgen_model{netgen::load_model(path)};
  });
}

void netgen_model_free(netgen_model* model) { delete model; }

const char* netgen_model_kind(const netgen_model* model) {
  if (!model) return "";
  return netgen::model_kind(model->model).data();
}

size_t netgen_model_n_nodes(const netgen_model* model) {
  return model ? netgen::model_nodes(model->model) : 0;
}

netgen_status netgen_model_diagnostics_json(const netgen_model* model, char** out) {
  return guarded([&] {
    require(model && out, "null argument");
    *out = copy_string(netgen::model_diagnostics(model->model).dump());
  });
}

netgen_status netgen_statistic_parse(const char* name, netgen_statistic* out) {
  return guarded([&] {
    require(name && out, "null argument");
    *out = netgen::parse_statistic(name) == netgen::StatisticKind::MeanInDegree
               ? NETGEN_STAT_IN_DEGREE
               : NETGEN_STAT_CLUSTERING;
  });
}

netgen_status netgen_permutation_test(const netgen_graphset* set1, const netgen_graphset* set2,
                                      netgen_statistic statistic, size_t n_perm, uint64_t seed,
                                      netgen_perm_result* out) {
  return guarded([&] {
    require(set1 && set2 && out, "null argument");
    fill(netgen::permutation_test(set1->set, set2->set, to_statistic(statistic), n_perm, seed), out);
  });
}

netgen_status netgen_permutation_test_values(const double* values1, size_t n1,
                                             const double* values2, size_t n2, size_t n_perm,
                                             uint64_t seed, netgen_perm_result* out) {
  return guarded([&] {
    require(values1 && values2 && out, "null argument");
    fill(netgen::permutation_test(std::span(values1, n1), std::span(values2, n2), n_perm, seed), out);
  });
}

netgen_status netgen_mean_adjacency(const netgen_graphset* set, double* out, size_t out_len) {
  return guarded([&] {
    require(set && out, "null argument");
    const auto m = netgen::mean_adjacency(set->set);
    require(out_len == m.values.size(), "output buffer must hold n*n entries");
    std::memcpy(out, m.values.data(), m.values.size() * sizeof(double));
  });
}

netgen_status netgen_mean_adjacency_write(const netgen_graphset* set, const char* csv_path,
                                          const char* pgm_path) {
  return guarded([&] {
    require(set != nullptr, "null argument");
    const auto m = netgen::mean_adjacency(set->set);
    auto write = [&](const char* path, auto writer) {
      if (!path) return;
      std::ofstream file(path, std::ios::binary);
      if (!file) throw netgen::IoError(std::string("cannot open ") + path + " for writing");
      writer(file, m);
      if (!file) throw netgen::IoError(std::string("failed writing ") + path);
    };
    write(csv_path, [](std::ostream& o, const netgen::MeanAdjacency& a) { netgen::write_matrix_csv(o, a); });
    write(pgm_path, [](std::ostream& o, const netgen::MeanAdjacency& a) { netgen::write_matrix_pgm(o, a); });
  });
}

netgen_status netgen_experiment_run(const char* config_path, const char* output_dir) {
  return guarded([&] {
    require(config_path != nullptr, "null argument");
    netgen::ExperimentConfig config = netgen::load_experiment_config(config_path);
    if (output_dir) config.output_dir = output_dir;
    netgen::ExperimentResult result = netgen::run_experiment(config);
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) throw netgen::IoError("cannot create " + config.output_dir.string() + ": " + ec.message());
    auto write = [](const std::filesystem::path& p, const std::string& text) {
      std::ofstream file(p, std::ios::binary);
      if (!file) throw netgen::IoError("cannot open " + p.string() + " for writing");
      file << text;
      if (!file) throw netgen::IoError("failed writing " + p.string());
    };
    write(config.output_dir / "report.json", netgen::report_text(result.report));
    write(config.output_dir / "timings.json", result.timings.dump(2) + "\n");
    netgen::render_report(result.report, config.output_dir);
  });
}

netgen_status netgen_experiment_check(const char* config_path) {
  return guarded([&] {
    require(config_path != nullptr, "null argument");
    netgen::load_experiment_config(config_path);
  });
}

netgen_status netgen_report_render(const char* report_path, const char* output_dir) {
  return guarded([&] {
    require(report_path && output_dir, "null argument");
    std::ifstream in(report_path);
    if (!in) throw netgen::IoError(std::string("cannot open ") + report_path);
    nlohmann::json report;
    try {
      report = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw netgen::ParseError(std::string(report_path) + ": " + e.what());
    }
    netgen::render_report(report, output_dir);
  });
}

}  // extern "C"
