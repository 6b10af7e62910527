// Apache License, Version 2.0, refer to LICENSE.txt
// Command-line front end over the netgen C API.
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netgen/netgen.h"

namespace {

// 0 on success, 1 for bad input (configuration, files, arguments),
// 2 when a well-formed request fails at run time (e.g. divergence).
int exit_code(netgen_status s) {
  if (s == NETGEN_OK) return 0;
  if (s == NETGEN_ERR_NUMERIC || s == NETGEN_ERR_INTERNAL) return 2;
  return 1;
}

struct Failure {
  netgen_status status;
};

void check(netgen_status s) {
  if (s != NETGEN_OK) {
    std::fprintf(stderr, "netgen: %s: %s\n", netgen_status_name(s), netgen_last_error());
    throw Failure{s};
  }
}

using GraphSetPtr = std::unique_ptr<netgen_graphset, decltype(&netgen_graphset_free)>;
using ModelPtr = std::unique_ptr<netgen_model, decltype(&netgen_model_free)>;

GraphSetPtr load_set(const std::string& path) {
  netgen_graphset* set = nullptr;
  check(netgen_graphset_load(path.c_str(), &set));
  return GraphSetPtr(set, netgen_graphset_free);
}

std::string params_text(const std::string& inline_json, const std::string& file) {
  if (file.empty()) return inline_json;
  std::ifstream in(file);
  if (!in) {
    std::fprintf(stderr, "netgen: cannot open %s\n", file.c_str());
    throw Failure{NETGEN_ERR_IO};
  }
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netgen: fit, sample and compare generative models of small directed networks"};
  app.require_subcommand(1);

  netgen_generator_config gen;
  netgen_generator_config_init(&gen);
  std::string gen_kind = "er", gen_out;
  auto* generate = app.add_subcommand("generate", "Draw a set of synthetic ground-truth graphs");
  generate->add_option("--kind", gen_kind, "er | config | krapivsky")->capture_default_str();
  generate->add_option("-n,--nodes", gen.n_nodes, "Nodes per graph")->capture_default_str();
  generate->add_option("-c,--count", gen.count, "Number of graphs")->capture_default_str();
  generate->add_option("-s,--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("--er-p", gen.er_p, "Edge probability (er)")->capture_default_str();
  generate->add_option("--exponent", gen.degree_law_exponent, "Degree law exponent (config)")
      ->capture_default_str();
  generate->add_option("--krapivsky-p", gen.krapivsky_p, "Node-step probability (krapivsky)")
      ->capture_default_str();
  generate->add_option("--lambda", gen.krapivsky_lambda, "In-degree offset (krapivsky)")
      ->capture_default_str();
  generate->add_option("--mu", gen.krapivsky_mu, "Out-degree offset (krapivsky)")->capture_default_str();
  generate->add_option("-o,--output", gen_out, "Output graphset file")->required();

  std::string snap_dir, snap_out;
  std::size_t snap_nodes = 8, snap_count = 200;
  std::uint64_t snap_seed = 0;
  auto* ingest = app.add_subcommand("ingest-snap", "Subsample SNAP ego networks into a graphset");
  ingest->add_option("-d,--dir", snap_dir, "Directory of <id>.edges files")->required();
  ingest->add_option("-n,--nodes", snap_nodes, "Nodes per sampled ego network")->capture_default_str();
  ingest->add_option("-c,--count", snap_count, "Number of samples")->capture_default_str();
  ingest->add_option("-s,--seed", snap_seed, "Random seed")->capture_default_str();
  ingest->add_option("-o,--output", snap_out, "Output graphset file")->required();

  std::string fit_kind, fit_params, fit_params_file, fit_train, fit_out;
  std::uint64_t fit_seed = 0;
  auto* fit = app.add_subcommand("fit", "Fit a model to a graphset");
  fit->add_option("-k,--kind", fit_kind, "deep | rbm | depnet | p1 | markov | higher-order | ergm")
      ->required();
  fit->add_option("-t,--train", fit_train, "Training graphset")->required();
  fit->add_option("-p,--params", fit_params, "Hyperparameters as a JSON object");
  fit->add_option("--params-file", fit_params_file, "Hyperparameters from a JSON file");
  fit->add_option("-s,--seed", fit_seed, "Random seed")->capture_default_str();
  fit->add_option("-o,--output", fit_out, "Model checkpoint")->required();

  std::string sample_model, sample_params, sample_params_file, sample_out;
  std::size_t sample_count = 30;
  std::uint64_t sample_seed = 0;
  auto* sample = app.add_subcommand("sample", "Draw graphs from a fitted model");
  sample->add_option("-m,--model", sample_model, "Model checkpoint")->required();
  sample->add_option("-c,--count", sample_count, "Number of graphs")->capture_default_str();
  sample->add_option("-p,--params", sample_params, "Sampler settings as a JSON object");
  sample->add_option("--params-file", sample_params_file, "Sampler settings from a JSON file");
  sample->add_option("-s,--seed", sample_seed, "Random seed")->capture_default_str();
  sample->add_option("-o,--output", sample_out, "Output graphset file")->required();

  std::string eval_a, eval_b, eval_csv, eval_pgm;
  std::vector<std::string> eval_stats{"in-degree", "clustering"};
  std::size_t eval_perm = 1000;
  std::uint64_t eval_seed = 0;
  auto* evaluate = app.add_subcommand("evaluate", "Permutation-test two graphsets");
  evaluate->add_option("-a,--first", eval_a, "First graphset (e.g. ground truth)")->required();
  evaluate->add_option("-b,--second", eval_b, "Second graphset (e.g. samples)")->required();
  evaluate->add_option("--statistic", eval_stats, "in-degree and/or clustering")->capture_default_str();
  evaluate->add_option("--permutations", eval_perm, "Number of permutations")->capture_default_str();
  evaluate->add_option("-s,--seed", eval_seed, "Random seed")->capture_default_str();
  evaluate->add_option("--adjacency-csv", eval_csv, "Write the second set's mean adjacency (CSV)");
  evaluate->add_option("--adjacency-pgm", eval_pgm, "Write the second set's mean adjacency (PGM)");

  std::string exp_config, exp_out;
  bool exp_check = false;
  auto* experiment = app.add_subcommand("experiment", "Run a full experiment from a JSON config");
  experiment->add_option("-c,--config", exp_config, "Experiment config")->required();
  experiment->add_option("-o,--output-dir", exp_out, "Override the config's output_dir");
  experiment->add_flag("--check", exp_check, "Validate the config and exit");

  std::string rep_in, rep_out;
  auto* report = app.add_subcommand("report", "Render tables and heatmaps from a report");
  report->add_option("-r,--report", rep_in, "report.json from an experiment")->required();
  report->add_option("-o,--output-dir", rep_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; usage errors count as configuration errors.
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*generate) {
      check(netgen_generator_kind_parse(gen_kind.c_str(), &gen.kind));
      netgen_graphset* raw = nullptr;
      check(netgen_generate(&gen, &raw));
      GraphSetPtr set(raw, netgen_graphset_free);
      check(netgen_graphset_save(set.get(), gen_out.c_str()));
    } else if (*ingest) {
      netgen_graphset* raw = nullptr;
      std::size_t egos = 0;
      const netgen_status s =
          netgen_ego_sample(snap_dir.c_str(), snap_nodes, snap_count, snap_seed, &egos, &raw);
      if (*netgen_last_warnings()) std::fprintf(stderr, "%s", netgen_last_warnings());
      check(s);
      GraphSetPtr set(raw, netgen_graphset_free);
      check(netgen_graphset_save(set.get(), snap_out.c_str()));
      std::printf("ego networks read: %zu\n", egos);
    } else if (*fit) {
      GraphSetPtr train = load_set(fit_train);
      const std::string params = params_text(fit_params, fit_params_file);
      netgen_model* raw = nullptr;
      check(netgen_model_fit(fit_kind.c_str(), params.c_str(), train.get(), fit_seed, &raw));
      ModelPtr model(raw, netgen_model_free);
      check(netgen_model_save(model.get(), fit_out.c_str()));
      char* diag = nullptr;
      check(netgen_model_diagnostics_json(model.get(), &diag));
      std::printf("%s\n", diag);
      netgen_string_free(diag);
    } else if (*sample) {
      netgen_model* raw = nullptr;
      check(netgen_model_load(sample_model.c_str(), &raw));
      ModelPtr model(raw, netgen_model_free);
      const std::string params = params_text(sample_params, sample_params_file);
      netgen_graphset* out = nullptr;
      check(netgen_model_sample(model.get(), sample_count, params.c_str(), sample_seed, &out));
      GraphSetPtr set(out, netgen_graphset_free);
      check(netgen_graphset_save(set.get(), sample_out.c_str()));
    } else if (*evaluate) {
      GraphSetPtr a = load_set(eval_a);
      GraphSetPtr b = load_set(eval_b);
      std::printf("statistic,p_value,effect_size,mean_first,mean_second,permutations,exhaustive\n");
      for (const auto& name : eval_stats) {
        netgen_statistic stat;
        check(netgen_statistic_parse(name.c_str(), &stat));
        netgen_perm_result r;
        check(netgen_permutation_test(a.get(), b.get(), stat, eval_perm, eval_seed, &r));
        std::printf("%s,%.6g,%.6g,%.6g,%.6g,%zu,%d\n", name.c_str(), r.p_value, r.effect_size,
                    r.mean1, r.mean2, r.n_permutations, r.exhaustive);
      }
      if (!eval_csv.empty() || !eval_pgm.empty()) {
        check(netgen_mean_adjacency_write(b.get(), eval_csv.empty() ? nullptr : eval_csv.c_str(),
                                          eval_pgm.empty() ? nullptr : eval_pgm.c_str()));
      }
    } else if (*experiment) {
      if (exp_check) {
        check(netgen_experiment_check(exp_config.c_str()));
        std::printf("config ok\n");
      } else {
        check(netgen_experiment_run(exp_config.c_str(), exp_out.empty() ? nullptr : exp_out.c_str()));
      }
    } else if (*report) {
      check(netgen_report_render(rep_in.c_str(), rep_out.c_str()));
    }
  } catch (const Failure& f) {
    return exit_code(f.status);
  }
  return 0;
}
