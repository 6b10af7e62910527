// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef NETGEN_MODELS_HPP
#define NETGEN_MODELS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "netgen/boltzmann.hpp"
#include "netgen/depnet.hpp"
#include "netgen/ergm.hpp"
#include "netgen/graph.hpp"

namespace netgen {

/// Any fitted generator. RBMs are one-layer DBNs.
using AnyModel = std::variant<DbnModel, DepNetModel, ErgmModel>;

/// Kinds accepted by fit_model: deep, rbm, depnet, p1, markov,
/// higher-order, ergm (custom "terms" list).
bool is_model_kind(std::string_view kind);

/// Hyperparameters come from `params`; unknown keys raise ConfigError.
/// Keys that only affect sampling are accepted and ignored here.
///
///   deep / rbm : layer_sizes (deep) | n_hidden (rbm), learning_rate,
///                lr_decay, decay_every, epochs, minibatch, n_chains,
///                weight_decay, use_bias, init_scale; top_gibbs_steps
///   depnet     : penalty, tolerance, max_iterations; burn_in_sweeps,
///                thin_sweeps, graphs_per_chain
///   ergm kinds : iterations, samples_per_iter, gain, gain_period, ridge,
///                max_halvings, smd_threshold, decay, terms (ergm only:
///                [{"name": "edges"}, {"name": "gwidegree", "decay": 0.5}]),
///                fit_burn_in, fit_thin; burn_in, thin, graphs_per_chain
/// Checks kind and params (names and types) without fitting.
void validate_model_params(std::string_view kind, const nlohmann::json& params);

AnyModel fit_model(std::string_view kind, const nlohmann::json& params, const GraphSet& train,
                   std::uint64_t seed);

/// Sampling keys from `params` (see fit_model); everything else is ignored.
GraphSet sample_model(const AnyModel& model, std::size_t count, const nlohmann::json& params,
                      std::uint64_t seed);

std::string_view model_kind(const AnyModel& model);  // dbn | depnet | ergm
std::size_t model_nodes(const AnyModel& model);
nlohmann::json model_diagnostics(const AnyModel& model);

/// Text checkpoints; doubles are written with 17 significant digits so a
/// save/load round trip is bit-exact.
void write_model(std::ostream& out, const AnyModel& model);
AnyModel read_model(std::istream& in);
void save_model(const std::filesystem::path& path, const AnyModel& model);
AnyModel load_model(const std::filesystem::path& path);

}  // namespace netgen

#endif  // NETGEN_MODELS_HPP
