// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef NETGEN_GENERATORS_HPP
#define NETGEN_GENERATORS_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>

#include <vector>

#include "netgen/graph.hpp"
#include "netgen/rng.hpp"

namespace netgen {

enum class GeneratorKind { DirectedEr, ConfigModel, Krapivsky };

std::string_view generator_name(GeneratorKind kind);  // er | config | krapivsky
GeneratorKind parse_generator_kind(std::string_view name);

struct GeneratorConfig {
  GeneratorKind kind = GeneratorKind::DirectedEr;
  std::size_t n_nodes = 8;
  std::size_t count = 200;
  std::uint64_t seed = 0;
  double er_p = 0.3;
  double degree_law_exponent = 2.5;
  double krapivsky_p = 0.4;       // probability of a node-addition step
  double krapivsky_lambda = 1.0;  // in-degree offset for targets
  double krapivsky_mu = 1.0;      // out-degree offset for sources
};

/// Throws InvalidArgument on out-of-range parameters.
void validate(const GeneratorConfig& config);

/// Dispatches on config.kind. Graph i is drawn from substream
/// derive_seed(seed, i).
GraphSet generate(const GeneratorConfig& config);

GraphSet gen_directed_er(std::size_t n, double p, std::size_t count, std::uint64_t seed);

/// Degree sequences from P(k) proportional to (k+1)^-exponent on {0..n-1},
/// directed stub matching, then loops dropped and multi-edges collapsed.
GraphSet gen_config_model(std::size_t n, double exponent, std::size_t count,
                          std::uint64_t seed);

/// One configuration-model draw before simple-graph repair: the equalized
/// degree sequences and the matched stubs (may contain loops and repeats).
struct StubMatching {
  std::vector<std::size_t> out_degrees;
  std::vector<std::size_t> in_degrees;
  std::vector<Edge> stubs;
};
StubMatching config_model_stubs(std::size_t n, double exponent, Rng& rng);

/// Directed preferential-attachment growth from the seed graph 0->1.
GraphSet gen_krapivsky(std::size_t n, double p, double lambda, double mu,
                       std::size_t count, std::uint64_t seed);

/// Bounded rejection loop for edge steps in gen_krapivsky.
inline constexpr int kKrapivskyMaxRetries = 100;

/// Induced subgraph on the ego plus n-1 uniformly chosen other nodes,
/// relabelled so the ego is 0 and the rest keep their relative order.
/// Throws EgoTooSmall when the parent has fewer than n nodes.
DirectedGraph sample_ego(const DirectedGraph& parent, std::size_t ego, std::size_t n,
                         std::uint64_t seed);

}  // namespace netgen

#endif  // NETGEN_GENERATORS_HPP
