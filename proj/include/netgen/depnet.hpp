// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef NETGEN_DEPNET_HPP
#define NETGEN_DEPNET_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "netgen/graph.hpp"

namespace netgen {

/// Full conditional of one dyad given all others. Coefficient indices refer
/// to positions in the DyadVector layout and never include the dyad itself.
struct DyadConditional {
  double intercept = 0.0;
  std::vector<std::pair<std::size_t, double>> coefficients;
};

struct DepNetDiagnostics {
  std::size_t constant_dyads = 0;     // fitted intercept-only
  std::size_t unconverged_dyads = 0;  // hit max_iterations
  double max_subgradient_norm = 0.0;
};

/// Dependency network over the n(n-1) dyads: one L1-penalized logistic
/// regression per dyad, combined by Gibbs sampling.
struct DepNetModel {
  std::size_t n_nodes = 0;
  double penalty = 0.0;
  std::vector<double> marginals;  // training frequency per dyad; seeds chains
  std::vector<DyadConditional> conditionals;
  DepNetDiagnostics diagnostics;

  double conditional_logit(std::size_t dyad, const std::vector<std::uint8_t>& state) const;
};

/// Throws InvalidArgument if sizes or indices are inconsistent.
void validate(const DepNetModel& model);

struct DepNetFitOptions {
  double penalty = -1.0;  // negative: 0.1 * number of training graphs
  double tolerance = 1e-6;
  int max_iterations = 10000;
  double constant_logit_clamp = 15.0;
};

DepNetModel fit_depnet(const GraphSet& train, const DepNetFitOptions& options = {});

struct GibbsOptions {
  std::size_t burn_in_sweeps = 200;
  std::size_t thin_sweeps = 1;       // sweeps between graphs of one chain
  std::size_t graphs_per_chain = 1;  // 1 = an independent chain per graph
};

/// Random-scan Gibbs sampling (a fresh dyad permutation every sweep).
/// Chain c uses substream derive_seed(seed, c) and starts from independent
/// draws of the stored marginals.
GraphSet sample_depnet(const DepNetModel& model, std::size_t count,
                       const GibbsOptions& options, std::uint64_t seed);

}  // namespace netgen

#endif  // NETGEN_DEPNET_HPP
