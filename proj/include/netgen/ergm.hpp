// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef NETGEN_ERGM_HPP
#define NETGEN_ERGM_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netgen/config_stats.hpp"
#include "netgen/graph.hpp"

namespace netgen {

enum class ErgmPreset { P1, Markov, HigherOrder };

std::string_view preset_name(ErgmPreset preset);  // p1 | markov | higher-order
ErgmPreset parse_preset(std::string_view name);

/// P1 = {edges, mutual}; Markov adds the four two- and three-node
/// configurations; HigherOrder adds the geometric and alternating terms.
StatSpec ergm_preset(ErgmPreset preset, double decay = kDefaultDecay);

struct ErgmDiagnostics {
  std::string method;  // "pseudolikelihood" or "mcmc-mle"
  int iterations = 0;
  double pl_gradient_norm = 0.0;
  bool separation = false;  // pseudo-likelihood hit the |eta| bound
  bool converged = false;
  int gain_halvings = 0;
  std::vector<double> standardized_mean_difference;  // |obs - sim| / sd_sim
  double degenerate_fraction = 0.0;  // empty or complete graphs in the last simulation
  std::string message;
};

struct ErgmModel {
  StatSpec spec;
  std::vector<double> eta;
  std::size_t n_nodes = 0;
  ErgmDiagnostics diagnostics;
};

void validate(const ErgmModel& model);

/// Proposal counts of zero select the defaults 20 n(n-1) and 5 n(n-1).
struct ErgmSampleOptions {
  std::size_t burn_in = 0;
  std::size_t thin = 0;
  std::size_t graphs_per_chain = 1;  // 1 = an independent chain per graph
};

struct ErgmSample {
  GraphSet graphs;
  double degenerate_fraction = 0.0;
  double acceptance_rate = 0.0;
};

/// Metropolis-Hastings with uniform single-dyad toggles. Every chain starts
/// from a density-0.5 directed ER graph drawn from derive_seed(seed, c).
ErgmSample sample_ergm(const ErgmModel& model, std::size_t count,
                       const ErgmSampleOptions& options, std::uint64_t seed);

/// Mean log pseudo-likelihood over every dyad of every training graph:
/// logistic regression of y_ij on the change statistics at (i, j).
class PseudoLikelihood {
 public:
  PseudoLikelihood(const StatSpec& spec, const GraphSet& train);

  double value(std::span<const double> eta) const;
  Eigen::VectorXd gradient(std::span<const double> eta) const;
  /// Negative Hessian (positive semi-definite).
  Eigen::MatrixXd information(std::span<const double> eta) const;

 private:
  Eigen::MatrixXd design_;  // one row per (graph, dyad)
  Eigen::VectorXd response_;
};

struct PseudoLikelihoodFit {
  std::vector<double> eta;
  double gradient_norm = 0.0;  // projected onto the feasible box
  int iterations = 0;
  bool separation = false;
};

inline constexpr double kEtaBound = 20.0;

/// Damped Newton with |eta_k| <= kEtaBound; stops at projected gradient
/// norm <= tolerance.
PseudoLikelihoodFit fit_pseudolikelihood(const StatSpec& spec, const GraphSet& train,
                                         double tolerance = 1e-8, int max_iterations = 200);

struct ErgmFitOptions {
  int iterations = 60;
  std::size_t samples_per_iter = 100;
  double gain = 0.1;          // gain at iteration t is gain / (1 + t / gain_period)
  double gain_period = 20.0;
  double ridge = 1e-6;        // added to the simulated covariance
  int max_halvings = 20;
  double smd_threshold = 0.3; // converged iff every final SMD is below this
  ErgmSampleOptions sampler;
};

/// Pseudo-likelihood start, then stochastic-approximation MCMC-MLE on the
/// joint likelihood of the i.i.d. training graphs. Never throws for
/// non-convergence: the outcome is recorded in the diagnostics.
ErgmModel fit_ergm(const StatSpec& spec, const GraphSet& train, const ErgmFitOptions& options,
                   std::uint64_t seed);

}  // namespace netgen

#endif  // NETGEN_ERGM_HPP
