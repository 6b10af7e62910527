// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef NETGEN_BOLTZMANN_HPP
#define NETGEN_BOLTZMANN_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "netgen/graph.hpp"
#include "netgen/rng.hpp"

namespace netgen {

/// Training hyperparameters shared by RBMs and every DBN layer.
struct RbmHyper {
  double learning_rate = 0.05;
  double lr_decay = 0.5;   // multiplied in every `decay_every` epochs
  int decay_every = 100;
  int epochs = 500;
  int minibatch = 32;      // capped at the dataset size
  int n_chains = 100;      // persistent fantasy particles
  double weight_decay = 1e-4;
  bool use_bias = true;    // false: energy is x^T W h only
  double init_scale = 0.01;
  double visible_logit_clamp = 4.0;
};

/// Binary RBM with energy -(x^T W h + b_vis^T x + b_hid^T h).
struct RbmModel {
  Eigen::MatrixXd weights;  // n_visible x n_hidden
  Eigen::VectorXd visible_bias;
  Eigen::VectorXd hidden_bias;
  bool use_bias = true;
  Eigen::MatrixXd persistent_chains;  // last training state; not serialized

  std::size_t n_visible() const { return static_cast<std::size_t>(weights.rows()); }
  std::size_t n_hidden() const { return static_cast<std::size_t>(weights.cols()); }
};

/// Zero-parameter RBM.
RbmModel make_rbm(std::size_t n_visible, std::size_t n_hidden, bool use_bias = true);
void validate(const RbmModel& model);

/// Rows are samples, entries 0/1.
Eigen::MatrixXd graphs_to_matrix(const GraphSet& set);
GraphSet matrix_to_graphs(const Eigen::MatrixXd& rows, std::size_t n_nodes);

struct RbmGradient {
  Eigen::MatrixXd weights;
  Eigen::VectorXd visible_bias;
  Eigen::VectorXd hidden_bias;
};

/// Initial parameters: uniform(+-init_scale) weights, zero hidden bias,
/// visible bias at the clamped empirical logits (zero without biases).
RbmModel init_rbm(const Eigen::MatrixXd& data, std::size_t n_hidden, const RbmHyper& hyper,
                  Rng& rng);

/// Stochastic maximum likelihood estimator of the log-likelihood gradient.
/// Each call advances every persistent chain by one block-Gibbs step and
/// returns E_batch[x h^T] - E_chains[x h^T] (hidden units as probabilities),
/// without weight decay.
class SmlEstimator {
 public:
  /// Chains start at data rows drawn with replacement.
  SmlEstimator(const Eigen::MatrixXd& data, int n_chains, Rng& rng);
  RbmGradient gradient(const RbmModel& model, const Eigen::MatrixXd& batch);
  const Eigen::MatrixXd& chains() const { return chains_; }

 private:
  Eigen::MatrixXd chains_;
  Rng& rng_;
};

/// SML training; deterministic given seed. epochs == 0 returns the
/// initialization.
RbmModel fit_rbm(const Eigen::MatrixXd& data, std::size_t n_hidden, const RbmHyper& hyper,
                 std::uint64_t seed);

/// Largest n_visible + n_hidden accepted by the enumeration routines.
inline constexpr std::size_t kExactEnumerationLimit = 24;

/// Mean log P(x) over data rows, with the partition function enumerated
/// over all visible states and hidden units summed out analytically.
double exact_loglik(const RbmModel& model, const Eigen::MatrixXd& data);

/// Exact gradient of exact_loglik by enumeration.
RbmGradient exact_loglik_gradient(const RbmModel& model, const Eigen::MatrixXd& data);

/// count samples, each an independent block-Gibbs chain (h|x then x|h) of
/// gibbs_steps steps started from Bernoulli(sigmoid(b_vis)). Row r uses
/// substream derive_seed(seed, r).
Eigen::MatrixXd sample_rbm(const RbmModel& model, std::size_t count, std::size_t gibbs_steps,
                           std::uint64_t seed);

/// Greedily stacked RBMs; layers[l].n_visible == layers[l-1].n_hidden.
struct DbnModel {
  std::size_t n_nodes = 0;
  std::vector<RbmModel> layers;
  RbmHyper hyper;
  std::uint64_t seed = 0;
};

void validate(const DbnModel& model);

/// Layer 0 is fit_rbm(data, sizes[0], hyper, seed), so a one-layer stack
/// equals a plain RBM. Layer l > 0 trains on hidden states sampled from
/// layer l-1 given its own training inputs. Empty sizes means
/// {n_visible, n_visible}.
DbnModel fit_dbn(const GraphSet& train, std::vector<std::size_t> layer_sizes,
                 const RbmHyper& hyper, std::uint64_t seed);

inline constexpr std::size_t kDefaultTopGibbsSteps = 2000;

/// Block Gibbs in the top RBM (sample_rbm with the same seed), then one
/// stochastic down-pass through the lower layers.
GraphSet sample_dbn(const DbnModel& model, std::size_t count, std::size_t top_gibbs_steps,
                    std::uint64_t seed);

}  // namespace netgen

#endif  // NETGEN_BOLTZMANN_HPP
