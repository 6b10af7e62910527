// Apache License, Version 2.0, refer to LICENSE.txt
#include "netgen/boltzmann.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "netgen/error.hpp"

namespace netgen {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd sigmoid(const MatrixXd& z) {
  return z.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

MatrixXd hidden_probs(const RbmModel& m, const MatrixXd& visible) {
  MatrixXd z = visible * m.weights;
  z.rowwise() += m.hidden_bias.transpose();
  return sigmoid(z);
}

MatrixXd visible_probs(const RbmModel& m, const MatrixXd& hidden) {
  MatrixXd z = hidden * m.weights.transpose();
  z.rowwise() += m.visible_bias.transpose();
  return sigmoid(z);
}

// In-place Bernoulli draw of every entry, one generator for all rows.
void sample_in_place(MatrixXd& probs, Rng& rng) {
  for (Eigen::Index r = 0; r < probs.rows(); ++r)
    for (Eigen::Index c = 0; c < probs.cols(); ++c)
      probs(r, c) = uniform01(rng) < probs(r, c) ? 1.0 : 0.0;
}

// Row r drawn from rngs[r].
void sample_rows_in_place(MatrixXd& probs, std::vector<Rng>& rngs) {
  for (Eigen::Index r = 0; r < probs.rows(); ++r)
    for (Eigen::Index c = 0; c < probs.cols(); ++c)
      probs(r, c) = uniform01(rngs[static_cast<std::size_t>(r)]) < probs(r, c) ? 1.0 : 0.0;
}

void check_binary(const MatrixXd& data, std::size_t n_visible) {
  if (data.rows() == 0) throw InvalidArgument("training data must not be empty");
  if (static_cast<std::size_t>(data.cols()) != n_visible) {
    throw InvalidArgument("data width " + std::to_string(data.cols()) +
                          " does not match n_visible " + std::to_string(n_visible));
  }
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    double v = data.data()[i];
    if (v != 0.0 && v != 1.0) throw InvalidArgument("RBM data must be binary");
  }
}

// Unnormalized log P(x) with hidden units summed out.
double free_log_weight(const RbmModel& m, const VectorXd& x) {
  VectorXd act = m.weights.transpose() * x + m.hidden_bias;
  double s = m.visible_bias.dot(x);
  for (Eigen::Index j = 0; j < act.size(); ++j) s += softplus(act(j));
  return s;
}

struct Enumeration {
  MatrixXd states;        // 2^nv x nv
  VectorXd probability;   // normalized P(x)
  double log_partition = 0.0;
};

Enumeration enumerate_visible(const RbmModel& m) {
  const std::size_t nv = m.n_visible();
  if (nv + m.n_hidden() > kExactEnumerationLimit) {
    throw InvalidArgument("exact enumeration limited to n_visible + n_hidden <= " +
                          std::to_string(kExactEnumerationLimit));
  }
  const std::size_t total = std::size_t{1} << nv;
  Enumeration e;
  e.states.resize(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(nv));
  VectorXd logw(static_cast<Eigen::Index>(total));
  for (std::size_t s = 0; s < total; ++s) {
    for (std::size_t i = 0; i < nv; ++i) {
      e.states(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)) = (s >> i) & 1U;
    }
    logw(static_cast<Eigen::Index>(s)) =
        free_log_weight(m, e.states.row(static_cast<Eigen::Index>(s)).transpose());
  }
  const double top = logw.maxCoeff();
  e.log_partition = top + std::log((logw.array() - top).exp().sum());
  e.probability = (logw.array() - e.log_partition).exp();
  return e;
}

}  // namespace

RbmModel make_rbm(std::size_t n_visible, std::size_t n_hidden, bool use_bias) {
  if (n_visible < 1 || n_hidden < 1) throw InvalidArgument("RBM needs >= 1 visible and hidden unit");
  RbmModel m;
  m.weights = MatrixXd::Zero(static_cast<Eigen::Index>(n_visible), static_cast<Eigen::Index>(n_hidden));
  m.visible_bias = VectorXd::Zero(static_cast<Eigen::Index>(n_visible));
  m.hidden_bias = VectorXd::Zero(static_cast<Eigen::Index>(n_hidden));
  m.use_bias = use_bias;
  return m;
}

void validate(const RbmModel& m) {
  if (m.weights.rows() < 1 || m.weights.cols() < 1) throw InvalidArgument("RBM has no units");
  if (m.visible_bias.size() != m.weights.rows() || m.hidden_bias.size() != m.weights.cols()) {
    throw InvalidArgument("RBM bias dimensions do not match the weight matrix");
  }
  if (!m.weights.allFinite() || !m.visible_bias.allFinite() || !m.hidden_bias.allFinite()) {
    throw InvalidArgument("RBM parameters must be finite");
  }
}

MatrixXd graphs_to_matrix(const GraphSet& set) {
  const std::size_t d = set[0].dyad_count();
  MatrixXd rows(static_cast<Eigen::Index>(set.size()), static_cast<Eigen::Index>(d));
  for (std::size_t s = 0; s < set.size(); ++s) {
    auto v = to_dyad_vector(set[s]);
    for (std::size_t k = 0; k < d; ++k) {
      rows(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(k)) = v.values[k];
    }
  }
  return rows;
}

GraphSet matrix_to_graphs(const MatrixXd& rows, std::size_t n_nodes) {
  std::vector<DirectedGraph> graphs;
  graphs.reserve(static_cast<std::size_t>(rows.rows()));
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    DyadVector v{n_nodes, std::vector<std::uint8_t>(static_cast<std::size_t>(rows.cols()))};
    for (Eigen::Index k = 0; k < rows.cols(); ++k) v.values[static_cast<std::size_t>(k)] = rows(r, k) > 0.5;
    graphs.push_back(from_dyad_vector(v));
  }
  return GraphSet(std::move(graphs));
}

RbmModel init_rbm(const MatrixXd& data, std::size_t n_hidden, const RbmHyper& hyper, Rng& rng) {
  RbmModel m = make_rbm(static_cast<std::size_t>(data.cols()), n_hidden, hyper.use_bias);
  for (Eigen::Index i = 0; i < m.weights.size(); ++i) {
    m.weights.data()[i] = hyper.init_scale * (2.0 * uniform01(rng) - 1.0);
  }
  if (hyper.use_bias) {
    VectorXd mean = data.colwise().mean().transpose();
    const double clamp = hyper.visible_logit_clamp;
    for (Eigen::Index i = 0; i < mean.size(); ++i) {
      double p = mean(i);
      double logit = p <= 0.0 ? -clamp : p >= 1.0 ? clamp : std::log(p / (1.0 - p));
      m.visible_bias(i) = std::clamp(logit, -clamp, clamp);
    }
  }
  return m;
}

SmlEstimator::SmlEstimator(const MatrixXd& data, int n_chains, Rng& rng) : rng_(rng) {
  if (n_chains < 1) throw InvalidArgument("SML needs at least one chain");
  chains_.resize(n_chains, data.cols());
  for (int c = 0; c < n_chains; ++c) {
    chains_.row(c) = data.row(static_cast<Eigen::Index>(uniform_index(rng_, static_cast<std::size_t>(data.rows()))));
  }
}

RbmGradient SmlEstimator::gradient(const RbmModel& m, const MatrixXd& batch) {
  const double nb = static_cast<double>(batch.rows());
  const double nc = static_cast<double>(chains_.rows());
  MatrixXd pos_h = hidden_probs(m, batch);

  MatrixXd h = hidden_probs(m, chains_);
  sample_in_place(h, rng_);
  chains_ = visible_probs(m, h);
  sample_in_place(chains_, rng_);
  MatrixXd neg_h = hidden_probs(m, chains_);

  RbmGradient g;
  g.weights = batch.transpose() * pos_h / nb - chains_.transpose() * neg_h / nc;
  g.visible_bias = batch.colwise().mean().transpose() - chains_.colwise().mean().transpose();
  g.hidden_bias = pos_h.colwise().mean().transpose() - neg_h.colwise().mean().transpose();
  return g;
}

RbmModel fit_rbm(const MatrixXd& data, std::size_t n_hidden, const RbmHyper& hyper,
                 std::uint64_t seed) {
  check_binary(data, static_cast<std::size_t>(data.cols()));
  if (n_hidden < 1) throw InvalidArgument("n_hidden must be >= 1");
  if (hyper.epochs < 0 || hyper.minibatch < 1 || hyper.decay_every < 1) {
    throw InvalidArgument("epochs >= 0, minibatch >= 1 and decay_every >= 1 required");
  }
  Rng rng = make_rng(seed);
  RbmModel m = init_rbm(data, n_hidden, hyper, rng);
  SmlEstimator sml(data, hyper.n_chains, rng);

  const auto rows = static_cast<std::size_t>(data.rows());
  const std::size_t batch_size = std::min<std::size_t>(static_cast<std::size_t>(hyper.minibatch), rows);
  std::vector<Eigen::Index> order(rows);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  MatrixXd batch;

  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    const double lr = hyper.learning_rate * std::pow(hyper.lr_decay, epoch / hyper.decay_every);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < rows; start += batch_size) {
      const std::size_t len = std::min(batch_size, rows - start);
      batch.resize(static_cast<Eigen::Index>(len), data.cols());
      for (std::size_t r = 0; r < len; ++r) {
        batch.row(static_cast<Eigen::Index>(r)) = data.row(order[start + r]);
      }
      RbmGradient g = sml.gradient(m, batch);
      m.weights += lr * (g.weights - hyper.weight_decay * m.weights);
      if (m.use_bias) {
        m.visible_bias += lr * g.visible_bias;
        m.hidden_bias += lr * g.hidden_bias;
      }
    }
  }
  if (!m.weights.allFinite() || !m.visible_bias.allFinite() || !m.hidden_bias.allFinite()) {
    throw NumericError("RBM training diverged; lower the learning rate");
  }
  m.persistent_chains = sml.chains();
  return m;
}

double exact_loglik(const RbmModel& m, const MatrixXd& data) {
  validate(m);
  check_binary(data, m.n_visible());
  const Enumeration e = enumerate_visible(m);
  double total = 0.0;
  for (Eigen::Index r = 0; r < data.rows(); ++r) {
    total += free_log_weight(m, data.row(r).transpose()) - e.log_partition;
  }
  return total / static_cast<double>(data.rows());
}

RbmGradient exact_loglik_gradient(const RbmModel& m, const MatrixXd& data) {
  validate(m);
  check_binary(data, m.n_visible());
  const Enumeration e = enumerate_visible(m);
  const MatrixXd data_h = hidden_probs(m, data);
  const MatrixXd all_h = hidden_probs(m, e.states);
  const MatrixXd weighted_states = e.probability.asDiagonal() * e.states;
  const double nd = static_cast<double>(data.rows());

  RbmGradient g;
  g.weights = data.transpose() * data_h / nd - weighted_states.transpose() * all_h;
  g.visible_bias = data.colwise().mean().transpose() - e.states.transpose() * e.probability;
  g.hidden_bias = data_h.colwise().mean().transpose() - all_h.transpose() * e.probability;
  return g;
}

MatrixXd sample_rbm(const RbmModel& m, std::size_t count, std::size_t gibbs_steps,
                    std::uint64_t seed) {
  validate(m);
  if (count == 0) throw InvalidArgument("sample count must be positive");
  if (gibbs_steps < 1) throw InvalidArgument("gibbs_steps must be >= 1");
  std::vector<Rng> rngs;
  rngs.reserve(count);
  for (std::size_t r = 0; r < count; ++r) rngs.push_back(make_rng(derive_seed(seed, r)));

  const auto rows = static_cast<Eigen::Index>(count);
  MatrixXd x = sigmoid(m.visible_bias.transpose()).replicate(rows, 1);
  sample_rows_in_place(x, rngs);
  for (std::size_t step = 0; step < gibbs_steps; ++step) {
    MatrixXd h = hidden_probs(m, x);
    sample_rows_in_place(h, rngs);
    x = visible_probs(m, h);
    sample_rows_in_place(x, rngs);
  }
  return x;
}

void validate(const DbnModel& m) {
  if (m.layers.empty()) throw InvalidArgument("DBN needs at least one layer");
  if (m.n_nodes < 2 || m.layers[0].n_visible() != m.n_nodes * (m.n_nodes - 1)) {
    throw InvalidArgument("DBN bottom layer does not match the dyad count of n_nodes");
  }
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    validate(m.layers[l]);
    if (l > 0 && m.layers[l].n_visible() != m.layers[l - 1].n_hidden()) {
      throw InvalidArgument("DBN layer " + std::to_string(l) + " does not chain to the one below");
    }
  }
}

DbnModel fit_dbn(const GraphSet& train, std::vector<std::size_t> layer_sizes,
                 const RbmHyper& hyper, std::uint64_t seed) {
  const std::size_t d = train[0].dyad_count();
  if (d == 0) throw InvalidArgument("DBN needs graphs with at least two nodes");
  if (layer_sizes.empty()) layer_sizes = {d, d};

  DbnModel dbn;
  dbn.n_nodes = train.n_nodes();
  dbn.hyper = hyper;
  dbn.seed = seed;
  MatrixXd input = graphs_to_matrix(train);
  for (std::size_t l = 0; l < layer_sizes.size(); ++l) {
    if (l > 0) {
      Rng up = make_rng(derive_seed(seed, "dbn-up/" + std::to_string(l)));
      input = hidden_probs(dbn.layers.back(), input);
      sample_in_place(input, up);
    }
    const std::uint64_t layer_seed = l == 0 ? seed : derive_seed(seed, l);
    dbn.layers.push_back(fit_rbm(input, layer_sizes[l], hyper, layer_seed));
  }
  return dbn;
}

GraphSet sample_dbn(const DbnModel& m, std::size_t count, std::size_t top_gibbs_steps,
                    std::uint64_t seed) {
  validate(m);
  MatrixXd state = sample_rbm(m.layers.back(), count, top_gibbs_steps, seed);
  if (m.layers.size() > 1) {
    const std::uint64_t down_seed = derive_seed(seed, "dbn-down");
    std::vector<Rng> rngs;
    rngs.reserve(count);
    for (std::size_t r = 0; r < count; ++r) rngs.push_back(make_rng(derive_seed(down_seed, r)));
    for (std::size_t l = m.layers.size() - 1; l-- > 0;) {
      state = visible_probs(m.layers[l], state);
      sample_rows_in_place(state, rngs);
    }
  }
  return matrix_to_graphs(state, m.n_nodes);
}

}  // namespace netgen
