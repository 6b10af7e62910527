// Apache License, Version 2.0, refer to LICENSE.txt
#include "netgen/depnet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "netgen/error.hpp"
#include "netgen/l1_logistic.hpp"
#include "netgen/parallel.hpp"
#include "netgen/rng.hpp"

namespace netgen {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::size_t chains_for(std::size_t count, std::size_t per_chain) {
  return (count + per_chain - 1) / per_chain;
}

}  // namespace

double DepNetModel::conditional_logit(std::size_t dyad,
                                      const std::vector<std::uint8_t>& state) const {
  const auto& c = conditionals[dyad];
  double z = c.intercept;
  for (const auto& [idx, w] : c.coefficients) {
    if (state[idx]) z += w;
  }
  return z;
}

void validate(const DepNetModel& m) {
  if (m.n_nodes < 2) throw InvalidArgument("dependency network needs n_nodes >= 2");
  const std::size_t d = m.n_nodes * (m.n_nodes - 1);
  if (m.conditionals.size() != d || m.marginals.size() != d) {
    throw InvalidArgument("dependency network needs one conditional and marginal per dyad");
  }
  for (std::size_t k = 0; k < d; ++k) {
    if (!std::isfinite(m.conditionals[k].intercept)) {
      throw InvalidArgument("non-finite intercept for dyad " + std::to_string(k));
    }
    for (const auto& [idx, w] : m.conditionals[k].coefficients) {
      if (idx >= d || idx == k) {
        throw InvalidArgument("bad coefficient index " + std::to_string(idx) + " for dyad " +
                              std::to_string(k));
      }
      if (!std::isfinite(w)) throw InvalidArgument("non-finite coefficient");
    }
    if (!(m.marginals[k] >= 0.0 && m.marginals[k] <= 1.0)) {
      throw InvalidArgument("marginals must lie in [0, 1]");
    }
  }
}

DepNetModel fit_depnet(const GraphSet& train, const DepNetFitOptions& options) {
  const std::size_t n = train.n_nodes();
  if (n < 2) throw InvalidArgument("dependency network needs n_nodes >= 2");
  const std::size_t d = n * (n - 1);
  const std::size_t m = train.size();

  DepNetModel model;
  model.n_nodes = n;
  model.penalty = options.penalty < 0 ? 0.1 * static_cast<double>(m) : options.penalty;
  model.marginals.assign(d, 0.0);
  model.conditionals.resize(d);

  // Column k holds the training graphs in which dyad k is present.
  std::vector<BinaryColumn> columns(d);
  std::vector<std::vector<std::uint8_t>> targets(d, std::vector<std::uint8_t>(m, 0));
  // Rows are sorted first so the fit does not depend on training order,
  // not even through floating-point summation order.
  std::vector<std::vector<std::uint8_t>> rows;
  rows.reserve(m);
  for (const auto& g : train) rows.push_back(to_dyad_vector(g).values);
  std::sort(rows.begin(), rows.end());
  for (std::size_t s = 0; s < m; ++s) {
    const auto& v = rows[s];
    for (std::size_t k = 0; k < d; ++k) {
      if (v[k]) {
        columns[k].push_back(static_cast<std::uint32_t>(s));
        targets[k][s] = 1;
      }
    }
  }
  for (std::size_t k = 0; k < d; ++k) {
    model.marginals[k] = static_cast<double>(columns[k].size()) / static_cast<double>(m);
  }

  std::vector<L1LogisticResult> fits(d);
  std::vector<std::uint8_t> constant(d, 0);
  parallel_for(d, [&](std::size_t k) {
    if (columns[k].empty() || columns[k].size() == m) {
      constant[k] = 1;
      return;
    }
    std::vector<const BinaryColumn*> features;
    features.reserve(d - 1);
    for (std::size_t j = 0; j < d; ++j)
      if (j != k) features.push_back(&columns[j]);
    fits[k] = fit_l1_logistic(features, targets[k],
                              {model.penalty, options.tolerance, options.max_iterations});
  });

  for (std::size_t k = 0; k < d; ++k) {
    auto& cond = model.conditionals[k];
    if (constant[k]) {
      const double clamp = options.constant_logit_clamp;
      cond.intercept = columns[k].empty() ? -clamp : clamp;
      ++model.diagnostics.constant_dyads;
      continue;
    }
    cond.intercept = fits[k].intercept;
    for (std::size_t f = 0; f < fits[k].coefficients.size(); ++f) {
      const double w = fits[k].coefficients[f];
      if (w != 0.0) cond.coefficients.emplace_back(f < k ? f : f + 1, w);
    }
    if (!fits[k].converged) ++model.diagnostics.unconverged_dyads;
    model.diagnostics.max_subgradient_norm =
        std::max(model.diagnostics.max_subgradient_norm, fits[k].subgradient_norm);
  }
  return model;
}

GraphSet sample_depnet(const DepNetModel& model, std::size_t count,
                       const GibbsOptions& options, std::uint64_t seed) {
  validate(model);
  if (count == 0) throw InvalidArgument("sample count must be positive");
  if (options.burn_in_sweeps < 1 || options.thin_sweeps < 1 || options.graphs_per_chain < 1) {
    throw InvalidArgument("burn-in, thinning and graphs per chain must be >= 1");
  }
  const std::size_t d = model.conditionals.size();
  const std::size_t chains = chains_for(count, options.graphs_per_chain);
  std::vector<DirectedGraph> out(count, DirectedGraph(model.n_nodes));

  parallel_for(chains, [&](std::size_t c) {
    Rng rng = make_rng(derive_seed(seed, c));
    std::vector<std::uint8_t> state(d);
    for (std::size_t k = 0; k < d; ++k) state[k] = bernoulli(rng, model.marginals[k]) ? 1 : 0;
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto sweep = [&] {
      std::shuffle(order.begin(), order.end(), rng);
      for (auto k : order) {
        state[k] = bernoulli(rng, sigmoid(model.conditional_logit(k, state))) ? 1 : 0;
      }
    };

    for (std::size_t s = 0; s < options.burn_in_sweeps; ++s) sweep();
    const std::size_t first = c * options.graphs_per_chain;
    const std::size_t last = std::min(count, first + options.graphs_per_chain);
    for (std::size_t g = first; g < last; ++g) {
      if (g > first) {
        for (std::size_t s = 0; s < options.thin_sweeps; ++s) sweep();
      }
      out[g] = from_dyad_vector(DyadVector{model.n_nodes, state});
    }
  });
  return GraphSet(std::move(out));
}

}  // namespace netgen
