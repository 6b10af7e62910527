// Apache License, Version 2.0, refer to LICENSE.txt
#include "netgen/ergm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "netgen/error.hpp"
#include "netgen/parallel.hpp"
#include "netgen/rng.hpp"

namespace netgen {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }
double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

VectorXd to_vector(std::span<const double> v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

bool is_extreme(const DirectedGraph& g) {
  return g.edge_count() == 0 || g.edge_count() == g.dyad_count();
}

MatrixXd stat_matrix(const StatSpec& spec, const GraphSet& set) {
  MatrixXd s(static_cast<Eigen::Index>(set.size()), static_cast<Eigen::Index>(spec.size()));
  for (std::size_t r = 0; r < set.size(); ++r) {
    auto v = stat_vector(spec, set[r]);
    for (std::size_t k = 0; k < v.size(); ++k) s(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = v[k];
  }
  return s;
}

}  // namespace

std::string_view preset_name(ErgmPreset preset) {
  switch (preset) {
    case ErgmPreset::P1:
      return "p1";
    case ErgmPreset::Markov:
      return "markov";
    case ErgmPreset::HigherOrder:
      return "higher-order";
  }
  return "p1";
}

ErgmPreset parse_preset(std::string_view name) {
  if (name == "p1") return ErgmPreset::P1;
  if (name == "markov") return ErgmPreset::Markov;
  if (name == "higher-order") return ErgmPreset::HigherOrder;
  throw ParseError("unknown ERGM preset '" + std::string(name) + "'");
}

StatSpec ergm_preset(ErgmPreset preset, double decay) {
  StatSpec spec{{StatKind::Edges}, {StatKind::Reciprocated}};
  if (preset == ErgmPreset::P1) return spec;
  spec.push_back({StatKind::TwoInStars});
  spec.push_back({StatKind::TwoOutStars});
  spec.push_back({StatKind::TwoMixedStars});
  spec.push_back({StatKind::TransitiveTriads});
  if (preset == ErgmPreset::Markov) return spec;
  spec.push_back({StatKind::GwInDegree, decay});
  spec.push_back({StatKind::GwOutDegree, decay});
  spec.push_back({StatKind::TwoPaths});
  spec.push_back({StatKind::AltKTriangles, decay});
  spec.push_back({StatKind::AltKPaths, decay});
  return spec;
}

void validate(const ErgmModel& m) {
  if (m.spec.empty()) throw InvalidArgument("ERGM term list must not be empty");
  validate_spec(m.spec);
  if (m.eta.size() != m.spec.size()) throw InvalidArgument("eta length must match the number of terms");
  for (double e : m.eta)
    if (!std::isfinite(e)) throw InvalidArgument("eta must be finite");
  if (m.n_nodes < 2) throw InvalidArgument("ERGM needs n_nodes >= 2");
}

ErgmSample sample_ergm(const ErgmModel& model, std::size_t count,
                       const ErgmSampleOptions& options, std::uint64_t seed) {
  validate(model);
  if (count == 0) throw InvalidArgument("sample count must be positive");
  if (options.graphs_per_chain < 1) throw InvalidArgument("graphs_per_chain must be >= 1");
  const std::size_t n = model.n_nodes;
  const std::size_t d = n * (n - 1);
  const std::size_t burn_in = options.burn_in ? options.burn_in : 20 * d;
  const std::size_t thin = options.thin ? options.thin : 5 * d;
  const std::size_t per_chain = options.graphs_per_chain;
  const std::size_t chains = (count + per_chain - 1) / per_chain;

  std::vector<DirectedGraph> out(count, DirectedGraph(n));
  std::vector<std::size_t> accepted(chains, 0), proposed(chains, 0);

  parallel_for(chains, [&](std::size_t c) {
    Rng rng = make_rng(derive_seed(seed, c));
    DirectedGraph g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && bernoulli(rng, 0.5)) g.set_edge(i, j, true);

    std::vector<double> delta(model.spec.size());
    auto run = [&](std::size_t proposals) {
      for (std::size_t p = 0; p < proposals; ++p) {
        auto [i, j] = dyad_endpoints(n, uniform_index(rng, d));
        change_stats(model.spec, g, i, j, delta);
        double log_ratio = 0.0;
        for (std::size_t k = 0; k < delta.size(); ++k) log_ratio += model.eta[k] * delta[k];
        if (g.has_edge(i, j)) log_ratio = -log_ratio;
        if (log_ratio >= 0.0 || std::log(uniform01(rng)) < log_ratio) {
          g.toggle_edge(i, j);
          ++accepted[c];
        }
      }
      proposed[c] += proposals;
    };

    run(burn_in);
    const std::size_t first = c * per_chain;
    const std::size_t last = std::min(count, first + per_chain);
    for (std::size_t k = first; k < last; ++k) {
      if (k > first) run(thin);
      out[k] = g;
    }
  });

  std::size_t acc = 0, prop = 0, extreme = 0;
  for (std::size_t c = 0; c < chains; ++c) {
    acc += accepted[c];
    prop += proposed[c];
  }
  for (const auto& g : out) extreme += is_extreme(g);
  ErgmSample s{GraphSet(std::move(out)), 0.0, 0.0};
  s.degenerate_fraction = static_cast<double>(extreme) / static_cast<double>(count);
  s.acceptance_rate = prop ? static_cast<double>(acc) / static_cast<double>(prop) : 0.0;
  return s;
}

PseudoLikelihood::PseudoLikelihood(const StatSpec& spec, const GraphSet& train) {
  validate_spec(spec);
  const std::size_t n = train.n_nodes();
  if (n < 2) throw InvalidArgument("pseudo-likelihood needs n_nodes >= 2");
  const std::size_t d = n * (n - 1);
  const auto rows = static_cast<Eigen::Index>(train.size() * d);
  design_.resize(rows, static_cast<Eigen::Index>(spec.size()));
  response_.resize(rows);
  std::vector<double> delta(spec.size());
  Eigen::Index r = 0;
  for (const auto& g : train) {
    for (std::size_t k = 0; k < d; ++k, ++r) {
      auto [i, j] = dyad_endpoints(n, k);
      change_stats(spec, g, i, j, delta);
      for (std::size_t t = 0; t < delta.size(); ++t) design_(r, static_cast<Eigen::Index>(t)) = delta[t];
      response_(r) = g.has_edge(i, j) ? 1.0 : 0.0;
    }
  }
}

double PseudoLikelihood::value(std::span<const double> eta) const {
  VectorXd z = design_ * to_vector(eta);
  double total = 0.0;
  for (Eigen::Index r = 0; r < z.size(); ++r) total += response_(r) * z(r) - softplus(z(r));
  return total / static_cast<double>(z.size());
}

VectorXd PseudoLikelihood::gradient(std::span<const double> eta) const {
  VectorXd z = design_ * to_vector(eta);
  VectorXd residual = response_ - z.unaryExpr([](double v) { return sigmoid(v); });
  return design_.transpose() * residual / static_cast<double>(z.size());
}

MatrixXd PseudoLikelihood::information(std::span<const double> eta) const {
  VectorXd z = design_ * to_vector(eta);
  VectorXd w = z.unaryExpr([](double v) {
    double p = sigmoid(v);
    return p * (1.0 - p);
  });
  return design_.transpose() * w.asDiagonal() * design_ / static_cast<double>(z.size());
}

constexpr double kSeparationStep = 1e-3;

PseudoLikelihoodFit fit_pseudolikelihood(const StatSpec& spec, const GraphSet& train,
                                         double tolerance, int max_iterations) {
  const PseudoLikelihood pl(spec, train);
  const auto p = static_cast<Eigen::Index>(spec.size());
  VectorXd eta = VectorXd::Zero(p);

  auto span_of = [](const VectorXd& v) {
    return std::span<const double>(v.data(), static_cast<std::size_t>(v.size()));
  };
  auto project = [](VectorXd v) {
    return v.cwiseMax(-kEtaBound).cwiseMin(kEtaBound).eval();
  };
  // Components pinned at the bound with the gradient pushing outward are done.
  auto projected_norm = [&](const VectorXd& at, const VectorXd& g) {
    VectorXd pg = g;
    for (Eigen::Index k = 0; k < p; ++k) {
      if ((at(k) >= kEtaBound && g(k) > 0) || (at(k) <= -kEtaBound && g(k) < 0)) pg(k) = 0;
    }
    return pg.norm();
  };
  auto newton_step = [&](const VectorXd& at, const VectorXd& g) {
    MatrixXd info = pl.information(span_of(at));
    const double scale = std::max(1.0, info.diagonal().maxCoeff());
    info.diagonal().array() += 1e-12 * scale;
    VectorXd step = info.ldlt().solve(g);
    if (!step.allFinite()) step = g;
    return step;
  };

  PseudoLikelihoodFit fit;
  double current = pl.value(span_of(eta));
  VectorXd g = pl.gradient(span_of(eta));
  for (fit.iterations = 0; fit.iterations < max_iterations; ++fit.iterations) {
    const VectorXd step = newton_step(eta, g);
    // Separated data has a vanishing gradient but Newton steps of order one
    // toward infinity; keep going until the bound stops them.
    if (projected_norm(eta, g) <= tolerance &&
        projected_norm(eta, step) <= kSeparationStep) {
      break;
    }
    bool moved = false;
    for (double t = 1.0; t > 1e-10; t *= 0.5) {
      VectorXd trial = project(eta + t * step);
      double v = pl.value(span_of(trial));
      if (v >= current) {
        moved = (trial - eta).norm() > 0;
        eta = trial;
        current = v;
        break;
      }
    }
    g = pl.gradient(span_of(eta));
    if (!moved) break;
  }
  fit.eta.assign(eta.data(), eta.data() + p);
  fit.gradient_norm = projected_norm(eta, g);
  for (double e : fit.eta) fit.separation = fit.separation || std::abs(e) >= kEtaBound;
  return fit;
}

ErgmModel fit_ergm(const StatSpec& spec, const GraphSet& train, const ErgmFitOptions& options,
                   std::uint64_t seed) {
  validate_spec(spec);
  if (options.iterations < 0 || options.samples_per_iter < 2) {
    throw InvalidArgument("fit_ergm needs iterations >= 0 and samples_per_iter >= 2");
  }
  ErgmModel model;
  model.spec = spec;
  model.n_nodes = train.n_nodes();

  const PseudoLikelihoodFit start = fit_pseudolikelihood(spec, train);
  model.eta = start.eta;
  model.diagnostics.pl_gradient_norm = start.gradient_norm;
  model.diagnostics.separation = start.separation;
  model.diagnostics.method = "mcmc-mle";

  const auto p = static_cast<Eigen::Index>(spec.size());
  const VectorXd observed = stat_matrix(spec, train).colwise().mean().transpose();

  auto simulate = [&](std::uint64_t s, VectorXd& mean, MatrixXd& cov, double& degenerate) {
    ErgmSample sample = sample_ergm(model, options.samples_per_iter, options.sampler, s);
    MatrixXd stats = stat_matrix(spec, sample.graphs);
    mean = stats.colwise().mean().transpose();
    MatrixXd centered = stats.rowwise() - mean.transpose();
    cov = centered.transpose() * centered / static_cast<double>(stats.rows() - 1);
    degenerate = sample.degenerate_fraction;
  };

  bool failed = false;
  VectorXd mean;
  MatrixXd cov;
  double degenerate = 0.0;
  for (int it = 0; it < options.iterations && !failed; ++it) {
    simulate(derive_seed(seed, static_cast<std::uint64_t>(it)), mean, cov, degenerate);
    MatrixXd reg = cov + options.ridge * MatrixXd::Identity(p, p);
    VectorXd step = reg.ldlt().solve(observed - mean);
    double gain = options.gain / (1.0 + it / options.gain_period);
    VectorXd eta = Eigen::Map<VectorXd>(model.eta.data(), p);
    VectorXd next = eta + gain * step;
    int halvings = 0;
    while (!next.allFinite() && halvings < options.max_halvings) {
      gain *= 0.5;
      ++halvings;
      next = eta + gain * step;
    }
    model.diagnostics.gain_halvings += halvings;
    model.diagnostics.iterations = it + 1;
    if (!next.allFinite()) {
      failed = true;
      model.diagnostics.message = "fit did not converge: non-finite update at iteration " +
                                  std::to_string(it);
      break;
    }
    model.eta.assign(next.data(), next.data() + p);
  }

  simulate(derive_seed(seed, "final"), mean, cov, degenerate);
  model.diagnostics.degenerate_fraction = degenerate;
  model.diagnostics.standardized_mean_difference.resize(spec.size());
  bool within = true;
  for (Eigen::Index k = 0; k < p; ++k) {
    const double diff = std::abs(observed(k) - mean(k));
    const double sd = std::sqrt(std::max(cov(k, k), 0.0));
    double smd = sd > 0 ? diff / sd : (diff > 1e-12 ? std::numeric_limits<double>::infinity() : 0.0);
    model.diagnostics.standardized_mean_difference[static_cast<std::size_t>(k)] = smd;
    within = within && smd <= options.smd_threshold;
  }
  model.diagnostics.converged = !failed && within;
  if (!failed && !within) model.diagnostics.message = "fit did not converge: simulated statistics miss the observed means";
  return model;
}

}  // namespace netgen
