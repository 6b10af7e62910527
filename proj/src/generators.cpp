// Apache License, Version 2.0, refer to LICENSE.txt
#include "netgen/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "netgen/error.hpp"
#include "netgen/parallel.hpp"
#include "netgen/rng.hpp"

namespace netgen {

namespace {

template <typename Fn>
GraphSet generate_each(std::size_t count, std::uint64_t seed, Fn&& one) {
  std::vector<DirectedGraph> graphs(count, DirectedGraph(1));
  parallel_for(count, [&](std::size_t i) {
    Rng rng = make_rng(derive_seed(seed, i));
    graphs[i] = one(rng);
  });
  return GraphSet(std::move(graphs));
}

// Linear-scan draw from unnormalized weights; total must be positive.
std::size_t draw_weighted(Rng& rng, const std::vector<double>& weights, double total) {
  double u = uniform01(rng) * total;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (u < weights[k]) return k;
    u -= weights[k];
  }
  // Rounding can leave u just past the last positive weight.
  for (std::size_t k = weights.size(); k-- > 0;) {
    if (weights[k] > 0) return k;
  }
  return 0;
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

std::string_view generator_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::DirectedEr:
      return "er";
    case GeneratorKind::ConfigModel:
      return "config";
    case GeneratorKind::Krapivsky:
      return "krapivsky";
  }
  return "er";
}

GeneratorKind parse_generator_kind(std::string_view name) {
  if (name == "er") return GeneratorKind::DirectedEr;
  if (name == "config") return GeneratorKind::ConfigModel;
  if (name == "krapivsky") return GeneratorKind::Krapivsky;
  throw ParseError("unknown generator kind '" + std::string(name) + "'");
}

void validate(const GeneratorConfig& c) {
  if (c.n_nodes < 2) throw InvalidArgument("generators need n_nodes >= 2");
  if (c.count < 1) throw InvalidArgument("generators need count >= 1");
  // Every field is range-checked, including those the chosen kind ignores.
  if (!is_probability(c.er_p)) throw InvalidArgument("er_p must lie in [0, 1]");
  if (!(c.degree_law_exponent > 1.0) || !std::isfinite(c.degree_law_exponent)) {
    throw InvalidArgument("degree_law_exponent must be a finite value > 1");
  }
  if (!is_probability(c.krapivsky_p)) throw InvalidArgument("krapivsky_p must lie in [0, 1]");
  if (!(c.krapivsky_lambda >= 0.0) || !(c.krapivsky_mu >= 0.0) ||
      !std::isfinite(c.krapivsky_lambda) || !std::isfinite(c.krapivsky_mu)) {
    throw InvalidArgument("krapivsky_lambda and krapivsky_mu must be finite and >= 0");
  }
  // Without node-addition steps the process never reaches n nodes.
  if (c.kind == GeneratorKind::Krapivsky && c.krapivsky_p == 0.0 && c.n_nodes > 2) {
    throw InvalidArgument("krapivsky_p must be positive to grow beyond 2 nodes");
  }
}

GraphSet generate(const GeneratorConfig& c) {
  validate(c);
  switch (c.kind) {
    case GeneratorKind::DirectedEr:
      return gen_directed_er(c.n_nodes, c.er_p, c.count, c.seed);
    case GeneratorKind::ConfigModel:
      return gen_config_model(c.n_nodes, c.degree_law_exponent, c.count, c.seed);
    case GeneratorKind::Krapivsky:
      return gen_krapivsky(c.n_nodes, c.krapivsky_p, c.krapivsky_lambda, c.krapivsky_mu,
                           c.count, c.seed);
  }
  throw InvalidArgument("unknown generator kind");
}

GraphSet gen_directed_er(std::size_t n, double p, std::size_t count, std::uint64_t seed) {
  validate(GeneratorConfig{.kind = GeneratorKind::DirectedEr, .n_nodes = n, .count = count, .er_p = p});
  return generate_each(count, seed, [&](Rng& rng) {
    DirectedGraph g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && bernoulli(rng, p)) g.set_edge(i, j, true);
    return g;
  });
}

StubMatching config_model_stubs(std::size_t n, double exponent, Rng& rng) {
  std::vector<double> law(n);
  for (std::size_t k = 0; k < n; ++k) law[k] = std::pow(static_cast<double>(k + 1), -exponent);
  const double law_total = std::accumulate(law.begin(), law.end(), 0.0);

  StubMatching m{std::vector<std::size_t>(n), std::vector<std::size_t>(n), {}};
  for (auto& d : m.out_degrees) d = draw_weighted(rng, law, law_total);
  for (auto& d : m.in_degrees) d = draw_weighted(rng, law, law_total);

  auto sum = [](const std::vector<std::size_t>& v) {
    return std::accumulate(v.begin(), v.end(), std::size_t{0});
  };
  std::size_t out_sum = sum(m.out_degrees), in_sum = sum(m.in_degrees);
  std::vector<std::size_t> positive;
  while (out_sum != in_sum) {
    const bool out_larger = out_sum > in_sum;
    auto& larger = out_larger ? m.out_degrees : m.in_degrees;
    positive.clear();
    for (std::size_t v = 0; v < n; ++v)
      if (larger[v] > 0) positive.push_back(v);
    --larger[positive[uniform_index(rng, positive.size())]];
    --(out_larger ? out_sum : in_sum);
  }

  std::vector<std::size_t> out_stubs, in_stubs;
  for (std::size_t v = 0; v < n; ++v) {
    out_stubs.insert(out_stubs.end(), m.out_degrees[v], v);
    in_stubs.insert(in_stubs.end(), m.in_degrees[v], v);
  }
  std::shuffle(in_stubs.begin(), in_stubs.end(), rng);
  m.stubs.reserve(out_stubs.size());
  for (std::size_t s = 0; s < out_stubs.size(); ++s) m.stubs.emplace_back(out_stubs[s], in_stubs[s]);
  return m;
}

GraphSet gen_config_model(std::size_t n, double exponent, std::size_t count,
                          std::uint64_t seed) {
  validate(GeneratorConfig{.kind = GeneratorKind::ConfigModel, .n_nodes = n, .count = count,
                           .degree_law_exponent = exponent});
  return generate_each(count, seed, [&](Rng& rng) {
    DirectedGraph g(n);
    for (auto [src, dst] : config_model_stubs(n, exponent, rng).stubs) {
      if (src != dst) g.set_edge(src, dst, true);
    }
    return g;
  });
}

GraphSet gen_krapivsky(std::size_t n, double p, double lambda, double mu,
                       std::size_t count, std::uint64_t seed) {
  validate(GeneratorConfig{.kind = GeneratorKind::Krapivsky, .n_nodes = n, .count = count,
                           .krapivsky_p = p, .krapivsky_lambda = lambda,
                           .krapivsky_mu = mu});
  return generate_each(count, seed, [&](Rng& rng) {
    std::vector<std::size_t> in_deg{0, 1}, out_deg{1, 0};
    std::vector<Edge> edges{{0, 1}};
    std::vector<std::uint8_t> present(n * n, 0);
    present[1] = 1;

    std::vector<double> target_w, source_w;
    auto weights = [](const std::vector<std::size_t>& deg, double offset, std::vector<double>& w) {
      w.resize(deg.size());
      double total = 0;
      for (std::size_t v = 0; v < deg.size(); ++v) {
        w[v] = static_cast<double>(deg[v]) + offset;
        total += w[v];
      }
      return total;
    };

    while (in_deg.size() < n) {
      const double target_total = weights(in_deg, lambda, target_w);
      if (bernoulli(rng, p)) {
        std::size_t target = draw_weighted(rng, target_w, target_total);
        std::size_t node = in_deg.size();
        in_deg.push_back(0);
        out_deg.push_back(1);
        ++in_deg[target];
        present[node * n + target] = 1;
        edges.emplace_back(node, target);
        continue;
      }
      const double source_total = weights(out_deg, mu, source_w);
      for (int attempt = 0; attempt < kKrapivskyMaxRetries; ++attempt) {
        std::size_t source = draw_weighted(rng, source_w, source_total);
        std::size_t target = draw_weighted(rng, target_w, target_total);
        if (source == target || present[source * n + target]) continue;
        present[source * n + target] = 1;
        ++out_deg[source];
        ++in_deg[target];
        edges.emplace_back(source, target);
        break;
      }
    }
    return DirectedGraph::from_edges(n, edges);
  });
}

DirectedGraph sample_ego(const DirectedGraph& parent, std::size_t ego, std::size_t n,
                         std::uint64_t seed) {
  const std::size_t size = parent.n_nodes();
  if (ego >= size) throw InvalidArgument("ego index out of range");
  if (n < 1) throw InvalidArgument("ego sample needs n >= 1");
  if (size < n) {
    throw EgoTooSmall("ego network too small: " + std::to_string(size) + " nodes, " +
                      std::to_string(n) + " requested");
  }
  std::vector<std::size_t> others;
  others.reserve(size - 1);
  for (std::size_t v = 0; v < size; ++v)
    if (v != ego) others.push_back(v);

  Rng rng = make_rng(seed);
  std::vector<std::size_t> chosen;
  chosen.reserve(n - 1);
  std::sample(others.begin(), others.end(), std::back_inserter(chosen), n - 1, rng);

  std::vector<std::size_t> nodes{ego};
  nodes.insert(nodes.end(), chosen.begin(), chosen.end());
  DirectedGraph g(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && parent.has_edge(nodes[a], nodes[b])) g.set_edge(a, b, true);
  return g;
}

}  // namespace netgen
