// Apache License, Version 2.0, refer to LICENSE.txt
#include "netgen/config_stats.hpp"

#include <array>
#include <cmath>
#include <string>

#include "netgen/error.hpp"

namespace netgen {

namespace {

constexpr std::array<std::string_view, 11> kNames = {
    "edges",     "mutual",    "istar2",  "ostar2",  "mstar2",   "ttriad",
    "gwidegree", "gwodegree", "twopath", "altktri", "altkpath",
};

double choose2(std::size_t d) { return 0.5 * static_cast<double>(d) * static_cast<double>(d == 0 ? 0 : d - 1); }

// Shared partners k of (a, b): a->k->b.
std::size_t shared_partners(const DirectedGraph& g, std::size_t a, std::size_t b) {
  std::size_t s = 0;
  for (std::size_t k = 0; k < g.n_nodes(); ++k) {
    if (k != a && k != b && g.has_edge(a, k) && g.has_edge(k, b)) ++s;
  }
  return s;
}

std::size_t mixed_star_count(const DirectedGraph& g) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < g.n_nodes(); ++i) {
    std::size_t reciprocal = 0;
    for (std::size_t j = 0; j < g.n_nodes(); ++j) {
      if (g.has_edge(i, j) && g.has_edge(j, i)) ++reciprocal;
    }
    total += g.in_degree(i) * g.out_degree(i) - reciprocal;
  }
  return total;
}

}  // namespace

bool has_decay(StatKind kind) {
  switch (kind) {
    case StatKind::GwInDegree:
    case StatKind::GwOutDegree:
    case StatKind::AltKTriangles:
    case StatKind::AltKPaths:
      return true;
    default:
      return false;
  }
}

std::string_view stat_name(StatKind kind) { return kNames[static_cast<std::size_t>(kind)]; }

StatKind parse_stat_kind(std::string_view name) {
  for (std::size_t k = 0; k < kNames.size(); ++k) {
    if (kNames[k] == name) return static_cast<StatKind>(k);
  }
  throw ParseError("unknown statistic '" + std::string(name) + "'");
}

void validate_term(const StatTerm& term) {
  if (has_decay(term.kind) && !(term.decay > 0.0 && std::isfinite(term.decay))) {
    throw InvalidArgument(std::string(stat_name(term.kind)) + " requires a positive decay");
  }
}

void validate_spec(const StatSpec& spec) {
  for (const auto& t : spec) validate_term(t);
}

double stat_value(const StatTerm& term, const DirectedGraph& g) {
  validate_term(term);
  const std::size_t n = g.n_nodes();
  const double weight = std::exp(term.decay);
  const double ratio = 1.0 - std::exp(-term.decay);
  switch (term.kind) {
    case StatKind::Edges:
      return static_cast<double>(g.edge_count());
    case StatKind::Reciprocated: {
      std::size_t c = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (g.has_edge(i, j) && g.has_edge(j, i)) ++c;
      return static_cast<double>(c);
    }
    case StatKind::TwoInStars: {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) s += choose2(g.in_degree(i));
      return s;
    }
    case StatKind::TwoOutStars: {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) s += choose2(g.out_degree(i));
      return s;
    }
    case StatKind::TwoMixedStars:
    case StatKind::TwoPaths:
      return static_cast<double>(mixed_star_count(g));
    case StatKind::TransitiveTriads: {
      std::size_t c = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (g.has_edge(i, j)) c += shared_partners(g, i, j);
      return static_cast<double>(c);
    }
    case StatKind::GwInDegree:
    case StatKind::GwOutDegree: {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t d = term.kind == StatKind::GwInDegree ? g.in_degree(i) : g.out_degree(i);
        s += 1.0 - std::pow(ratio, static_cast<double>(d));
      }
      return weight * s;
    }
    case StatKind::AltKTriangles:
    case StatKind::AltKPaths: {
      const bool edges_only = term.kind == StatKind::AltKTriangles;
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j || (edges_only && !g.has_edge(i, j))) continue;
          s += 1.0 - std::pow(ratio, static_cast<double>(shared_partners(g, i, j)));
        }
      }
      return weight * s;
    }
  }
  return 0.0;
}

StatVector stat_vector(const StatSpec& spec, const DirectedGraph& g) {
  StatVector out;
  out.reserve(spec.size());
  for (const auto& t : spec) out.push_back(stat_value(t, g));
  return out;
}

void change_stats(const StatSpec& spec, const DirectedGraph& g, std::size_t i,
                  std::size_t j, std::span<double> out) {
  const std::size_t n = g.n_nodes();
  if (i >= n || j >= n) throw InvalidArgument("dyad endpoint out of range");
  if (i == j) throw InvalidArgument("change statistics need a dyad with i != j");
  if (out.size() != spec.size()) throw InvalidArgument("output span does not match the term count");

  // Everything below is evaluated with y_ij treated as absent.
  const std::size_t y_ij = g.has_edge(i, j) ? 1 : 0;
  const std::size_t y_ji = g.has_edge(j, i) ? 1 : 0;

  for (std::size_t t = 0; t < spec.size(); ++t) {
    const StatTerm& term = spec[t];
    double ratio = 0.0;
    if (has_decay(term.kind)) {
      validate_term(term);
      ratio = 1.0 - std::exp(-term.decay);
    }
    double delta = 0.0;
    switch (term.kind) {
      case StatKind::Edges:
        delta = 1.0;
        break;
      case StatKind::Reciprocated:
        delta = static_cast<double>(y_ji);
        break;
      case StatKind::TwoInStars:
        delta = static_cast<double>(g.in_degree(j) - y_ij);
        break;
      case StatKind::TwoOutStars:
        delta = static_cast<double>(g.out_degree(i) - y_ij);
        break;
      case StatKind::TwoMixedStars:
      case StatKind::TwoPaths:
        // i->j as first leg (i->j->k, k != i) or second leg (k->i->j, k != j).
        delta = static_cast<double>(g.out_degree(j) + g.in_degree(i)) - 2.0 * static_cast<double>(y_ji);
        break;
      case StatKind::TransitiveTriads: {
        std::size_t c = 0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == i || k == j) continue;
          c += (g.has_edge(j, k) && g.has_edge(i, k));  // i->j is the base
          c += (g.has_edge(k, i) && g.has_edge(k, j));  // i->j is the far leg
          c += (g.has_edge(i, k) && g.has_edge(k, j));  // i->j is the shortcut
        }
        delta = static_cast<double>(c);
        break;
      }
      case StatKind::GwInDegree:
        delta = std::pow(ratio, static_cast<double>(g.in_degree(j) - y_ij));
        break;
      case StatKind::GwOutDegree:
        delta = std::pow(ratio, static_cast<double>(g.out_degree(i) - y_ij));
        break;
      case StatKind::AltKTriangles: {
        // The edge's own term, plus one more partner for every edge i->k
        // closed through j and every edge k->j closed through i.
        delta = std::exp(term.decay) *
                (1.0 - std::pow(ratio, static_cast<double>(shared_partners(g, i, j))));
        for (std::size_t k = 0; k < n; ++k) {
          if (k == i || k == j) continue;
          if (g.has_edge(i, k) && g.has_edge(j, k)) {
            delta += std::pow(ratio, static_cast<double>(shared_partners(g, i, k) - y_ij));
          }
          if (g.has_edge(k, j) && g.has_edge(k, i)) {
            delta += std::pow(ratio, static_cast<double>(shared_partners(g, k, j) - y_ij));
          }
        }
        break;
      }
      case StatKind::AltKPaths: {
        for (std::size_t k = 0; k < n; ++k) {
          if (k == i || k == j) continue;
          if (g.has_edge(j, k)) {
            delta += std::pow(ratio, static_cast<double>(shared_partners(g, i, k) - y_ij));
          }
          if (g.has_edge(k, i)) {
            delta += std::pow(ratio, static_cast<double>(shared_partners(g, k, j) - y_ij));
          }
        }
        break;
      }
    }
    out[t] = delta;
  }
}

StatVector change_stats(const StatSpec& spec, const DirectedGraph& g, std::size_t i,
                        std::size_t j) {
  StatVector out(spec.size());
  change_stats(spec, g, i, j, out);
  return out;
}

}  // namespace netgen
