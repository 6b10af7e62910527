// Apache License, Version 2.0, refer to LICENSE.txt
#include "netgen/models.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "netgen/error.hpp"

namespace netgen {

namespace {

using nlohmann::json;

const std::set<std::string, std::less<>> kBoltzmannKeys = {
    "layer_sizes", "n_hidden", "learning_rate", "lr_decay", "decay_every", "epochs",
    "minibatch", "n_chains", "weight_decay", "use_bias", "init_scale", "top_gibbs_steps"};
const std::set<std::string, std::less<>> kDepnetKeys = {
    "penalty", "tolerance", "max_iterations", "burn_in_sweeps", "thin_sweeps",
    "graphs_per_chain"};
const std::set<std::string, std::less<>> kErgmKeys = {
    "iterations", "samples_per_iter", "gain", "gain_period", "ridge", "max_halvings",
    "smd_threshold", "decay", "terms", "fit_burn_in", "fit_thin", "burn_in", "thin",
    "graphs_per_chain"};

void check_keys(const json& params, const std::set<std::string, std::less<>>& allowed,
                std::string_view kind) {
  if (params.is_null()) return;
  if (!params.is_object()) throw ConfigError("model parameters must be a JSON object");
  for (const auto& [key, value] : params.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown parameter '" + key + "' for model kind '" + std::string(kind) + "'");
    }
  }
}

template <typename T>
T get_or(const json& params, const char* key, T fallback) {
  if (params.is_null() || !params.contains(key)) return fallback;
  try {
    return params.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("parameter '") + key + "': " + e.what());
  }
}

std::size_t get_count(const json& params, const char* key, std::size_t fallback) {
  long long v = get_or<long long>(params, key, static_cast<long long>(fallback));
  if (v < 0) throw ConfigError(std::string("parameter '") + key + "' must be >= 0");
  return static_cast<std::size_t>(v);
}

RbmHyper rbm_hyper(const json& p) {
  RbmHyper h;
  h.learning_rate = get_or(p, "learning_rate", h.learning_rate);
  h.lr_decay = get_or(p, "lr_decay", h.lr_decay);
  h.decay_every = get_or(p, "decay_every", h.decay_every);
  h.epochs = get_or(p, "epochs", h.epochs);
  h.minibatch = get_or(p, "minibatch", h.minibatch);
  h.n_chains = get_or(p, "n_chains", h.n_chains);
  h.weight_decay = get_or(p, "weight_decay", h.weight_decay);
  h.use_bias = get_or(p, "use_bias", h.use_bias);
  h.init_scale = get_or(p, "init_scale", h.init_scale);
  return h;
}

ErgmSampleOptions ergm_sampler(const json& p, const char* burn_key, const char* thin_key) {
  ErgmSampleOptions o;
  o.burn_in = get_count(p, burn_key, 0);
  o.thin = get_count(p, thin_key, 0);
  return o;
}

StatSpec ergm_terms(const json& p) {
  if (!p.contains("terms") || !p.at("terms").is_array() || p.at("terms").empty()) {
    throw ConfigError("kind 'ergm' needs a non-empty 'terms' array");
  }
  StatSpec spec;
  for (const auto& t : p.at("terms")) {
    StatTerm term;
    try {
      term.kind = parse_stat_kind(t.at("name").get<std::string>());
      term.decay = t.value("decay", kDefaultDecay);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("bad ERGM term: ") + e.what());
    } catch (const ParseError& e) {
      throw ConfigError(e.what());
    }
    spec.push_back(term);
  }
  return spec;
}

// --- text checkpoint helpers -------------------------------------------

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Tokens {
 public:
  explicit Tokens(std::istream& in) : in_(in) {}

  std::string word() {
    std::string w;
    if (!(in_ >> w)) throw ParseError("model checkpoint truncated");
    return w;
  }
  void expect(std::string_view keyword) {
    std::string w = word();
    if (w != keyword) {
      throw ParseError("model checkpoint: expected '" + std::string(keyword) + "', found '" + w + "'");
    }
  }
  double real() {
    std::string w = word();
    double v = 0;
    if (w == "inf") return std::numeric_limits<double>::infinity();
    auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || ptr != w.data() + w.size()) {
      throw ParseError("model checkpoint: bad number '" + w + "'");
    }
    return v;
  }
  std::size_t count() {
    std::string w = word();
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || ptr != w.data() + w.size()) {
      throw ParseError("model checkpoint: bad count '" + w + "'");
    }
    return v;
  }
  std::string rest_of_line() {
    std::string line;
    std::getline(in_, line);
    auto first = line.find_first_not_of(' ');
    return first == std::string::npos ? std::string() : line.substr(first);
  }

 private:
  std::istream& in_;
};

void write_vector(std::ostream& out, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? " " : "") << g17(v(i));
  out << '\n';
}

Eigen::VectorXd read_vector(Tokens& t, std::size_t n) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = t.real();
  return v;
}

void write_dbn(std::ostream& out, const DbnModel& m) {
  const RbmHyper& h = m.hyper;
  out << "netgen-model dbn 1\n";
  out << "n_nodes " << m.n_nodes << "\nseed " << m.seed << '\n';
  out << "hyper learning_rate " << g17(h.learning_rate) << " lr_decay " << g17(h.lr_decay)
      << " decay_every " << h.decay_every << " epochs " << h.epochs << " minibatch "
      << h.minibatch << " n_chains " << h.n_chains << " weight_decay " << g17(h.weight_decay)
      << " use_bias " << (h.use_bias ? 1 : 0) << " init_scale " << g17(h.init_scale)
      << " visible_logit_clamp " << g17(h.visible_logit_clamp) << '\n';
  out << "layers " << m.layers.size() << '\n';
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    const RbmModel& r = m.layers[l];
    out << "layer " << l << ' ' << r.n_visible() << ' ' << r.n_hidden() << ' '
        << (r.use_bias ? 1 : 0) << "\nweights\n";
    for (Eigen::Index i = 0; i < r.weights.rows(); ++i) write_vector(out, r.weights.row(i).transpose());
    out << "visible_bias\n";
    write_vector(out, r.visible_bias);
    out << "hidden_bias\n";
    write_vector(out, r.hidden_bias);
  }
  out << "end\n";
}

DbnModel read_dbn(Tokens& t) {
  DbnModel m;
  t.expect("n_nodes");
  m.n_nodes = t.count();
  t.expect("seed");
  m.seed = t.count();
  RbmHyper& h = m.hyper;
  t.expect("hyper");
  t.expect("learning_rate");
  h.learning_rate = t.real();
  t.expect("lr_decay");
  h.lr_decay = t.real();
  t.expect("decay_every");
  h.decay_every = static_cast<int>(t.count());
  t.expect("epochs");
  h.epochs = static_cast<int>(t.count());
  t.expect("minibatch");
  h.minibatch = static_cast<int>(t.count());
  t.expect("n_chains");
  h.n_chains = static_cast<int>(t.count());
  t.expect("weight_decay");
  h.weight_decay = t.real();
  t.expect("use_bias");
  h.use_bias = t.count() != 0;
  t.expect("init_scale");
  h.init_scale = t.real();
  t.expect("visible_logit_clamp");
  h.visible_logit_clamp = t.real();
  t.expect("layers");
  const std::size_t layers = t.count();
  for (std::size_t l = 0; l < layers; ++l) {
    t.expect("layer");
    if (t.count() != l) throw ParseError("model checkpoint: layers out of order");
    const std::size_t nv = t.count(), nh = t.count();
    RbmModel r = make_rbm(nv, nh, t.count() != 0);
    t.expect("weights");
    for (std::size_t i = 0; i < nv; ++i)
      for (std::size_t j = 0; j < nh; ++j) r.weights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t.real();
    t.expect("visible_bias");
    r.visible_bias = read_vector(t, nv);
    t.expect("hidden_bias");
    r.hidden_bias = read_vector(t, nh);
    m.layers.push_back(std::move(r));
  }
  t.expect("end");
  validate(m);
  return m;
}

void write_depnet(std::ostream& out, const DepNetModel& m) {
  out << "netgen-model depnet 1\n";
  out << "n_nodes " << m.n_nodes << "\npenalty " << g17(m.penalty) << '\n';
  out << "diagnostics constant_dyads " << m.diagnostics.constant_dyads << " unconverged_dyads "
      << m.diagnostics.unconverged_dyads << " max_subgradient_norm "
      << g17(m.diagnostics.max_subgradient_norm) << '\n';
  out << "marginals";
  for (double v : m.marginals) out << ' ' << g17(v);
  out << '\n';
  for (std::size_t k = 0; k < m.conditionals.size(); ++k) {
    const auto& c = m.conditionals[k];
    out << "conditional " << k << ' ' << g17(c.intercept) << ' ' << c.coefficients.size();
    for (const auto& [idx, w] : c.coefficients) out << ' ' << idx << ' ' << g17(w);
    out << '\n';
  }
  out << "end\n";
}

DepNetModel read_depnet(Tokens& t) {
  DepNetModel m;
  t.expect("n_nodes");
  m.n_nodes = t.count();
  if (m.n_nodes < 2) throw ParseError("model checkpoint: n_nodes must be >= 2");
  t.expect("penalty");
  m.penalty = t.real();
  t.expect("diagnostics");
  t.expect("constant_dyads");
  m.diagnostics.constant_dyads = t.count();
  t.expect("unconverged_dyads");
  m.diagnostics.unconverged_dyads = t.count();
  t.expect("max_subgradient_norm");
  m.diagnostics.max_subgradient_norm = t.real();
  const std::size_t d = m.n_nodes * (m.n_nodes - 1);
  t.expect("marginals");
  for (std::size_t k = 0; k < d; ++k) m.marginals.push_back(t.real());
  m.conditionals.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    t.expect("conditional");
    if (t.count() != k) throw ParseError("model checkpoint: conditionals out of order");
    auto& c = m.conditionals[k];
    c.intercept = t.real();
    const std::size_t nnz = t.count();
    for (std::size_t e = 0; e < nnz; ++e) {
      std::size_t idx = t.count();
      c.coefficients.emplace_back(idx, t.real());
    }
  }
  t.expect("end");
  validate(m);
  return m;
}

void write_ergm(std::ostream& out, const ErgmModel& m) {
  const auto& d = m.diagnostics;
  out << "netgen-model ergm 1\n";
  out << "n_nodes " << m.n_nodes << "\nterms " << m.spec.size() << '\n';
  for (std::size_t k = 0; k < m.spec.size(); ++k) {
    out << "term " << stat_name(m.spec[k].kind) << ' ' << g17(m.spec[k].decay) << ' '
        << g17(m.eta[k]) << '\n';
  }
  out << "diagnostics method " << (d.method.empty() ? "none" : d.method) << " iterations "
      << d.iterations << " pl_gradient_norm " << g17(d.pl_gradient_norm) << " separation "
      << (d.separation ? 1 : 0) << " converged " << (d.converged ? 1 : 0) << " gain_halvings "
      << d.gain_halvings << " degenerate_fraction " << g17(d.degenerate_fraction) << '\n';
  out << "smd " << d.standardized_mean_difference.size();
  for (double v : d.standardized_mean_difference) out << ' ' << g17(v);
  out << "\nmessage " << d.message << "\nend\n";
}

ErgmModel read_ergm(Tokens& t) {
  ErgmModel m;
  t.expect("n_nodes");
  m.n_nodes = t.count();
  t.expect("terms");
  const std::size_t terms = t.count();
  for (std::size_t k = 0; k < terms; ++k) {
    t.expect("term");
    StatTerm term;
    term.kind = parse_stat_kind(t.word());
    term.decay = t.real();
    m.spec.push_back(term);
    m.eta.push_back(t.real());
  }
  auto& d = m.diagnostics;
  t.expect("diagnostics");
  t.expect("method");
  d.method = t.word();
  if (d.method == "none") d.method.clear();
  t.expect("iterations");
  d.iterations = static_cast<int>(t.count());
  t.expect("pl_gradient_norm");
  d.pl_gradient_norm = t.real();
  t.expect("separation");
  d.separation = t.count() != 0;
  t.expect("converged");
  d.converged = t.count() != 0;
  t.expect("gain_halvings");
  d.gain_halvings = static_cast<int>(t.count());
  t.expect("degenerate_fraction");
  d.degenerate_fraction = t.real();
  t.expect("smd");
  const std::size_t smd = t.count();
  for (std::size_t k = 0; k < smd; ++k) d.standardized_mean_difference.push_back(t.real());
  t.expect("message");
  d.message = t.rest_of_line();
  t.expect("end");
  validate(m);
  return m;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

bool is_model_kind(std::string_view kind) {
  return kind == "deep" || kind == "rbm" || kind == "depnet" || kind == "p1" ||
         kind == "markov" || kind == "higher-order" || kind == "ergm";
}

namespace {

std::vector<std::size_t> boltzmann_sizes(std::string_view kind, const json& params,
                                         std::size_t d) {
  std::vector<std::size_t> sizes;
  if (kind == "deep") {
    if (params.contains("n_hidden")) throw ConfigError("kind 'deep' takes layer_sizes, not n_hidden");
    sizes = get_or(params, "layer_sizes", std::vector<std::size_t>{d, d});
    if (sizes.empty()) throw ConfigError("layer_sizes must not be empty");
  } else {
    if (params.contains("layer_sizes")) throw ConfigError("kind 'rbm' takes n_hidden, not layer_sizes");
    sizes = {get_count(params, "n_hidden", d)};
  }
  for (auto s : sizes)
    if (s < 1) throw ConfigError("hidden layer sizes must be >= 1");
  return sizes;
}

DepNetFitOptions depnet_options(const json& params) {
  DepNetFitOptions o;
  o.penalty = get_or(params, "penalty", o.penalty);
  o.tolerance = get_or(params, "tolerance", o.tolerance);
  o.max_iterations = get_or(params, "max_iterations", o.max_iterations);
  return o;
}

GibbsOptions gibbs_options(const json& params) {
  GibbsOptions o;
  o.burn_in_sweeps = get_count(params, "burn_in_sweeps", o.burn_in_sweeps);
  o.thin_sweeps = get_count(params, "thin_sweeps", o.thin_sweeps);
  o.graphs_per_chain = get_count(params, "graphs_per_chain", o.graphs_per_chain);
  return o;
}

StatSpec ergm_spec(std::string_view kind, const json& params) {
  StatSpec spec;
  if (kind == "ergm") {
    spec = ergm_terms(params);
  } else {
    if (params.contains("terms")) throw ConfigError("'terms' is only valid for kind 'ergm'");
    spec = ergm_preset(parse_preset(kind), get_or(params, "decay", kDefaultDecay));
  }
  try {
    validate_spec(spec);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

ErgmFitOptions ergm_options(const json& params) {
  ErgmFitOptions o;
  o.iterations = get_or(params, "iterations", o.iterations);
  o.samples_per_iter = get_count(params, "samples_per_iter", o.samples_per_iter);
  o.gain = get_or(params, "gain", o.gain);
  o.gain_period = get_or(params, "gain_period", o.gain_period);
  o.ridge = get_or(params, "ridge", o.ridge);
  o.max_halvings = get_or(params, "max_halvings", o.max_halvings);
  o.smd_threshold = get_or(params, "smd_threshold", o.smd_threshold);
  o.sampler = ergm_sampler(params, "fit_burn_in", "fit_thin");
  if (o.iterations < 0 || o.samples_per_iter < 2 || !(o.gain > 0) || !(o.gain_period > 0) ||
      !(o.ridge >= 0) || o.max_halvings < 0) {
    throw ConfigError("invalid ERGM fitting parameters");
  }
  return o;
}

ErgmSampleOptions ergm_sample_options(const json& params) {
  ErgmSampleOptions o = ergm_sampler(params, "burn_in", "thin");
  o.graphs_per_chain = get_count(params, "graphs_per_chain", 1);
  return o;
}

bool is_ergm_kind(std::string_view kind) {
  return kind == "p1" || kind == "markov" || kind == "higher-order" || kind == "ergm";
}

}  // namespace

void validate_model_params(std::string_view kind, const json& params) {
  if (kind == "deep" || kind == "rbm") {
    check_keys(params, kBoltzmannKeys, kind);
    boltzmann_sizes(kind, params, 1);
    RbmHyper h = rbm_hyper(params);
    if (!(h.learning_rate > 0) || h.epochs < 0 || h.minibatch < 1 || h.n_chains < 1 ||
        h.decay_every < 1 || !(h.weight_decay >= 0) || !(h.init_scale >= 0)) {
      throw ConfigError("invalid Boltzmann machine hyperparameters");
    }
    get_count(params, "top_gibbs_steps", kDefaultTopGibbsSteps);
  } else if (kind == "depnet") {
    check_keys(params, kDepnetKeys, kind);
    DepNetFitOptions o = depnet_options(params);
    if (!(o.tolerance > 0) || o.max_iterations < 1) throw ConfigError("invalid depnet parameters");
    GibbsOptions g = gibbs_options(params);
    if (g.thin_sweeps < 1 || g.graphs_per_chain < 1) throw ConfigError("invalid Gibbs parameters");
  } else if (is_ergm_kind(kind)) {
    check_keys(params, kErgmKeys, kind);
    ergm_spec(kind, params);
    ergm_options(params);
    if (ergm_sample_options(params).graphs_per_chain < 1) throw ConfigError("graphs_per_chain must be >= 1");
  } else {
    throw ConfigError("unknown model kind '" + std::string(kind) + "'");
  }
}

AnyModel fit_model(std::string_view kind, const json& params, const GraphSet& train,
                   std::uint64_t seed) {
  validate_model_params(kind, params);
  if (kind == "deep" || kind == "rbm") {
    return fit_dbn(train, boltzmann_sizes(kind, params, train[0].dyad_count()), rbm_hyper(params),
                   seed);
  }
  if (kind == "depnet") return fit_depnet(train, depnet_options(params));
  return fit_ergm(ergm_spec(kind, params), train, ergm_options(params), seed);
}

GraphSet sample_model(const AnyModel& model, std::size_t count, const json& params,
                      std::uint64_t seed) {
  return std::visit(
      [&](const auto& m) -> GraphSet {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DbnModel>) {
          return sample_dbn(m, count, get_count(params, "top_gibbs_steps", kDefaultTopGibbsSteps), seed);
        } else if constexpr (std::is_same_v<T, DepNetModel>) {
          return sample_depnet(m, count, gibbs_options(params), seed);
        } else {
          return sample_ergm(m, count, ergm_sample_options(params), seed).graphs;
        }
      },
      model);
}

std::string_view model_kind(const AnyModel& model) {
  switch (model.index()) {
    case 0:
      return "dbn";
    case 1:
      return "depnet";
    default:
      return "ergm";
  }
}

std::size_t model_nodes(const AnyModel& model) {
  return std::visit([](const auto& m) { return m.n_nodes; }, model);
}

json model_diagnostics(const AnyModel& model) {
  return std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DbnModel>) {
          json layers = json::array();
          for (const auto& l : m.layers) layers.push_back({l.n_visible(), l.n_hidden()});
          return {{"kind", "dbn"}, {"layers", layers}, {"epochs", m.hyper.epochs}};
        } else if constexpr (std::is_same_v<T, DepNetModel>) {
          std::size_t nnz = 0;
          for (const auto& c : m.conditionals) nnz += c.coefficients.size();
          return {{"kind", "depnet"},
                  {"penalty", m.penalty},
                  {"nonzero_coefficients", nnz},
                  {"constant_dyads", m.diagnostics.constant_dyads},
                  {"unconverged_dyads", m.diagnostics.unconverged_dyads},
                  {"max_subgradient_norm", m.diagnostics.max_subgradient_norm}};
        } else {
          const auto& d = m.diagnostics;
          json terms = json::array(), smd = json::array();
          for (std::size_t k = 0; k < m.spec.size(); ++k) {
            terms.push_back({{"name", stat_name(m.spec[k].kind)}, {"eta", m.eta[k]}});
          }
          for (double v : d.standardized_mean_difference) smd.push_back(finite_or_null(v));
          return {{"kind", "ergm"},
                  {"terms", terms},
                  {"method", d.method},
                  {"iterations", d.iterations},
                  {"pl_gradient_norm", d.pl_gradient_norm},
                  {"separation", d.separation},
                  {"converged", d.converged},
                  {"gain_halvings", d.gain_halvings},
                  {"degenerate_fraction", d.degenerate_fraction},
                  {"standardized_mean_difference", smd},
                  {"message", d.message}};
        }
      },
      model);
}

void write_model(std::ostream& out, const AnyModel& model) {
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DbnModel>) {
          write_dbn(out, m);
        } else if constexpr (std::is_same_v<T, DepNetModel>) {
          write_depnet(out, m);
        } else {
          write_ergm(out, m);
        }
      },
      model);
}

AnyModel read_model(std::istream& in) {
  Tokens t(in);
  t.expect("netgen-model");
  const std::string kind = t.word();
  if (t.count() != 1) throw ParseError("unsupported model checkpoint version");
  try {
    if (kind == "dbn") return read_dbn(t);
    if (kind == "depnet") return read_depnet(t);
    if (kind == "ergm") return read_ergm(t);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("model checkpoint: ") + e.what());
  }
  throw ParseError("unknown model kind '" + kind + "' in checkpoint");
}

void save_model(const std::filesystem::path& path, const AnyModel& model) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_model(out, model);
  if (!out) throw IoError("failed writing " + path.string());
}

AnyModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_model(in);
}

}  // namespace netgen
