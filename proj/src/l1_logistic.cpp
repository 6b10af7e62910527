// Apache License, Version 2.0, refer to LICENSE.txt
#include "netgen/l1_logistic.hpp"

#include <algorithm>
#include <cmath>

#include "netgen/error.hpp"

namespace netgen {

namespace {

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }
double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::vector<double> linear_predictor(std::span<const BinaryColumn* const> features,
                                     std::size_t rows, double intercept,
                                     std::span<const double> coefficients) {
  std::vector<double> z(rows, intercept);
  for (std::size_t j = 0; j < features.size(); ++j) {
    if (coefficients[j] == 0.0) continue;
    for (auto s : *features[j]) z[s] += coefficients[j];
  }
  return z;
}

double min_norm_component(double g, double beta, double penalty) {
  if (beta > 0) return g + penalty;
  if (beta < 0) return g - penalty;
  return std::copysign(std::max(std::abs(g) - penalty, 0.0), g);
}

class CoordinateSolver {
 public:
  CoordinateSolver(std::span<const BinaryColumn* const> features,
                   std::span<const std::uint8_t> y, double penalty)
      : x_(features), y_(y), penalty_(penalty), beta_(features.size(), 0.0),
        z_(y.size(), 0.0), p_(y.size(), 0.5) {}

  void set_intercept(double b0) {
    b0_ = b0;
    std::fill(z_.begin(), z_.end(), b0);
    std::fill(p_.begin(), p_.end(), sigmoid(b0));
  }

  double intercept() const { return b0_; }
  const std::vector<double>& beta() const { return beta_; }

  double gradient(std::size_t j) const {
    double g = 0;
    for (auto s : *x_[j]) g += p_[s] - y_[s];
    return g;
  }

  double intercept_gradient() const {
    double g = 0;
    for (std::size_t s = 0; s < y_.size(); ++s) g += p_[s] - y_[s];
    return g;
  }

  void update_intercept() {
    double g = 0, h = 0;
    for (std::size_t s = 0; s < y_.size(); ++s) {
      g += p_[s] - y_[s];
      h += p_[s] * (1.0 - p_[s]);
    }
    if (g == 0.0) return;
    const double d = -g / std::max(h, 1e-12);
    const double decrease = g * d;
    for (double t = 1.0; t > 1e-12; t *= 0.5) {
      double delta = 0;
      for (std::size_t s = 0; s < y_.size(); ++s) {
        delta += softplus(z_[s] + t * d) - softplus(z_[s]) - y_[s] * t * d;
      }
      if (delta <= kArmijo * t * decrease) {
        b0_ += t * d;
        for (std::size_t s = 0; s < y_.size(); ++s) {
          z_[s] += t * d;
          p_[s] = sigmoid(z_[s]);
        }
        return;
      }
    }
  }

  // Returns the gradient seen before the step.
  double update(std::size_t j) {
    const auto& col = *x_[j];
    if (col.empty()) return 0.0;
    double g = 0, h = 0;
    for (auto s : col) {
      g += p_[s] - y_[s];
      h += p_[s] * (1.0 - p_[s]);
    }
    h = std::max(h, 1e-12);
    const double b = beta_[j];
    double d;
    if (g + penalty_ <= h * b) {
      d = -(g + penalty_) / h;
    } else if (g - penalty_ >= h * b) {
      d = -(g - penalty_) / h;
    } else {
      d = -b;
    }
    if (d == 0.0) return g;
    const double model_decrease = g * d + penalty_ * (std::abs(b + d) - std::abs(b));
    for (double t = 1.0; t > 1e-12; t *= 0.5) {
      double delta = penalty_ * (std::abs(b + t * d) - std::abs(b));
      for (auto s : col) {
        delta += softplus(z_[s] + t * d) - softplus(z_[s]) - y_[s] * t * d;
      }
      if (delta <= kArmijo * t * model_decrease) {
        beta_[j] = b + t * d;
        for (auto s : col) {
          z_[s] += t * d;
          p_[s] = sigmoid(z_[s]);
        }
        break;
      }
    }
    return g;
  }

 private:
  static constexpr double kArmijo = 0.01;
  std::span<const BinaryColumn* const> x_;
  std::span<const std::uint8_t> y_;
  double penalty_;
  double b0_ = 0.0;
  std::vector<double> beta_;
  std::vector<double> z_;
  std::vector<double> p_;
};

}  // namespace

double l1_logistic_objective(std::span<const BinaryColumn* const> features,
                             std::span<const std::uint8_t> response, double intercept,
                             std::span<const double> coefficients, double penalty) {
  auto z = linear_predictor(features, response.size(), intercept, coefficients);
  double f = 0;
  for (std::size_t s = 0; s < z.size(); ++s) f += softplus(z[s]) - response[s] * z[s];
  for (double b : coefficients) f += penalty * std::abs(b);
  return f;
}

std::vector<double> l1_logistic_smooth_gradient(std::span<const BinaryColumn* const> features,
                                                std::span<const std::uint8_t> response,
                                                double intercept,
                                                std::span<const double> coefficients) {
  auto z = linear_predictor(features, response.size(), intercept, coefficients);
  std::vector<double> residual(z.size());
  for (std::size_t s = 0; s < z.size(); ++s) residual[s] = sigmoid(z[s]) - response[s];
  std::vector<double> g(features.size() + 1, 0.0);
  for (double r : residual) g[0] += r;
  for (std::size_t j = 0; j < features.size(); ++j)
    for (auto s : *features[j]) g[j + 1] += residual[s];
  return g;
}

double l1_logistic_subgradient_norm(std::span<const double> smooth_gradient,
                                    std::span<const double> coefficients, double penalty) {
  double acc = smooth_gradient[0] * smooth_gradient[0];
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    double c = min_norm_component(smooth_gradient[j + 1], coefficients[j], penalty);
    acc += c * c;
  }
  return std::sqrt(acc);
}

L1LogisticResult fit_l1_logistic(std::span<const BinaryColumn* const> features,
                                 std::span<const std::uint8_t> response,
                                 const L1LogisticOptions& options) {
  if (response.empty()) throw InvalidArgument("logistic regression needs at least one row");
  if (!(options.penalty >= 0.0)) throw InvalidArgument("penalty must be >= 0");
  const std::size_t p = features.size();

  std::size_t positives = 0;
  for (auto v : response) positives += v;
  const double freq = static_cast<double>(positives) / static_cast<double>(response.size());

  CoordinateSolver solver(features, response, options.penalty);
  solver.set_intercept(freq > 0.0 && freq < 1.0 ? std::log(freq / (1.0 - freq)) : 0.0);

  L1LogisticResult result;
  std::vector<std::size_t> active;
  std::vector<double> grad(p);
  bool full_pass = true;
  const double tol2 = options.tolerance * options.tolerance;

  while (result.iterations < options.max_iterations) {
    ++result.iterations;
    solver.update_intercept();
    if (full_pass) {
      for (std::size_t j = 0; j < p; ++j) solver.update(j);
    } else {
      for (auto j : active) solver.update(j);
    }

    // Convergence check over the current working set.
    double norm2 = solver.intercept_gradient() * solver.intercept_gradient();
    if (full_pass) {
      active.clear();
      for (std::size_t j = 0; j < p; ++j) {
        grad[j] = solver.gradient(j);
        const double c = min_norm_component(grad[j], solver.beta()[j], options.penalty);
        norm2 += c * c;
        if (solver.beta()[j] != 0.0 || std::abs(grad[j]) >= options.penalty) active.push_back(j);
      }
      if (norm2 <= tol2) {
        result.converged = true;
        break;
      }
      full_pass = false;
    } else {
      for (auto j : active) {
        const double c = min_norm_component(solver.gradient(j), solver.beta()[j], options.penalty);
        norm2 += c * c;
      }
      if (norm2 <= tol2) full_pass = true;
    }
  }

  result.intercept = solver.intercept();
  result.coefficients = solver.beta();
  auto g = l1_logistic_smooth_gradient(features, response, result.intercept, result.coefficients);
  result.subgradient_norm = l1_logistic_subgradient_norm(g, result.coefficients, options.penalty);
  result.objective = l1_logistic_objective(features, response, result.intercept,
                                           result.coefficients, options.penalty);
  return result;
}

}  // namespace netgen
