// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef NETGEN_L1_LOGISTIC_HPP
#define NETGEN_L1_LOGISTIC_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace netgen {

/// Column of a 0/1 design matrix: sorted row indices holding a 1.
using BinaryColumn = std::vector<std::uint32_t>;

struct L1LogisticOptions {
  double penalty = 0.0;       // weight of the L1 norm; intercept is not penalized
  double tolerance = 1e-6;    // on the 2-norm of the minimum-norm subgradient
  int max_iterations = 10000; // coordinate sweeps
};

struct L1LogisticResult {
  double intercept = 0.0;
  std::vector<double> coefficients;
  int iterations = 0;
  bool converged = false;
  double objective = 0.0;
  double subgradient_norm = 0.0;
};

/// Minimizes sum_s [log(1 + e^z_s) - y_s z_s] + penalty * |beta|_1 with
/// z_s = intercept + sum_j beta_j x_sj, by coordinate descent with a
/// one-dimensional Newton step and Armijo backtracking per coordinate.
/// Coordinates that sit at zero with |gradient| < penalty are shelved until
/// the active set converges, then every coordinate is re-checked.
L1LogisticResult fit_l1_logistic(std::span<const BinaryColumn* const> features,
                                 std::span<const std::uint8_t> response,
                                 const L1LogisticOptions& options);

/// Penalized objective at the given point.
double l1_logistic_objective(std::span<const BinaryColumn* const> features,
                             std::span<const std::uint8_t> response, double intercept,
                             std::span<const double> coefficients, double penalty);

/// Gradient of the smooth (unpenalized) part: entry 0 is the intercept.
std::vector<double> l1_logistic_smooth_gradient(std::span<const BinaryColumn* const> features,
                                                std::span<const std::uint8_t> response,
                                                double intercept,
                                                std::span<const double> coefficients);

/// Norm of the minimum-norm element of the subdifferential.
double l1_logistic_subgradient_norm(std::span<const double> smooth_gradient,
                                    std::span<const double> coefficients, double penalty);

}  // namespace netgen

#endif  // NETGEN_L1_LOGISTIC_HPP
