#pragma once

#include <functional>
#include <vector>

namespace hcube {

struct GaussLegendre {
  std::vector<double> nodes;   ///< on [-1, 1], ascending
  std::vector<double> weights;
};

/// Gauss-Legendre rule with `points` nodes (Newton iteration on P_points).
GaussLegendre gauss_legendre(int points);

/// Composite Gauss-Legendre integral of g over [a, b] with `panels` panels.
double integrate_composite(const std::function<double(double)>& g, double a, double b,
                           int panels, const GaussLegendre& rule);

/// Quadrature for integrals of the form
///   int_{-pi/2}^{pi/2} g(theta) sgn(theta) / t(theta) d theta,
///   t(theta) = sqrt(-log cos theta).
/// Folding the odd kernel and substituting v = t(theta) gives
///   int_0^inf [g(theta(v)) - g(-theta(v))] * 2 e^{-v^2} / sqrt(1 - e^{-2v^2}) dv
/// whose integrand is smooth at v = 0 (for smooth g) and Gaussian-decaying,
/// so both the singular point at 0 and the log-type end at pi/2 disappear.
/// The rule stores symmetric nodes with odd weights: sum_k w_k g(theta_k).
class KernelQuadrature {
 public:
  /// Builds the coarsest rule whose self-check meets `target_accuracy`;
  /// throws std::runtime_error when no refinement level reaches it.
  explicit KernelQuadrature(double target_accuracy = 1e-8);

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  double target_accuracy() const { return target_; }
  /// Observed difference against the next refinement on the self-check integrals.
  double estimated_error() const { return estimated_error_; }

  double integrate(const std::function<double(double)>& g) const;

  /// Upper cutoff in v = t(theta); the integrand beyond it is below e^{-42}.
  static constexpr double kTruncationV = 6.5;

 private:
  KernelQuadrature(int level, double target);

  std::vector<double> nodes_;
  std::vector<double> weights_;
  double target_;
  double estimated_error_ = 0.0;
};

/// I(m) = int cos^m(theta) sin(theta) sgn(theta) / t(theta) d theta.
double pisier_kernel_integral(int m, const KernelQuadrature& quad);

/// Closed form from the substitution u = -log cos theta:
/// I(m) = 2 Gamma(1/2) / sqrt(m + 1).
double pisier_kernel_integral_closed_form(int m);

}  // namespace hcube
