#include "hcube/kernel_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hcube {

GaussLegendre gauss_legendre(int points) {
  if (points < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one point");
  GaussLegendre rule;
  rule.nodes.resize(static_cast<std::size_t>(points));
  rule.weights.resize(static_cast<std::size_t>(points));
  const int half = (points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= points; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = points * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(points - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(points - 1 - i)] = w;
  }
  if (points % 2 == 1) rule.nodes[static_cast<std::size_t>(points / 2)] = 0.0;
  return rule;
}

double integrate_composite(const std::function<double(double)>& g, double a, double b, int panels,
                           const GaussLegendre& rule) {
  if (panels < 1) throw std::invalid_argument("composite rule needs at least one panel");
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double s = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) s += rule.weights[k] * g(mid + 0.5 * h * rule.nodes[k]);
    total += 0.5 * h * s;
  }
  return total;
}

namespace {

constexpr int kPointsPerPanel = 16;
constexpr int kMaxLevel = 7;

// theta(v) with t(theta) = v, accurate for small v.
double theta_of(double v) { return std::atan(std::sqrt(std::expm1(2.0 * v * v))); }

// d theta / d v = 2 v e^{-v^2} / sqrt(1 - e^{-2v^2}); kernel factor 1/v folded in.
double folded_weight(double v) {
  return 2.0 * std::exp(-v * v) / std::sqrt(-std::expm1(-2.0 * v * v));
}

}  // namespace

KernelQuadrature::KernelQuadrature(int level, double target) : target_(target) {
  const GaussLegendre gl = gauss_legendre(kPointsPerPanel);
  const int panels = 4 << level;
  const double h = kTruncationV / panels;
  std::vector<double> pos_nodes;
  std::vector<double> pos_weights;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      const double v = mid + 0.5 * h * gl.nodes[k];
      pos_nodes.push_back(theta_of(v));
      pos_weights.push_back(0.5 * h * gl.weights[k] * folded_weight(v));
    }
  }
  // symmetric layout: negative half (descending |theta|) then positive half
  const std::size_t m = pos_nodes.size();
  nodes_.resize(2 * m);
  weights_.resize(2 * m);
  for (std::size_t k = 0; k < m; ++k) {
    nodes_[m - 1 - k] = -pos_nodes[k];
    weights_[m - 1 - k] = -pos_weights[k];
    nodes_[m + k] = pos_nodes[k];
    weights_[m + k] = pos_weights[k];
  }
}

KernelQuadrature::KernelQuadrature(double target_accuracy) : target_(target_accuracy) {
  if (!(target_accuracy > 0.0)) throw std::invalid_argument("quadrature target accuracy must be positive");
  auto probe = [](const KernelQuadrature& q) {
    std::vector<double> r;
    for (int m : {0, 1, 8, 64}) r.push_back(pisier_kernel_integral(m, q));
    for (int k : {1, 6, 12}) r.push_back(q.integrate([k](double th) { return std::sin(k * th); }));
    return r;
  };
  KernelQuadrature current(0, target_accuracy);
  std::vector<double> current_probe = probe(current);
  for (int level = 1; level <= kMaxLevel; ++level) {
    KernelQuadrature finer(level, target_accuracy);
    const std::vector<double> finer_probe = probe(finer);
    double diff = 0.0;
    for (std::size_t i = 0; i < finer_probe.size(); ++i) {
      diff = std::max(diff, std::abs(finer_probe[i] - current_probe[i]));
    }
    if (diff <= target_accuracy) {
      nodes_ = std::move(current.nodes_);
      weights_ = std::move(current.weights_);
      estimated_error_ = diff;
      return;
    }
    current = std::move(finer);
    current_probe = finer_probe;
  }
  throw std::runtime_error("kernel quadrature failed to reach the declared accuracy");
}

double KernelQuadrature::integrate(const std::function<double(double)>& g) const {
  double s = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) s += weights_[k] * g(nodes_[k]);
  return s;
}

double pisier_kernel_integral(int m, const KernelQuadrature& quad) {
  if (m < 0) throw std::invalid_argument("kernel integral exponent must be nonnegative");
  return quad.integrate([m](double th) { return std::pow(std::cos(th), m) * std::sin(th); });
}

double pisier_kernel_integral_closed_form(int m) {
  if (m < 0) throw std::invalid_argument("kernel integral exponent must be nonnegative");
  return 2.0 * std::sqrt(std::numbers::pi) / std::sqrt(m + 1.0);
}

}  // namespace hcube
