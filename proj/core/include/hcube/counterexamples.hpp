#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hcube/cube_function.hpp"

namespace hcube {

/// One evaluated instance of a counterexample family.
struct CounterexampleReport {
  std::string name;
  int n = 0;
  double p = 0.0;  ///< outer exponent (0 where unused)
  double s = 0.0;  ///< inner exponent (0 where unused)
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

/// v[d] = max(0, log(d / sqrt(n))), natural log. Requires n >= 2.
RadialProfile talagrand_profile(int n);

/// Exact binomial expectation of a radial profile.
double radial_mean(const RadialProfile& v);

/// lhs = max_d |v(d) - E f|, the L^p_eps(L^inf_eta) norm of F - A_eta for
/// F(eps; eta) = f(eps eta), which does not depend on eps or p.
/// rhs = radial_sup_rademacher_moment(v, p). Requires n >= 4.
CounterexampleReport talagrand_ratio(int n, double p);

struct BoundCheck {
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  /// max over samples of |sum delta_i D_i f(eps)| - (4/sqrt(n)|sum delta_i| + 4)
  double worst_margin = 0.0;
};

/// Samples (delta, eps) uniformly and tests
///   |sum_i delta_i D_i f(eps)| <= 4/sqrt(n) |sum_i delta_i| + 4
/// for the Talagrand profile.
BoundCheck talagrand_bound_check(int n, std::uint64_t samples, std::uint64_t seed);

/// The same bound checked for every sign sum s and every eps at once
/// through the radial supremum M(s); returns the largest margin.
double talagrand_bound_worst_margin_exact(int n);

/// f = 1_{eps = 1}. lhs = || |grad f|_{l^2} ||_{L^s} in closed form,
/// rhs = ||L^{1/2} f||_{L^s} via value(d) = 2^{-n} sum_k sqrt(k) K_k(d).
/// Requires n >= 2; s outside (1, 2) is evaluated but flagged.
CounterexampleReport lamberton_ratio(int n, double s);
/// Closed form (2^{-n}[(sqrt(n)/2)^s + n 2^{-s}])^{1/s}.
double lamberton_gradient_norm(int n, double s);
/// Radial profile of L^{1/2} 1_{eps = 1}.
RadialProfile lamberton_half_laplacian_profile(int n);
bool lamberton_exponent_in_failure_range(double s);

/// Lift g(eps) = (eta -> 1_{eps = eta}) with X = L^s over eta:
/// lhs = (E_delta || sum delta_i D_i g ||^p_{L^p(X)})^{1/p}
///     = (E_delta [2^{-n}(|sum delta|^s + n) 2^{-s}]^{p/s})^{1/p},
/// rhs = ||L^{1/2} g||_{L^p(X)} = ||L^{1/2} f||_{L^s}.
/// Requires p >= 2 > s > 1.
CounterexampleReport riesz_above_vector_check(int n, double p, double s);

struct PisierMinimum {
  double minimum = 0.0;
  double argmin = 0.0;  ///< r in (0, 1)
};

/// min over r in (0, 1) of g(r) = r^{-n} (1 + r)/(1 - r) by golden-section
/// search on log g in log(-log r); log g is convex in -log r.
PisierMinimum pisier_min_constant(int n);
/// Stationary point r = (sqrt(1 + n^2) - 1)/n of g.
double pisier_argmin_closed_form(int n);
/// min over tau > 0 of e^{n tau} log coth(tau / 2): the bound obtained when
/// the integral int_tau^inf 2 e^{-t}/(1 - e^{-2t}) dt = log coth(tau/2) is
/// kept instead of its exponential.
PisierMinimum pisier_log_bound(int n);

/// (abscissa, ordinate) with the least-squares fit y = intercept + slope log x.
struct GrowthCurve {
  std::vector<double> abscissa;
  std::vector<double> ordinate;
  double slope = 0.0;
  double intercept = 0.0;
  /// max |y - fit| over the points.
  double residual = 0.0;

  double range() const;
};

/// Throws std::invalid_argument unless abscissa is strictly increasing,
/// positive, and has at least two points.
GrowthCurve fit_log_growth(std::vector<double> abscissa, std::vector<double> ordinate);

}  // namespace hcube
