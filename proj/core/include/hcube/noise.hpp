#pragma once

#include <cstdint>

#include "hcube/cube_function.hpp"
#include "hcube/rng.hpp"

namespace hcube {

/// Law of the biased sign vector xi(t): coordinates are i.i.d. with
/// P{xi_i = 1} = (1 + e^{-t}) / 2.
class NoiseParameter {
 public:
  explicit NoiseParameter(double t);

  double t() const { return t_; }
  double p_plus() const { return 0.5 * (1.0 + mean_); }
  double p_minus() const { return 0.5 * (1.0 - mean_); }
  /// E xi_i = e^{-t}.
  double mean() const { return mean_; }
  /// Var xi_i = 1 - e^{-2t}.
  double variance() const { return variance_; }
  /// Standardized coordinate delta_i(t) for a realized sign xi_i.
  double standardized(int xi) const;

 private:
  double t_;
  double mean_;
  double variance_;
};

/// Enumerative paths touch 2^n x 2^n (point, outcome) pairs.
inline constexpr int kMaxEnumerativeDim = 14;

/// eps -> E f(eps xi(t)), evaluated twice for cross-checking.
struct NoiseExpectation {
  CubeFunction spectral;    ///< level k scaled by e^{-tk}
  CubeFunction enumerative; ///< weighted sum over all 2^n outcomes of xi
};

NoiseExpectation exact_noise_expectation(const CubeFunction& f, const NoiseParameter& t);
/// Direct sum over outcomes; throws for n > kMaxEnumerativeDim.
CubeFunction noise_expectation_enumerative(const CubeFunction& f, const NoiseParameter& t);

/// max_eps |P_t f - E f(eps xi(t))|.
double verify_heat_representation(const CubeFunction& f, const NoiseParameter& t);

/// max_eps of the gap between e^{-tL} D_j f(eps) and
/// e^{-t} / sqrt(1 - e^{-2t}) * E[delta_j(t) f(eps xi(t))], the expectation
/// taken by full enumeration of xi. Requires t > 0.
double verify_derivative_representation(const CubeFunction& f, int j, const NoiseParameter& t);

struct SampleBatch {
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  std::uint64_t stream = 0;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t count = 0;
};

/// Monte-Carlo estimate of E_xi f(eps xi(t)) at the point `point`.
McEstimate mc_noise_expectation(const CubeFunction& f, Mask point, const NoiseParameter& t,
                                const SampleBatch& batch);
/// Radial variant: the evaluation point is any point of Hamming weight
/// `weight`; each sample draws all n coordinates of xi.
McEstimate mc_noise_expectation(const RadialProfile& f, int weight, const NoiseParameter& t,
                                const SampleBatch& batch);

/// Draws one xi(t) as a point mask (bit set where xi_i = -1). n <= 32.
Mask sample_noise(CounterRng& rng, int n, const NoiseParameter& t);

/// int_0^inf P{|xi_j(t) - xi'_j(t)| > s}^{1/r} ds = 2^{1-1/r} (1 - e^{-2t})^{1/r},
/// xi' an independent copy. Requires t >= 0, r >= 1.
double symmetrized_tail_integral(double t, double r);
/// Same integral by Gauss-Legendre quadrature of the tail function built
/// from the four-point law of (xi, xi'), split at its jump points.
double symmetrized_tail_integral_numeric(double t, double r);

}  // namespace hcube
