#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hcube/cube_function.hpp"

namespace hcube {

/// Outer L^p over the uniform cube of an inner norm X.
///  - scalar:  X = R
///  - ell_q:   X = l^q_R, (sum_r |x_r|^q)^{1/q}
///  - lq_cube: X = L^q over a second cube of dimension m, (2^{-m} sum |x_r|^q)^{1/q}
/// Exponents may be +infinity (true maxima).
struct MixedNormSpec {
  enum class Inner { scalar, ell_q, lq_cube };

  double p = 2.0;
  Inner inner = Inner::scalar;
  double q = 2.0;
  int inner_dim = 1;  ///< R for ell_q, m for lq_cube

  static MixedNormSpec scalar(double p);
  static MixedNormSpec ell(double p, double q, int components);
  static MixedNormSpec lq_cube(double p, double q, int m);
  static MixedNormSpec linf_cube(double p, int m);

  /// Number of inner entries per outer point: 1, R, or 2^m.
  std::size_t inner_count() const;
  /// Throws std::invalid_argument on out-of-range exponents or dimensions.
  void validate() const;
  std::string describe() const;
};

/// Norm of one inner vector under spec's inner norm.
double inner_norm(std::span<const double> x, const MixedNormSpec& spec);

/// Operand values laid out as (outer point) x (inner entry).
class SampledField {
 public:
  SampledField() = default;
  SampledField(std::size_t points, std::size_t inner, std::vector<double> data);

  static SampledField of(const CubeFunction& f);
  static SampledField of(const VectorCubeFunction& f);
  /// Outer variable eps, inner variable delta.
  static SampledField of(const BiCubeFunction& f);

  std::size_t points() const { return points_; }
  std::size_t inner() const { return inner_; }
  std::span<const double> data() const { return data_; }
  std::span<const double> row(std::size_t x) const { return {data_.data() + x * inner_, inner_}; }

 private:
  std::size_t points_ = 0;
  std::size_t inner_ = 0;
  std::vector<double> data_;
};

/// (mean |f|^p)^{1/p} under the uniform probability measure; p = inf gives max|f|.
double lp_norm(std::span<const double> values, double p);
double lp_norm(const CubeFunction& f, double p);
/// Radial variant with Binomial(n, 1/2) weights; valid for very large n.
double lp_norm(const RadialProfile& f, double p);

double mixed_norm(const SampledField& field, const MixedNormSpec& spec);
double mixed_norm(const VectorCubeFunction& f, const MixedNormSpec& spec);
/// Inner norm over delta requires an lq_cube spec with m = n_delta; a
/// scalar spec takes the joint L^p over (eps, delta).
double mixed_norm(const BiCubeFunction& f, const MixedNormSpec& spec);

/// Exact enumeration is capped at 2^20 sign patterns.
inline constexpr int kMaxExactRademacher = 20;

struct RademacherConfig {
  enum class Mode { exact, monte_carlo };
  Mode mode = Mode::exact;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  static RademacherConfig exact() { return {}; }
  static RademacherConfig monte_carlo(std::uint64_t samples, std::uint64_t seed, std::uint64_t stream = 0) {
    return {Mode::monte_carlo, samples, seed, stream};
  }
};

struct RademacherAverage {
  double value = 0.0;
  double std_error = 0.0;  ///< zero in exact mode
  bool exact = true;
};

/// (E_delta || sum_i delta_i g_i ||^{moment_p}_{L^p(X)})^{1/moment_p}, the
/// outer p and X taken from spec. Exact mode enumerates all sign patterns
/// (k <= 20); Monte-Carlo reports a delta-method standard error.
RademacherAverage rademacher_avg(std::span<const SampledField> g, double moment_p,
                                 const MixedNormSpec& spec, const RademacherConfig& cfg);
RademacherAverage rademacher_avg(std::span<const CubeFunction> g, double moment_p,
                                 const MixedNormSpec& spec, const RademacherConfig& cfg);
RademacherAverage rademacher_avg(std::span<const VectorCubeFunction> g, double moment_p,
                                 const MixedNormSpec& spec, const RademacherConfig& cfg);

/// (E_delta [sup_zeta |sum_i delta_i D_i f(zeta)|]^p)^{1/p} for radial f.
///
/// With alpha(d) = (v(d) - v(d+1))/2, beta(d) = (v(d) - v(d-1))/2 and
/// s = sum delta_i, the supremum is max_d max_u |alpha s + (beta - alpha) u|
/// over u in [max(-d, s-n+d), min(d, s+n-d)]. When |s| <= |n - 2d| the
/// inner maximum equals a_d |s| + b_d, so those d are folded into a Li Chao
/// upper envelope queried at |s|; the remaining band of d near n/2 is
/// evaluated directly. Sign sums whose binomial weight cannot move the
/// result at double precision (relative 1e-18) are skipped. Cost is
/// O(n log n + S^2) with S ~ 10 sqrt(n) the retained range of |s|.
double radial_sup_rademacher_moment(const RadialProfile& v, double p);

/// M(s) = sup_zeta |sum_i delta_i D_i f(zeta)| for any delta with sum s,
/// indexed by |s| in [0, n]; entries of the wrong parity are 0.
std::vector<double> radial_sup_by_sign_sum(const RadialProfile& v);

/// Same quantity by the plain O(n^2) double loop over (s, d); all s kept.
/// Also handles p = inf.
double radial_sup_rademacher_moment_quadratic(const RadialProfile& v, double p);

}  // namespace hcube
