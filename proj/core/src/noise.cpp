#include "hcube/noise.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hcube/kernel_quadrature.hpp"

namespace hcube {

NoiseParameter::NoiseParameter(double t) : t_(t) {
  if (!(t >= 0.0) || std::isinf(t)) throw std::invalid_argument("noise parameter t must be finite and >= 0");
  mean_ = std::exp(-t);
  variance_ = -std::expm1(-2.0 * t);
}

double NoiseParameter::standardized(int xi) const {
  if (variance_ == 0.0) throw std::domain_error("standardized noise is undefined at t = 0");
  return (static_cast<double>(xi) - mean_) / std::sqrt(variance_);
}

namespace {

void check_enumerable(const CubeFunction& f) {
  if (f.dim() > kMaxEnumerativeDim) {
    throw std::invalid_argument("enumerative noise expectation refused for n = " + std::to_string(f.dim()) +
                                " > " + std::to_string(kMaxEnumerativeDim));
  }
}

// P{xi = s} for every outcome mask s (bits mark xi_i = -1).
std::vector<double> outcome_weights(int n, const NoiseParameter& t) {
  std::vector<double> by_weight(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    by_weight[static_cast<std::size_t>(k)] = std::pow(t.p_minus(), k) * std::pow(t.p_plus(), n - k);
  }
  std::vector<double> w(std::size_t{1} << n);
  for (std::size_t s = 0; s < w.size(); ++s) {
    w[s] = by_weight[static_cast<std::size_t>(__builtin_popcount(static_cast<Mask>(s)))];
  }
  return w;
}

}  // namespace

CubeFunction noise_expectation_enumerative(const CubeFunction& f, const NoiseParameter& t) {
  check_enumerable(f);
  const std::vector<double> fv = f.values();
  const std::vector<double> w = outcome_weights(f.dim(), t);
  std::vector<double> out(fv.size(), 0.0);
  for (std::size_t x = 0; x < fv.size(); ++x) {
    double s = 0.0;
    // eps * xi has point mask x ^ s
    for (std::size_t o = 0; o < w.size(); ++o) s += w[o] * fv[x ^ o];
    out[x] = s;
  }
  return CubeFunction::from_values(out);
}

NoiseExpectation exact_noise_expectation(const CubeFunction& f, const NoiseParameter& t) {
  check_enumerable(f);
  return NoiseExpectation{heat(f, t.t()), noise_expectation_enumerative(f, t)};
}

double verify_heat_representation(const CubeFunction& f, const NoiseParameter& t) {
  check_enumerable(f);
  const std::vector<double> spectral = heat(f, t.t()).values();
  const std::vector<double> fv = f.values();
  const std::vector<double> w = outcome_weights(f.dim(), t);
  double worst = 0.0;
  for (std::size_t x = 0; x < fv.size(); ++x) {
    double s = 0.0;
    for (std::size_t o = 0; o < w.size(); ++o) s += w[o] * fv[x ^ o];
    worst = std::max(worst, std::abs(s - spectral[x]));
  }
  return worst;
}

double verify_derivative_representation(const CubeFunction& f, int j, const NoiseParameter& t) {
  check_enumerable(f);
  if (j < 0 || j >= f.dim()) throw std::out_of_range("coordinate outside the cube");
  if (!(t.t() > 0.0)) {
    throw std::invalid_argument("derivative representation needs t > 0 (sqrt(1 - e^{-2t}) vanishes at t = 0)");
  }
  const std::vector<double> lhs = heat(discrete_derivative(f, j), t.t()).values();
  const std::vector<double> fv = f.values();
  const std::vector<double> w = outcome_weights(f.dim(), t);
  const double delta_plus = t.standardized(1);
  const double delta_minus = t.standardized(-1);
  const double prefactor = t.mean() / std::sqrt(t.variance());
  const std::size_t bit = std::size_t{1} << j;
  // weight times delta_j(t), per outcome
  std::vector<double> kernel(w.size());
  for (std::size_t o = 0; o < w.size(); ++o) kernel[o] = w[o] * ((o & bit) ? delta_minus : delta_plus);
  double worst = 0.0;
  for (std::size_t x = 0; x < fv.size(); ++x) {
    double s = 0.0;
    for (std::size_t o = 0; o < w.size(); ++o) s += kernel[o] * fv[x ^ o];
    worst = std::max(worst, std::abs(prefactor * s - lhs[x]));
  }
  return worst;
}

Mask sample_noise(CounterRng& rng, int n, const NoiseParameter& t) {
  if (n < 0 || n > 32) throw std::invalid_argument("sample_noise supports n <= 32");
  Mask s = 0;
  const double p_minus = t.p_minus();
  for (int i = 0; i < n; ++i) {
    if (rng.uniform() < p_minus) s |= Mask{1} << i;
  }
  return s;
}

namespace {

McEstimate finish(double sum, double sum_sq, std::uint64_t count) {
  McEstimate e;
  e.count = count;
  e.mean = sum / static_cast<double>(count);
  if (count > 1) {
    const double var = std::max(0.0, (sum_sq - sum * e.mean) / static_cast<double>(count - 1));
    e.std_error = std::sqrt(var / static_cast<double>(count));
  }
  return e;
}

void check_batch(const SampleBatch& batch) {
  if (batch.count == 0) throw std::invalid_argument("Monte-Carlo batch needs a positive sample count");
}

}  // namespace

McEstimate mc_noise_expectation(const CubeFunction& f, Mask point, const NoiseParameter& t,
                                const SampleBatch& batch) {
  check_batch(batch);
  if (point >= f.size()) throw std::invalid_argument("evaluation point outside the cube");
  const std::vector<double> fv = f.values();
  CounterRng rng(batch.seed, batch.stream);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t k = 0; k < batch.count; ++k) {
    const double y = fv[point ^ sample_noise(rng, f.dim(), t)];
    sum += y;
    sum_sq += y * y;
  }
  return finish(sum, sum_sq, batch.count);
}

McEstimate mc_noise_expectation(const RadialProfile& f, int weight, const NoiseParameter& t,
                                const SampleBatch& batch) {
  check_batch(batch);
  const int n = f.dim();
  if (weight < 0 || weight > n) throw std::invalid_argument("evaluation weight outside [0, n]");
  CounterRng rng(batch.seed, batch.stream);
  const double p_minus = t.p_minus();
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t k = 0; k < batch.count; ++k) {
    // point: first `weight` coordinates are -1
    int d = 0;
    for (int i = 0; i < n; ++i) {
      const bool flip = rng.uniform() < p_minus;
      const bool minus = (i < weight) != flip;
      d += minus ? 1 : 0;
    }
    const double y = f[d];
    sum += y;
    sum_sq += y * y;
  }
  return finish(sum, sum_sq, batch.count);
}

double symmetrized_tail_integral(double t, double r) {
  if (!(t >= 0.0)) throw std::invalid_argument("tail integral needs t >= 0");
  if (!(r >= 1.0)) throw std::invalid_argument("tail integral needs r >= 1");
  return std::pow(2.0, 1.0 - 1.0 / r) * std::pow(-std::expm1(-2.0 * t), 1.0 / r);
}

double symmetrized_tail_integral_numeric(double t, double r) {
  if (!(t >= 0.0)) throw std::invalid_argument("tail integral needs t >= 0");
  if (!(r >= 1.0)) throw std::invalid_argument("tail integral needs r >= 1");
  const NoiseParameter noise(t);
  // law of |xi - xi'|
  struct Atom {
    double value;
    double prob;
  };
  std::vector<Atom> atoms;
  for (int a : {1, -1}) {
    for (int b : {1, -1}) {
      const double pa = a == 1 ? noise.p_plus() : noise.p_minus();
      const double pb = b == 1 ? noise.p_plus() : noise.p_minus();
      atoms.push_back({std::abs(static_cast<double>(a - b)), pa * pb});
    }
  }
  auto tail = [&](double s) {
    double p = 0.0;
    for (const Atom& at : atoms) {
      if (at.value > s) p += at.prob;
    }
    return std::pow(p, 1.0 / r);
  };
  std::vector<double> cuts{0.0};
  for (const Atom& at : atoms) cuts.push_back(at.value);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const GaussLegendre rule = gauss_legendre(8);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    total += integrate_composite(tail, cuts[k], cuts[k + 1], 2, rule);
  }
  // beyond the largest atom the tail probability is zero
  return total;
}

}  // namespace hcube
