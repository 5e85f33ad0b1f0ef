#include "hcube/counterexamples.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hcube/krawtchouk.hpp"
#include "hcube/norms.hpp"
#include "hcube/rng.hpp"

namespace hcube {

RadialProfile talagrand_profile(int n) {
  if (n < 2) throw std::invalid_argument("Talagrand profile needs n >= 2");
  const double root = std::sqrt(static_cast<double>(n));
  std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
  for (int d = 1; d <= n; ++d) v[static_cast<std::size_t>(d)] = std::max(0.0, std::log(d / root));
  return RadialProfile(n, std::move(v));
}

double radial_mean(const RadialProfile& v) {
  const std::vector<double> pmf = binomial_half_pmf(v.dim());
  double s = 0.0;
  for (int d = 0; d <= v.dim(); ++d) s += pmf[static_cast<std::size_t>(d)] * v[d];
  return s;
}

CounterexampleReport talagrand_ratio(int n, double p) {
  if (n < 4) throw std::invalid_argument("Talagrand ratio needs n >= 4");
  const RadialProfile v = talagrand_profile(n);
  const double mean = radial_mean(v);
  CounterexampleReport r;
  r.name = "talagrand";
  r.n = n;
  r.p = p;
  for (int d = 0; d <= n; ++d) r.lhs = std::max(r.lhs, std::abs(v[d] - mean));
  r.rhs = radial_sup_rademacher_moment(v, p);
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  return r;
}

BoundCheck talagrand_bound_check(int n, std::uint64_t samples, std::uint64_t seed) {
  const RadialProfile v = talagrand_profile(n);
  const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  const std::uint64_t tail_mask = n % 64 == 0 ? ~0ull : (1ull << (n % 64)) - 1;
  const double root = std::sqrt(static_cast<double>(n));
  CounterRng rng(seed, 0);
  BoundCheck out;
  out.samples = samples;
  out.worst_margin = -std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> eps(words);
  std::vector<std::uint64_t> del(words);
  for (std::uint64_t k = 0; k < samples; ++k) {
    int d = 0;
    int minus_delta = 0;
    int minus_delta_on_support = 0;  // delta_i = -1 among eps_i = -1
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint64_t m = w + 1 == words ? tail_mask : ~0ull;
      eps[w] = rng() & m;
      del[w] = rng() & m;
      d += std::popcount(eps[w]);
      minus_delta += std::popcount(del[w]);
      minus_delta_on_support += std::popcount(eps[w] & del[w]);
    }
    const int s = n - 2 * minus_delta;
    const int sum_on_support = d - 2 * minus_delta_on_support;
    const int sum_off_support = s - sum_on_support;
    // D_i f(eps) = alpha(d) where eps_i = +1, beta(d) where eps_i = -1
    const double alpha = d < n ? 0.5 * (v[d] - v[d + 1]) : 0.0;
    const double beta = d > 0 ? 0.5 * (v[d] - v[d - 1]) : 0.0;
    const double value = std::abs(alpha * sum_off_support + beta * sum_on_support);
    const double margin = value - (4.0 / root * std::abs(s) + 4.0);
    out.worst_margin = std::max(out.worst_margin, margin);
    if (margin > 0.0) ++out.violations;
  }
  return out;
}

double talagrand_bound_worst_margin_exact(int n) {
  const std::vector<double> m = radial_sup_by_sign_sum(talagrand_profile(n));
  const double root = std::sqrt(static_cast<double>(n));
  double worst = -std::numeric_limits<double>::infinity();
  for (int s = n % 2; s <= n; s += 2) {
    worst = std::max(worst, m[static_cast<std::size_t>(s)] - (4.0 / root * s + 4.0));
  }
  return worst;
}

double lamberton_gradient_norm(int n, double s) {
  if (n < 1) throw std::invalid_argument("Lamberton function needs n >= 1");
  if (!(s >= 1.0)) throw std::invalid_argument("L^s exponent must be >= 1");
  // |grad f| is sqrt(n)/2 at eps = 1, 1/2 at its n neighbours, 0 elsewhere
  const double inner = std::pow(std::sqrt(static_cast<double>(n)) / 2.0, s) + n * std::pow(2.0, -s);
  return std::pow(std::ldexp(inner, -n), 1.0 / s);
}

RadialProfile lamberton_half_laplacian_profile(int n) {
  if (n < 1 || n > kKrawtchoukExactDim) {
    throw std::invalid_argument("Lamberton profile supports 1 <= n <= " + std::to_string(kKrawtchoukExactDim));
  }
  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  for (int d = 0; d <= n; ++d) {
    long double acc = 0.0L;
    for (int k = 1; k <= n; ++k) acc += std::sqrt(static_cast<long double>(k)) * krawtchouk(k, d, n);
    v[static_cast<std::size_t>(d)] = static_cast<double>(std::ldexp(acc, -n));
  }
  return RadialProfile(n, std::move(v));
}

bool lamberton_exponent_in_failure_range(double s) { return s > 1.0 && s < 2.0; }

CounterexampleReport lamberton_ratio(int n, double s) {
  if (n < 2) throw std::invalid_argument("Lamberton ratio needs n >= 2");
  CounterexampleReport r;
  r.name = "lamberton";
  r.n = n;
  r.s = s;
  r.lhs = lamberton_gradient_norm(n, s);
  r.rhs = lp_norm(lamberton_half_laplacian_profile(n), s);
  r.ratio = r.lhs / r.rhs;
  return r;
}

CounterexampleReport riesz_above_vector_check(int n, double p, double s) {
  if (!(p >= 2.0) || !(s > 1.0 && s < 2.0)) {
    throw std::invalid_argument("riesz-above check needs p >= 2 > s > 1");
  }
  if (n < 2) throw std::invalid_argument("riesz-above check needs n >= 2");
  // inner norm depends on delta only through S = sum delta
  const std::vector<double> pmf = binomial_half_pmf(n);
  double acc = 0.0;
  for (int m = 0; m <= n; ++m) {
    const double S = std::abs(n - 2 * m);
    const double inner = std::ldexp((std::pow(S, s) + n) * std::pow(2.0, -s), -n);
    acc += pmf[static_cast<std::size_t>(m)] * std::pow(inner, p / s);
  }
  CounterexampleReport r;
  r.name = "riesz-above";
  r.n = n;
  r.p = p;
  r.s = s;
  r.lhs = std::pow(acc, 1.0 / p);
  r.rhs = lp_norm(lamberton_half_laplacian_profile(n), s);
  r.ratio = r.lhs / r.rhs;
  return r;
}

namespace {

// Golden-section minimum of a unimodal h over [lo, hi].
template <class H>
double golden_min(H h, double lo, double hi, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double hc = h(c);
  double hd = h(d);
  while (b - a > tol) {
    if (hc < hd) {
      b = d;
      d = c;
      hd = hc;
      c = b - invphi * (b - a);
      hc = h(c);
    } else {
      a = c;
      c = d;
      hc = hd;
      d = a + invphi * (b - a);
      hd = h(d);
    }
  }
  return 0.5 * (a + b);
}

// Search in x = log tau, tau = -log r.
constexpr double kLogTauLo = -40.0;
constexpr double kLogTauHi = 2.5;
constexpr double kLogTauTol = 1e-13;

}  // namespace

PisierMinimum pisier_min_constant(int n) {
  if (n < 1) throw std::invalid_argument("Pisier constant needs n >= 1");
  // log g = n tau + log coth(tau / 2)
  auto log_g = [n](double x) {
    const double tau = std::exp(x);
    return n * tau - std::log(std::tanh(0.5 * tau));
  };
  const double x = golden_min(log_g, kLogTauLo, kLogTauHi, kLogTauTol);
  PisierMinimum out;
  out.argmin = std::exp(-std::exp(x));
  out.minimum = std::exp(log_g(x));
  return out;
}

double pisier_argmin_closed_form(int n) {
  if (n < 1) throw std::invalid_argument("Pisier constant needs n >= 1");
  const double nn = n;
  // (sqrt(1 + n^2) - 1)/n, rationalized to avoid cancellation
  return nn / (std::sqrt(1.0 + nn * nn) + 1.0);
}

PisierMinimum pisier_log_bound(int n) {
  if (n < 1) throw std::invalid_argument("Pisier constant needs n >= 1");
  auto log_h = [n](double x) {
    const double tau = std::exp(x);
    return n * tau + std::log(-std::log(std::tanh(0.5 * tau)));
  };
  const double x = golden_min(log_h, kLogTauLo, kLogTauHi, kLogTauTol);
  PisierMinimum out;
  out.argmin = std::exp(-std::exp(x));
  out.minimum = std::exp(log_h(x));
  return out;
}

double GrowthCurve::range() const {
  if (ordinate.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(ordinate.begin(), ordinate.end());
  return *hi - *lo;
}

GrowthCurve fit_log_growth(std::vector<double> abscissa, std::vector<double> ordinate) {
  if (abscissa.size() != ordinate.size()) throw std::invalid_argument("growth curve sizes differ");
  if (abscissa.size() < 2) throw std::invalid_argument("growth curve needs at least two points");
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    if (!(abscissa[i] > 0.0)) throw std::invalid_argument("growth curve abscissa must be positive");
    if (i > 0 && !(abscissa[i] > abscissa[i - 1])) {
      throw std::invalid_argument("growth curve abscissa must be strictly increasing");
    }
  }
  const auto m = static_cast<double>(abscissa.size());
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    sx += std::log(abscissa[i]);
    sy += ordinate[i];
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    const double dx = std::log(abscissa[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (ordinate[i] - my);
  }
  GrowthCurve g;
  g.slope = sxy / sxx;
  g.intercept = my - g.slope * mx;
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    g.residual = std::max(g.residual, std::abs(ordinate[i] - (g.intercept + g.slope * std::log(abscissa[i]))));
  }
  g.abscissa = std::move(abscissa);
  g.ordinate = std::move(ordinate);
  return g;
}

}  // namespace hcube
