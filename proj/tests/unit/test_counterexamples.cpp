#include <gtest/gtest.h>

#include <cmath>

#include "hcube/counterexamples.hpp"
#include "hcube/norms.hpp"
#include "oracles.hpp"

using namespace hcube;

namespace {

std::vector<double> indicator_at_one(int n) {
  std::vector<double> v(std::size_t{1} << n, 0.0);
  v[0] = 1.0;
  return v;
}

// L^{1/2} by explicit coefficient scaling
std::vector<double> half_laplacian(const std::vector<double>& v) {
  std::vector<double> c = oracle::coeffs_from_values(v);
  for (std::size_t A = 0; A < c.size(); ++A) c[A] *= std::sqrt(static_cast<double>(std::popcount(static_cast<Mask>(A))));
  return oracle::values_from_coeffs(c);
}

}  // namespace

TEST(Talagrand, ProfileShape) {
  for (int n : {16, 100, 1 << 12}) {
    const RadialProfile v = talagrand_profile(n);
    for (int d = 0; d * d <= n; ++d) EXPECT_EQ(v[d], 0.0);
    EXPECT_NEAR(v[n], 0.5 * std::log(static_cast<double>(n)), 1e-12);
  }
  for (int n : {16, 256, 4096}) EXPECT_GT(radial_mean(talagrand_profile(n)), 0.1 * std::log(static_cast<double>(n)));
  EXPECT_THROW(talagrand_profile(1), std::invalid_argument);
}

TEST(Talagrand, RadialMatchesEnumeration) {
  for (int n : {4, 8, 10}) {
    const RadialProfile v = talagrand_profile(n);
    const auto dense = v.to_dense().values();
    double mean = 0.0;
    for (double x : dense) mean += x;
    mean /= static_cast<double>(dense.size());
    // F(eps; eta) = f(eps eta): for each eps the sup over eta of |F - A F|
    double lhs = 0.0;
    for (std::size_t e = 0; e < dense.size(); ++e) {
      double sup = 0.0;
      for (std::size_t eta = 0; eta < dense.size(); ++eta) sup = std::max(sup, std::abs(dense[e ^ eta] - mean));
      lhs = std::max(lhs, sup);
    }
    for (double p : {1.0, 2.0, 3.0}) {
      const CounterexampleReport r = talagrand_ratio(n, p);
      EXPECT_NEAR(r.lhs, lhs, 1e-10);
      EXPECT_NEAR(r.rhs, oracle::sup_rademacher_moment(dense, n, p), 1e-10);
    }
  }
}

TEST(Talagrand, PointwiseBound) {
  const BoundCheck b = talagrand_bound_check(1 << 10, 20000, 3);
  EXPECT_EQ(b.samples, 20000u);
  EXPECT_EQ(b.violations, 0u);
  EXPECT_LT(b.worst_margin, 0.0);
  EXPECT_LT(talagrand_bound_worst_margin_exact(1 << 10), 0.0);
  const BoundCheck c = talagrand_bound_check(1 << 10, 20000, 3);
  EXPECT_EQ(b.worst_margin, c.worst_margin);
}

TEST(Talagrand, ExactBoundMatchesEnumeration) {
  // M(s) from the radial table against sup_zeta at fixed delta by enumeration
  const int n = 9;
  const RadialProfile v = talagrand_profile(n);
  const auto m = radial_sup_by_sign_sum(v);
  const auto dense = v.to_dense().values();
  std::vector<std::vector<double>> D;
  for (int i = 0; i < n; ++i) D.push_back(oracle::discrete_derivative(dense, i));
  for (Mask delta = 0; delta < (Mask{1} << n); delta += 13) {
    double sup = 0.0;
    for (std::size_t z = 0; z < dense.size(); ++z) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += ((delta >> i) & 1 ? -1.0 : 1.0) * D[static_cast<std::size_t>(i)][z];
      sup = std::max(sup, std::abs(s));
    }
    const int s = std::abs(n - 2 * std::popcount(delta));
    EXPECT_NEAR(m[static_cast<std::size_t>(s)], sup, 1e-12);
  }
}

TEST(Lamberton, ClosedFormMatchesDense) {
  for (int n : {2, 6, 10}) {
    const auto f = indicator_at_one(n);
    std::vector<double> grad(f.size(), 0.0);
    for (int i = 0; i < n; ++i) {
      const auto d = oracle::discrete_derivative(f, i);
      for (std::size_t x = 0; x < f.size(); ++x) grad[x] += d[x] * d[x];
    }
    for (double& g : grad) g = std::sqrt(g);
    for (double s : {1.2, 1.5, 1.9}) {
      EXPECT_NEAR(lamberton_gradient_norm(n, s), oracle::lp(grad, s), 1e-10);
      const CounterexampleReport r = lamberton_ratio(n, s);
      EXPECT_NEAR(r.rhs, oracle::lp(half_laplacian(f), s), 1e-10);
    }
  }
}

TEST(Lamberton, ProfileMatchesDense) {
  const int n = 10;
  const RadialProfile p = lamberton_half_laplacian_profile(n);
  const auto want = half_laplacian(indicator_at_one(n));
  for (Mask x = 0; x < (Mask{1} << n); x += 17) EXPECT_NEAR(p[std::popcount(x)], want[x], 1e-12);
  EXPECT_THROW(lamberton_half_laplacian_profile(61), std::invalid_argument);
}

TEST(Lamberton, RatioIncreasesInDimension) {
  double prev = 0.0;
  for (int n = 6; n <= 20; ++n) {
    const double r = lamberton_ratio(n, 1.5).ratio;
    EXPECT_GT(r, prev) << n;
    prev = r;
  }
  EXPECT_TRUE(lamberton_exponent_in_failure_range(1.5));
  EXPECT_FALSE(lamberton_exponent_in_failure_range(2.0));
  EXPECT_THROW(lamberton_gradient_norm(4, 0.5), std::invalid_argument);
}

TEST(RieszAbove, InnerNormConstantInEps) {
  const int n = 6;
  const double s = 1.5;
  const double p = 3.0;
  const std::size_t N = std::size_t{1} << n;
  // g(eps)(eta) = 1_{eps = eta}; D_i acts on eps
  double acc = 0.0;
  for (Mask delta = 0; delta < N; ++delta) {
    double first = -1.0;
    for (Mask eps = 0; eps < N; ++eps) {
      std::vector<double> inner(N);
      for (Mask eta = 0; eta < N; ++eta) {
        double v = 0.0;
        for (int i = 0; i < n; ++i) {
          const Mask flipped = eps ^ (Mask{1} << i);
          const double d = 0.5 * ((eps == eta ? 1.0 : 0.0) - (flipped == eta ? 1.0 : 0.0));
          v += ((delta >> i) & 1 ? -1.0 : 1.0) * d;
        }
        inner[eta] = v;
      }
      const double norm = oracle::lp(inner, s);
      if (first < 0.0) first = norm;
      EXPECT_NEAR(norm, first, 1e-13);
    }
    acc += std::pow(first, p);
  }
  const CounterexampleReport r = riesz_above_vector_check(n, p, s);
  EXPECT_NEAR(r.lhs, std::pow(acc / static_cast<double>(N), 1.0 / p), 1e-12);
}

TEST(RieszAbove, SharesRhsWithLamberton) {
  const CounterexampleReport a = riesz_above_vector_check(8, 3.0, 1.5);
  const CounterexampleReport b = lamberton_ratio(8, 1.5);
  EXPECT_DOUBLE_EQ(a.rhs, b.rhs);
  double prev = 0.0;
  for (int n = 4; n <= 20; n += 2) {
    const double r = riesz_above_vector_check(n, 3.0, 1.5).ratio;
    EXPECT_GT(r, prev);
    prev = r;
  }
  EXPECT_THROW(riesz_above_vector_check(8, 1.5, 1.5), std::invalid_argument);
  EXPECT_THROW(riesz_above_vector_check(8, 3.0, 2.0), std::invalid_argument);
}

TEST(Pisier, OneDimensionalClosedForm) {
  const PisierMinimum m = pisier_min_constant(1);
  EXPECT_NEAR(m.minimum, 3.0 + 2.0 * std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(m.argmin, std::sqrt(2.0) - 1.0, 1e-7);
  EXPECT_NEAR(pisier_argmin_closed_form(1), std::sqrt(2.0) - 1.0, 1e-15);
}

TEST(Pisier, MinimumBelowProbes) {
  for (int n : {2, 10, 1000, 1000000}) {
    const PisierMinimum m = pisier_min_constant(n);
    auto g = [n](double r) { return std::exp(-n * std::log(r)) * (1 + r) / (1 - r); };
    EXPECT_LE(m.minimum, g(1.0 - 1.0 / n) * (1 + 1e-12));
    EXPECT_LE(m.minimum, g(pisier_argmin_closed_form(n)) * (1 + 1e-9));
    EXPECT_NEAR(m.argmin, pisier_argmin_closed_form(n), 1e-6);
    EXPECT_GT(pisier_log_bound(n).minimum, 0.0);
  }
  EXPECT_THROW(pisier_min_constant(0), std::invalid_argument);
}

TEST(GrowthFit, RecoversLogLine) {
  std::vector<double> x{2, 4, 8, 16, 32};
  std::vector<double> y;
  for (double v : x) y.push_back(1.5 + 0.75 * std::log(v));
  const GrowthCurve g = fit_log_growth(x, y);
  EXPECT_NEAR(g.slope, 0.75, 1e-13);
  EXPECT_NEAR(g.intercept, 1.5, 1e-13);
  EXPECT_LT(g.residual, 1e-13);
  EXPECT_NEAR(g.range(), 0.75 * std::log(16.0), 1e-13);
  EXPECT_THROW(fit_log_growth({1, 1}, {0, 0}), std::invalid_argument);
  EXPECT_THROW(fit_log_growth({1}, {0}), std::invalid_argument);
  EXPECT_THROW(fit_log_growth({0, 1}, {0, 0}), std::invalid_argument);
}
