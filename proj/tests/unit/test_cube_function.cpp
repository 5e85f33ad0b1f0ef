#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "hcube/cube_function.hpp"
#include "oracles.hpp"

using namespace hcube;

TEST(CubeFunction, TwoPointExpansion) {
  const std::vector<double> v{1.0, 0.0};
  const CubeFunction f = CubeFunction::from_values(v);
  EXPECT_DOUBLE_EQ(f.coeff(0), 0.5);
  EXPECT_DOUBLE_EQ(f.coeff(1), 0.5);
}

TEST(CubeFunction, TransformRoundTrip) {
  CounterRng rng(1, 0);
  for (int n : {0, 1, 3, 7, 10}) {
    const CubeFunction f = oracle::random_function(n, rng);
    const std::vector<double> v = f.values();
    const CubeFunction g = CubeFunction::from_values(v);
    for (std::size_t A = 0; A < f.size(); ++A) EXPECT_NEAR(f.coeff(static_cast<Mask>(A)), g.coeff(static_cast<Mask>(A)), 1e-12);
  }
}

TEST(CubeFunction, MatchesDirectCharacterSums) {
  CounterRng rng(2, 0);
  for (int n : {3, 6}) {
    std::vector<double> v(std::size_t{1} << n);
    for (double& x : v) x = rng.normal();
    const CubeFunction f = CubeFunction::from_values(v);
    const std::vector<double> want = oracle::coeffs_from_values(v);
    for (std::size_t A = 0; A < v.size(); ++A) EXPECT_NEAR(f.coeff(static_cast<Mask>(A)), want[A], 1e-13);
    EXPECT_LT(oracle::max_abs_diff(f.values(), oracle::values_from_coeffs(want)), 1e-12);
  }
}

TEST(CubeFunction, ValueAtAgreesWithValues) {
  CounterRng rng(3, 0);
  const CubeFunction f = oracle::random_function(5, rng);
  const auto v = f.values();
  for (Mask x = 0; x < 32; ++x) EXPECT_NEAR(f.value_at(x), v[x], 1e-12);
}

TEST(CubeFunction, RejectsBadInput) {
  EXPECT_THROW(CubeFunction::from_values(std::vector<double>(3, 0.0)), std::invalid_argument);
  EXPECT_THROW(CubeFunction::from_coeffs(2, std::vector<double>(3, 0.0)), std::invalid_argument);
  EXPECT_THROW(CubeFunction(-1), std::invalid_argument);
  CubeFunction f(2);
  EXPECT_THROW(discrete_derivative(f, 2), std::out_of_range);
  EXPECT_THROW(discrete_derivative(f, -1), std::out_of_range);
  CubeFunction g(3);
  EXPECT_THROW(f += g, std::invalid_argument);
}

TEST(Derivative, CharacterAction) {
  const CubeFunction f = CubeFunction::character(3, 0b011);
  const CubeFunction d0 = discrete_derivative(f, 0);
  const CubeFunction d2 = discrete_derivative(f, 2);
  EXPECT_DOUBLE_EQ(d0.coeff(0b011), 1.0);
  for (std::size_t A = 0; A < 8; ++A) EXPECT_DOUBLE_EQ(d2.coeff(static_cast<Mask>(A)), 0.0);
  const CubeFunction p0 = partial_derivative(f, 0);
  EXPECT_DOUBLE_EQ(p0.coeff(0b010), 1.0);
  EXPECT_DOUBLE_EQ(p0.coeff(0b011), 0.0);
}

TEST(Derivative, PointwiseOracleAndIdempotence) {
  CounterRng rng(4, 0);
  const int n = 4;
  for (int trial = 0; trial < 5; ++trial) {
    const CubeFunction f = oracle::random_function(n, rng);
    for (int i = 0; i < n; ++i) {
      const CubeFunction d = discrete_derivative(f, i);
      EXPECT_LT(oracle::max_abs_diff(d.values(), oracle::discrete_derivative(f.values(), i)), 1e-12);
      const CubeFunction dd = discrete_derivative(d, i);
      EXPECT_LT(oracle::max_abs_diff(dd.values(), d.values()), 1e-14);
      // D_i = eps_i d_i
      const auto pv = partial_derivative(f, i).values();
      const auto dv = d.values();
      for (Mask x = 0; x < (Mask{1} << n); ++x) {
        const double eps = (x >> i) & 1 ? -1.0 : 1.0;
        EXPECT_NEAR(dv[x], eps * pv[x], 1e-12);
      }
    }
  }
}

TEST(Multiplier, HeatAndRieszOnCharacters) {
  const int n = 4;
  for (Mask A = 0; A < 16; ++A) {
    const CubeFunction f = CubeFunction::character(n, A);
    const int k = std::popcount(A);
    EXPECT_NEAR(heat(f, 0.7).coeff(A), std::exp(-0.7 * k), 1e-15);
    EXPECT_DOUBLE_EQ(heat(f, 0.0).coeff(A), 1.0);
    for (int i = 0; i < n; ++i) {
      const double want = (A >> i) & 1 ? 1.0 / std::sqrt(static_cast<double>(k)) : 0.0;
      EXPECT_NEAR(riesz(f, i).coeff(A), want, 1e-15);
    }
    EXPECT_NEAR(laplacian(f).coeff(A), k, 1e-15);
  }
  EXPECT_THROW(heat(CubeFunction(2), -1.0), std::invalid_argument);
}

TEST(Multiplier, HeatMatchesProductKernel) {
  CounterRng rng(5, 0);
  const int n = 6;
  const CubeFunction f = oracle::random_function(n, rng);
  for (double t : {0.05, 0.5, 3.0}) {
    EXPECT_LT(oracle::max_abs_diff(heat(f, t).values(), oracle::heat(f.values(), n, t)), 1e-12);
  }
}

TEST(Multiplier, ParsevalHalfLaplacian) {
  CounterRng rng(6, 0);
  const int n = 6;
  CubeFunction f = oracle::random_function(n, rng);
  f.coeffs()[0] = 0.0;
  const FracPowerResult half = frac_power(f, -0.5);
  EXPECT_FALSE(half.mean_annihilated);
  double lhs = 0.0;
  for (double x : half.function.values()) lhs += x * x;
  lhs /= 64.0;
  double rhs = 0.0;
  for (int i = 0; i < n; ++i) {
    for (double x : oracle::discrete_derivative(f.values(), i)) rhs += x * x;
  }
  rhs /= 64.0;
  double spectral = 0.0;
  for (Mask A = 0; A < 64; ++A) spectral += std::popcount(A) * f.coeff(A) * f.coeff(A);
  EXPECT_NEAR(lhs, spectral, 1e-11);
  EXPECT_NEAR(rhs, spectral, 1e-11);
}

TEST(Multiplier, FracPowerFlagsDroppedMean) {
  const CubeFunction f = CubeFunction::constant(3, 2.0) + CubeFunction::character(3, 0b101);
  const FracPowerResult r = frac_power(f, 0.5);
  EXPECT_TRUE(r.mean_annihilated);
  EXPECT_DOUBLE_EQ(r.function.coeff(0), 0.0);
  EXPECT_NEAR(r.function.coeff(0b101), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_FALSE(frac_power(f, -0.5).mean_annihilated);
  // L^{-1} L = identity on mean-zero functions
  const CubeFunction g = CubeFunction::character(3, 0b111) * 3.0;
  EXPECT_NEAR(frac_power(laplacian(g), 1.0).function.coeff(0b111), 3.0, 1e-14);
}

TEST(Translate, IdentityIndicatorAndEquivariance) {
  CounterRng rng(7, 0);
  const int n = 5;
  const CubeFunction f = oracle::random_function(n, rng);
  const std::vector<int> ones(n, 1);
  EXPECT_LT(oracle::max_abs_diff(group_translate(f, ones).values(), f.values()), 1e-13);

  // 1_{eps = 1} translated by eta is 1_{eps = eta}
  std::vector<double> ind(32, 0.0);
  ind[0] = 1.0;
  const CubeFunction one = CubeFunction::from_values(ind);
  const std::vector<int> eta{1, -1, -1, 1, -1};
  const auto tv = group_translate(one, eta).values();
  for (Mask x = 0; x < 32; ++x) EXPECT_NEAR(tv[x], x == 0b10110 ? 1.0 : 0.0, 1e-14);

  for (Mask e = 0; e < 32; e += 7) {
    for (int i = 0; i < n; ++i) {
      const auto a = discrete_derivative(group_translate(f, e), i).values();
      const auto b = group_translate(discrete_derivative(f, i), e).values();
      EXPECT_LT(oracle::max_abs_diff(a, b), 1e-12);
    }
  }
  EXPECT_THROW(group_translate(f, std::vector<int>{1, 0, 1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(group_translate(f, std::vector<int>{1, 1}), std::invalid_argument);
}

TEST(Translate, PermuteCoordinates) {
  const CubeFunction f = CubeFunction::character(3, 0b001);
  const std::vector<int> perm{2, 0, 1};
  const CubeFunction g = permute_coordinates(f, perm);
  // result(x) reads coordinate perm[i] of f at position i; eps_0 of f sits at position 1
  EXPECT_NEAR(g.coeff(0b010), 1.0, 1e-15);
  EXPECT_THROW(permute_coordinates(f, std::vector<int>{0, 0, 1}), std::invalid_argument);
}

TEST(Radial, DenseAgreementAndMultiplier) {
  CounterRng rng(8, 0);
  const int n = 10;
  std::vector<double> v(n + 1);
  for (double& x : v) x = rng.normal();
  const RadialProfile p(n, v);
  const CubeFunction dense = p.to_dense();
  const auto dv = dense.values();
  for (Mask x = 0; x < (Mask{1} << n); ++x) EXPECT_NEAR(dv[x], v[std::popcount(x)], 1e-12);

  const LevelMultiplier root = [](int k) { return std::sqrt(static_cast<double>(k)); };
  const RadialProfile q = radial_apply_multiplier(p, root);
  const auto want = apply_multiplier(dense, root).values();
  for (Mask x = 0; x < (Mask{1} << n); ++x) EXPECT_NEAR(q[std::popcount(x)], want[x], 1e-9);

  const RadialProfile same = radial_apply_multiplier(p, [](int) { return 1.0; });
  for (int d = 0; d <= n; ++d) EXPECT_NEAR(same[d], v[d], 1e-12);

  const RadialProfile flat(n, std::vector<double>(n + 1, 2.5));
  const RadialProfile hf = radial_apply_multiplier(flat, [](int k) { return std::exp(-0.3 * k); });
  for (int d = 0; d <= n; ++d) EXPECT_NEAR(hf[d], 2.5, 1e-12);

  const auto lc = radial_level_coefficients(p);
  for (Mask A = 0; A < (Mask{1} << n); A += 37) EXPECT_NEAR(dense.coeff(A), lc[std::popcount(A)], 1e-12);
  EXPECT_THROW(RadialProfile(3, std::vector<double>(3)), std::invalid_argument);
}

TEST(BiCube, TranslatesAndLinearInDelta) {
  CounterRng rng(9, 0);
  const int n = 3;
  const CubeFunction f = oracle::random_function(n, rng);
  const BiCubeFunction F = BiCubeFunction::translates(f);
  const auto fv = f.values();
  for (Mask e = 0; e < 8; ++e) {
    for (Mask d = 0; d < 8; ++d) EXPECT_NEAR(F.at(e, d), fv[e ^ d], 1e-13);
  }
  std::vector<CubeFunction> fam;
  for (int j = 0; j < n; ++j) fam.push_back(oracle::random_function(n, rng));
  const BiCubeFunction G = BiCubeFunction::linear_in_delta(fam);
  for (int j = 0; j < n; ++j) {
    EXPECT_LT(oracle::max_abs_diff(G.marginal(j).values(), fam[static_cast<std::size_t>(j)].values()), 1e-12);
  }
  const auto s = G.slice_eps(5).values();
  for (Mask d = 0; d < 8; ++d) EXPECT_NEAR(s[d], G.at(5, d), 1e-14);
}
