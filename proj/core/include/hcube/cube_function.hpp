#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hcube {

/// Largest dimension supported by the dense (2^n storage) representation.
inline constexpr int kMaxDenseDim = 24;

/// Bitmask over coordinates. As a subset A it selects the character
/// eps^A = prod_{i in A} eps_i; as a point it marks the coordinates equal
/// to -1 (bit i clear means eps_i = +1). Bit i is coordinate i, zero-based.
using Mask = std::uint32_t;

/// Spectral multiplier indexed by Walsh level |A| in {0..n}.
using LevelMultiplier = std::function<double(int level)>;

/// Sign of the character eps^A at the point x: (-1)^{|A & x|}.
inline double character_sign(Mask subset, Mask point) {
  return (__builtin_popcount(subset & point) & 1) ? -1.0 : 1.0;
}

/// In-place unnormalized Walsh-Hadamard butterfly. Length must be a power
/// of two; throws std::invalid_argument otherwise.
void walsh_hadamard_inplace(std::span<double> data);

/// Real function on {-1,1}^n held by its Walsh coefficients, ordered by
/// subset bitmask (little-endian, bit i is coordinate i).
class CubeFunction {
 public:
  CubeFunction() = default;
  /// Zero function on {-1,1}^n.
  explicit CubeFunction(int n);

  static CubeFunction from_coeffs(int n, std::vector<double> coeffs);
  /// Analysis: coeffs[A] = 2^{-n} sum_x f(x) eps^A(x). O(n 2^n).
  static CubeFunction from_values(std::span<const double> values);
  static CubeFunction character(int n, Mask subset, double scale = 1.0);
  static CubeFunction constant(int n, double value);

  int dim() const { return n_; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }
  double coeff(Mask subset) const { return coeffs_[subset]; }
  double mean() const { return coeffs_.empty() ? 0.0 : coeffs_[0]; }

  /// Synthesis: values[x] = f(x). O(n 2^n).
  std::vector<double> values() const;
  /// Single point evaluation, O(2^n).
  double value_at(Mask point) const;

  CubeFunction& operator+=(const CubeFunction& other);
  CubeFunction& operator-=(const CubeFunction& other);
  CubeFunction& operator*=(double s);
  friend CubeFunction operator+(CubeFunction a, const CubeFunction& b) { return a += b; }
  friend CubeFunction operator-(CubeFunction a, const CubeFunction& b) { return a -= b; }
  friend CubeFunction operator*(CubeFunction a, double s) { return a *= s; }
  friend CubeFunction operator*(double s, CubeFunction a) { return a *= s; }

 private:
  int n_ = 0;
  std::vector<double> coeffs_;
};

/// Pointwise product, computed through values.
CubeFunction multiply(const CubeFunction& f, const CubeFunction& g);

/// D_i = eps_i d_i: keeps the coefficients of subsets containing i.
CubeFunction discrete_derivative(const CubeFunction& f, int i);
/// d_i: moves f^(A) eps^A to eps^{A \ i} for A containing i.
CubeFunction partial_derivative(const CubeFunction& f, int i);

/// f^(A) -> m(|A|) f^(A).
CubeFunction apply_multiplier(const CubeFunction& f, const LevelMultiplier& m);
CubeFunction apply_multiplier(const CubeFunction& f, std::span<const double> level_table);

/// L = sum_j D_j, eigenvalue |A| on eps^A (nonnegative convention).
CubeFunction laplacian(const CubeFunction& f);
/// P_t = exp(-tL). Requires t >= 0.
CubeFunction heat(const CubeFunction& f, double t);

struct FracPowerResult {
  CubeFunction function;
  /// Set when a > 0 and the input had a nonzero mean, which was dropped.
  bool mean_annihilated = false;
};

/// L^{-a} defined spectrally: level 0 -> 0, level k -> k^{-a}.
FracPowerResult frac_power(const CubeFunction& f, double a);
/// Riesz transform R_i = D_i L^{-1/2}.
CubeFunction riesz(const CubeFunction& f, int i);

/// eps -> f(eps * eta). eta has entries in {-1,+1}.
CubeFunction group_translate(const CubeFunction& f, std::span<const int> eta);
/// Same translation with eta encoded as a point mask.
CubeFunction group_translate(const CubeFunction& f, Mask eta_point);

/// Coordinate relabeling: result(x) = f(x o perm), i.e. coordinate i of the
/// result reads coordinate perm[i] of f.
CubeFunction permute_coordinates(const CubeFunction& f, std::span<const int> perm);

/// Function of Hamming weight d = #{i : eps_i = -1} in {0..n}.
class RadialProfile {
 public:
  RadialProfile() = default;
  RadialProfile(int n, std::vector<double> v);

  int dim() const { return n_; }
  std::span<const double> values() const { return v_; }
  double operator[](int d) const { return v_[static_cast<std::size_t>(d)]; }

  /// Dense expansion, requires n <= kMaxDenseDim.
  CubeFunction to_dense() const;

 private:
  int n_ = 0;
  std::vector<double> v_;
};

/// Walsh coefficient w(k) shared by every |A| = k of a radial function.
std::vector<double> radial_level_coefficients(const RadialProfile& p);
/// Profile of sum_k m(k) w(k) K_k(d).
RadialProfile radial_apply_multiplier(const RadialProfile& p, const LevelMultiplier& m);

/// R-tuple of cube functions on a common cube.
class VectorCubeFunction {
 public:
  VectorCubeFunction() = default;
  explicit VectorCubeFunction(std::vector<CubeFunction> components);
  explicit VectorCubeFunction(CubeFunction scalar);

  int dim() const { return components_.empty() ? 0 : components_.front().dim(); }
  std::size_t inner_dim() const { return components_.size(); }
  const CubeFunction& operator[](std::size_t r) const { return components_[r]; }
  std::span<const CubeFunction> components() const { return components_; }

  /// Applies op to every component.
  VectorCubeFunction map(const std::function<CubeFunction(const CubeFunction&)>& op) const;

  VectorCubeFunction& operator+=(const VectorCubeFunction& other);
  VectorCubeFunction& operator*=(double s);

 private:
  std::vector<CubeFunction> components_;
};

/// F(eps, delta) on {-1,1}^{n_eps} x {-1,1}^{n_delta}, stored by values at
/// index (eps_point << n_delta) | delta_point.
class BiCubeFunction {
 public:
  BiCubeFunction() = default;
  BiCubeFunction(int n_eps, int n_delta, std::vector<double> values);

  /// F(eps, delta) = sum_j delta_j F_j(eps); family size must equal n_delta.
  static BiCubeFunction linear_in_delta(std::span<const CubeFunction> family);
  /// F(eps, eta) = f(eps * eta).
  static BiCubeFunction translates(const CubeFunction& f);

  int dim_eps() const { return n_eps_; }
  int dim_delta() const { return n_delta_; }
  std::span<const double> values() const { return values_; }
  double at(Mask eps_point, Mask delta_point) const {
    return values_[(static_cast<std::size_t>(eps_point) << n_delta_) | delta_point];
  }

  /// F_j(eps) = E_delta[delta_j F(eps, delta)].
  CubeFunction marginal(int j) const;
  /// The function delta -> F(eps_point, delta).
  CubeFunction slice_eps(Mask eps_point) const;
  /// The function eps -> F(eps, delta_point).
  CubeFunction slice_delta(Mask delta_point) const;

 private:
  int n_eps_ = 0;
  int n_delta_ = 0;
  std::vector<double> values_;
};

}  // namespace hcube
