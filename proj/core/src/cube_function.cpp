#include "hcube/cube_function.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hcube/krawtchouk.hpp"

namespace hcube {

namespace {

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

int log2_exact(std::size_t x) {
  int k = 0;
  while ((std::size_t{1} << k) < x) ++k;
  return k;
}

void check_dense_dim(int n) {
  if (n < 0 || n > kMaxDenseDim) {
    throw std::invalid_argument("cube dimension " + std::to_string(n) + " outside [0, " +
                                std::to_string(kMaxDenseDim) + "]");
  }
}

void check_coordinate(const CubeFunction& f, int i) {
  if (i < 0 || i >= f.dim()) {
    throw std::out_of_range("coordinate " + std::to_string(i) + " outside [0, " +
                            std::to_string(f.dim()) + ")");
  }
}

void check_same_dim(const CubeFunction& a, const CubeFunction& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("cube functions have different dimensions");
}

}  // namespace

void walsh_hadamard_inplace(std::span<double> data) {
  const std::size_t len = data.size();
  if (!is_power_of_two(len)) {
    throw std::invalid_argument("Walsh-Hadamard transform length " + std::to_string(len) +
                                " is not a power of two");
  }
  for (std::size_t half = 1; half < len; half <<= 1) {
    for (std::size_t block = 0; block < len; block += 2 * half) {
      double* lo = data.data() + block;
      double* hi = lo + half;
      for (std::size_t k = 0; k < half; ++k) {
        const double a = lo[k];
        const double b = hi[k];
        lo[k] = a + b;
        hi[k] = a - b;
      }
    }
  }
}

CubeFunction::CubeFunction(int n) : n_(n) {
  check_dense_dim(n);
  coeffs_.assign(std::size_t{1} << n, 0.0);
}

CubeFunction CubeFunction::from_coeffs(int n, std::vector<double> coeffs) {
  check_dense_dim(n);
  if (coeffs.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("coefficient array length does not match 2^n");
  }
  CubeFunction f;
  f.n_ = n;
  f.coeffs_ = std::move(coeffs);
  return f;
}

CubeFunction CubeFunction::from_values(std::span<const double> values) {
  if (!is_power_of_two(values.size())) {
    throw std::invalid_argument("value array length " + std::to_string(values.size()) +
                                " is not a power of two");
  }
  const int n = log2_exact(values.size());
  check_dense_dim(n);
  std::vector<double> c(values.begin(), values.end());
  walsh_hadamard_inplace(c);
  const double scale = std::ldexp(1.0, -n);
  for (double& x : c) x *= scale;
  return from_coeffs(n, std::move(c));
}

CubeFunction CubeFunction::character(int n, Mask subset, double scale) {
  CubeFunction f(n);
  if (subset >= f.size()) throw std::invalid_argument("character subset outside the cube");
  f.coeffs_[subset] = scale;
  return f;
}

CubeFunction CubeFunction::constant(int n, double value) { return character(n, 0, value); }

std::vector<double> CubeFunction::values() const {
  std::vector<double> v(coeffs_);
  walsh_hadamard_inplace(v);
  return v;
}

double CubeFunction::value_at(Mask point) const {
  double s = 0.0;
  for (std::size_t a = 0; a < coeffs_.size(); ++a) {
    s += coeffs_[a] * character_sign(static_cast<Mask>(a), point);
  }
  return s;
}

CubeFunction& CubeFunction::operator+=(const CubeFunction& other) {
  check_same_dim(*this, other);
  for (std::size_t a = 0; a < coeffs_.size(); ++a) coeffs_[a] += other.coeffs_[a];
  return *this;
}

CubeFunction& CubeFunction::operator-=(const CubeFunction& other) {
  check_same_dim(*this, other);
  for (std::size_t a = 0; a < coeffs_.size(); ++a) coeffs_[a] -= other.coeffs_[a];
  return *this;
}

CubeFunction& CubeFunction::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

CubeFunction multiply(const CubeFunction& f, const CubeFunction& g) {
  check_same_dim(f, g);
  std::vector<double> fv = f.values();
  const std::vector<double> gv = g.values();
  for (std::size_t x = 0; x < fv.size(); ++x) fv[x] *= gv[x];
  return CubeFunction::from_values(fv);
}

CubeFunction discrete_derivative(const CubeFunction& f, int i) {
  check_coordinate(f, i);
  CubeFunction out(f.dim());
  const Mask bit = Mask{1} << i;
  auto src = f.coeffs();
  auto dst = out.coeffs();
  for (std::size_t a = 0; a < src.size(); ++a) {
    if (a & bit) dst[a] = src[a];
  }
  return out;
}

CubeFunction partial_derivative(const CubeFunction& f, int i) {
  check_coordinate(f, i);
  CubeFunction out(f.dim());
  const Mask bit = Mask{1} << i;
  auto src = f.coeffs();
  auto dst = out.coeffs();
  for (std::size_t a = 0; a < src.size(); ++a) {
    if (a & bit) dst[a & ~bit] = src[a];
  }
  return out;
}

CubeFunction apply_multiplier(const CubeFunction& f, std::span<const double> level_table) {
  if (level_table.size() != static_cast<std::size_t>(f.dim() + 1)) {
    throw std::invalid_argument("level multiplier table must have n + 1 entries");
  }
  CubeFunction out = f;
  auto c = out.coeffs();
  for (std::size_t a = 0; a < c.size(); ++a) {
    c[a] *= level_table[static_cast<std::size_t>(__builtin_popcount(static_cast<Mask>(a)))];
  }
  return out;
}

CubeFunction apply_multiplier(const CubeFunction& f, const LevelMultiplier& m) {
  std::vector<double> table(static_cast<std::size_t>(f.dim() + 1));
  for (int k = 0; k <= f.dim(); ++k) table[static_cast<std::size_t>(k)] = m(k);
  return apply_multiplier(f, table);
}

CubeFunction laplacian(const CubeFunction& f) {
  return apply_multiplier(f, [](int k) { return static_cast<double>(k); });
}

CubeFunction heat(const CubeFunction& f, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("heat semigroup time must be nonnegative");
  return apply_multiplier(f, [t](int k) { return std::exp(-t * k); });
}

FracPowerResult frac_power(const CubeFunction& f, double a) {
  FracPowerResult r;
  r.function = apply_multiplier(f, [a](int k) { return k == 0 ? 0.0 : std::pow(k, -a); });
  r.mean_annihilated = a > 0.0 && f.mean() != 0.0;
  return r;
}

CubeFunction riesz(const CubeFunction& f, int i) {
  return discrete_derivative(frac_power(f, 0.5).function, i);
}

CubeFunction group_translate(const CubeFunction& f, Mask eta_point) {
  CubeFunction out = f;
  auto c = out.coeffs();
  for (std::size_t a = 0; a < c.size(); ++a) c[a] *= character_sign(static_cast<Mask>(a), eta_point);
  return out;
}

CubeFunction group_translate(const CubeFunction& f, std::span<const int> eta) {
  if (eta.size() != static_cast<std::size_t>(f.dim())) {
    throw std::invalid_argument("sign vector length does not match the cube dimension");
  }
  Mask point = 0;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (eta[i] == -1) {
      point |= Mask{1} << i;
    } else if (eta[i] != 1) {
      throw std::invalid_argument("sign vector entries must be +1 or -1");
    }
  }
  return group_translate(f, point);
}

CubeFunction permute_coordinates(const CubeFunction& f, std::span<const int> perm) {
  const int n = f.dim();
  if (perm.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("permutation length does not match the cube dimension");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)]) {
      throw std::invalid_argument("not a permutation of the coordinates");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  CubeFunction out(n);
  auto dst = out.coeffs();
  for (std::size_t b = 0; b < dst.size(); ++b) {
    Mask image = 0;
    for (int i = 0; i < n; ++i) {
      if (b & (std::size_t{1} << i)) image |= Mask{1} << perm[static_cast<std::size_t>(i)];
    }
    dst[b] = f.coeff(image);
  }
  return out;
}

RadialProfile::RadialProfile(int n, std::vector<double> v) : n_(n), v_(std::move(v)) {
  if (n < 0) throw std::invalid_argument("radial profile dimension must be nonnegative");
  if (v_.size() != static_cast<std::size_t>(n) + 1) {
    throw std::invalid_argument("radial profile needs n + 1 values");
  }
}

CubeFunction RadialProfile::to_dense() const {
  check_dense_dim(n_);
  std::vector<double> vals(std::size_t{1} << n_);
  for (std::size_t x = 0; x < vals.size(); ++x) {
    vals[x] = v_[static_cast<std::size_t>(__builtin_popcount(static_cast<Mask>(x)))];
  }
  return CubeFunction::from_values(vals);
}

std::vector<double> radial_level_coefficients(const RadialProfile& p) {
  // w(k) = E[f eps^A] = sum_d b(d) v(d) kappa_k(d), kappa = K / C(n,k).
  const int n = p.dim();
  const KrawtchoukTable table(n);
  const std::vector<double> pmf = binomial_half_pmf(n);
  std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int d = 0; d <= n; ++d) s += pmf[static_cast<std::size_t>(d)] * p[d] * table.normalized(k, d);
    w[static_cast<std::size_t>(k)] = s;
  }
  return w;
}

RadialProfile radial_apply_multiplier(const RadialProfile& p, const LevelMultiplier& m) {
  // f(d) = sum_k w(k) K_k(d) = sum_k [C(n,k) w(k)] kappa_k(d). The bracket is
  // W(k) = sum_d C(n,k) b(d) v(d) kappa_k(d), formed in log space.
  const int n = p.dim();
  const KrawtchoukTable table(n);
  const std::vector<double> pmf = binomial_half_pmf(n);
  std::vector<double> level_mass(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    const double mk = m(k);
    if (mk == 0.0) continue;
    const double log_c = log_binomial(n, k);
    double s = 0.0;
    for (int d = 0; d <= n; ++d) {
      const double b = pmf[static_cast<std::size_t>(d)];
      if (b == 0.0) continue;
      s += std::exp(log_c + std::log(b)) * p[d] * table.normalized(k, d);
    }
    level_mass[static_cast<std::size_t>(k)] = mk * s;
  }
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
  for (int d = 0; d <= n; ++d) {
    double s = 0.0;
    for (int k = 0; k <= n; ++k) s += level_mass[static_cast<std::size_t>(k)] * table.normalized(k, d);
    out[static_cast<std::size_t>(d)] = s;
  }
  return RadialProfile(n, std::move(out));
}

VectorCubeFunction::VectorCubeFunction(std::vector<CubeFunction> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("vector function needs at least one component");
  for (const auto& c : components_) {
    if (c.dim() != components_.front().dim()) {
      throw std::invalid_argument("vector function components have different dimensions");
    }
  }
}

VectorCubeFunction::VectorCubeFunction(CubeFunction scalar)
    : VectorCubeFunction(std::vector<CubeFunction>{std::move(scalar)}) {}

VectorCubeFunction VectorCubeFunction::map(
    const std::function<CubeFunction(const CubeFunction&)>& op) const {
  std::vector<CubeFunction> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(op(c));
  return VectorCubeFunction(std::move(out));
}

VectorCubeFunction& VectorCubeFunction::operator+=(const VectorCubeFunction& other) {
  if (other.components_.size() != components_.size()) {
    throw std::invalid_argument("vector functions have different inner dimensions");
  }
  for (std::size_t r = 0; r < components_.size(); ++r) components_[r] += other.components_[r];
  return *this;
}

VectorCubeFunction& VectorCubeFunction::operator*=(double s) {
  for (auto& c : components_) c *= s;
  return *this;
}

BiCubeFunction::BiCubeFunction(int n_eps, int n_delta, std::vector<double> values)
    : n_eps_(n_eps), n_delta_(n_delta), values_(std::move(values)) {
  if (n_eps < 0 || n_delta < 0 || n_eps + n_delta > kMaxDenseDim) {
    throw std::invalid_argument("bi-cube dimensions exceed the dense limit");
  }
  if (values_.size() != (std::size_t{1} << (n_eps + n_delta))) {
    throw std::invalid_argument("bi-cube value array length does not match 2^(n_eps + n_delta)");
  }
}

BiCubeFunction BiCubeFunction::linear_in_delta(std::span<const CubeFunction> family) {
  if (family.empty()) throw std::invalid_argument("empty family");
  const int n_eps = family.front().dim();
  const int n_delta = static_cast<int>(family.size());
  std::vector<std::vector<double>> vals;
  vals.reserve(family.size());
  for (const auto& f : family) {
    if (f.dim() != n_eps) throw std::invalid_argument("family members have different dimensions");
    vals.push_back(f.values());
  }
  std::vector<double> out(std::size_t{1} << (n_eps + n_delta), 0.0);
  for (std::size_t x = 0; x < (std::size_t{1} << n_eps); ++x) {
    for (std::size_t y = 0; y < (std::size_t{1} << n_delta); ++y) {
      double s = 0.0;
      for (int j = 0; j < n_delta; ++j) {
        const double sign = (y >> j) & 1 ? -1.0 : 1.0;
        s += sign * vals[static_cast<std::size_t>(j)][x];
      }
      out[(x << n_delta) | y] = s;
    }
  }
  return BiCubeFunction(n_eps, n_delta, std::move(out));
}

BiCubeFunction BiCubeFunction::translates(const CubeFunction& f) {
  const int n = f.dim();
  const std::vector<double> v = f.values();
  std::vector<double> out(std::size_t{1} << (2 * n));
  for (std::size_t x = 0; x < v.size(); ++x) {
    for (std::size_t y = 0; y < v.size(); ++y) out[(x << n) | y] = v[x ^ y];
  }
  return BiCubeFunction(n, n, std::move(out));
}

CubeFunction BiCubeFunction::marginal(int j) const {
  if (j < 0 || j >= n_delta_) throw std::out_of_range("marginal index outside the delta cube");
  const std::size_t rows = std::size_t{1} << n_eps_;
  const std::size_t cols = std::size_t{1} << n_delta_;
  std::vector<double> out(rows, 0.0);
  for (std::size_t x = 0; x < rows; ++x) {
    double s = 0.0;
    for (std::size_t y = 0; y < cols; ++y) {
      s += ((y >> j) & 1 ? -1.0 : 1.0) * values_[(x << n_delta_) | y];
    }
    out[x] = s / static_cast<double>(cols);
  }
  return CubeFunction::from_values(out);
}

CubeFunction BiCubeFunction::slice_eps(Mask eps_point) const {
  const std::size_t cols = std::size_t{1} << n_delta_;
  const auto begin = values_.begin() + static_cast<std::ptrdiff_t>((std::size_t{eps_point} << n_delta_));
  std::vector<double> out(begin, begin + static_cast<std::ptrdiff_t>(cols));
  return CubeFunction::from_values(out);
}

CubeFunction BiCubeFunction::slice_delta(Mask delta_point) const {
  const std::size_t rows = std::size_t{1} << n_eps_;
  std::vector<double> out(rows);
  for (std::size_t x = 0; x < rows; ++x) out[x] = values_[(x << n_delta_) | delta_point];
  return CubeFunction::from_values(out);
}

}  // namespace hcube
