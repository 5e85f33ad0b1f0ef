#include "hcube/inequality.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "hcube/rng.hpp"

namespace hcube {

namespace {

struct CatalogEntry {
  InequalityId id;
  std::string_view name;
  InputShape shape;
  bool exponent;
  bool scalar;
};

constexpr std::array<CatalogEntry, 13> kCatalog{{
    {InequalityId::R_ABOVE, "R_ABOVE", InputShape::single, true, false},
    {InequalityId::RIESZ_LOWER, "RIESZ_LOWER", InputShape::single, false, false},
    {InequalityId::R_BELOW, "R_BELOW", InputShape::family, true, false},
    {InequalityId::R_BELOW_NOD, "R_BELOW_NOD", InputShape::family, true, false},
    {InequalityId::DELTA_FI, "DELTA_FI", InputShape::family, true, false},
    {InequalityId::PISIER, "PISIER", InputShape::single, false, false},
    {InequalityId::F1, "F1", InputShape::bi, false, true},
    {InequalityId::DF, "DF", InputShape::single, false, false},
    {InequalityId::PT_DERIV, "PT_DERIV", InputShape::family, false, false},
    {InequalityId::EPI, "EPI", InputShape::family, false, true},
    {InequalityId::GAMMA_BELOW, "GAMMA_BELOW", InputShape::single, true, false},
    {InequalityId::RIESZ_FULL_BELOW, "RIESZ_FULL_BELOW", InputShape::single, false, false},
    {InequalityId::GRADIENT_PROBE, "GRADIENT_PROBE", InputShape::single, false, true},
}};

const CatalogEntry& entry(InequalityId id) {
  for (const auto& e : kCatalog) {
    if (e.id == id) return e;
  }
  throw std::invalid_argument("unknown inequality id");
}

constexpr std::array<InequalityId, 13> kAllIds{
    InequalityId::R_ABOVE, InequalityId::RIESZ_LOWER, InequalityId::R_BELOW, InequalityId::R_BELOW_NOD,
    InequalityId::DELTA_FI, InequalityId::PISIER, InequalityId::F1, InequalityId::DF,
    InequalityId::PT_DERIV, InequalityId::EPI, InequalityId::GAMMA_BELOW, InequalityId::RIESZ_FULL_BELOW,
    InequalityId::GRADIENT_PROBE};

// Monte-Carlo budget once the sign count exceeds the exact cap.
constexpr std::uint64_t kMcSamples = 4096;

}  // namespace

std::string_view to_string(InequalityId id) { return entry(id).name; }

std::span<const InequalityId> all_inequalities() { return kAllIds; }

std::string catalog_listing() {
  std::string s;
  for (const auto& e : kCatalog) {
    if (!s.empty()) s += ", ";
    s += e.name;
  }
  return s;
}

InequalityId inequality_from_string(std::string_view name) {
  for (const auto& e : kCatalog) {
    if (e.name == name) return e.id;
  }
  throw std::invalid_argument("unknown inequality id '" + std::string(name) + "'; catalog: " + catalog_listing());
}

InputShape input_shape(InequalityId id) { return entry(id).shape; }
bool has_exponent(InequalityId id) { return entry(id).exponent; }
bool scalar_only(InequalityId id) { return entry(id).scalar; }

InequalityInstance InequalityInstance::make(InequalityId id, int n, double p, const MixedNormSpec& inner) {
  InequalityInstance inst;
  inst.id = id;
  inst.n = n;
  inst.p = p;
  inst.inner = inner;
  switch (id) {
    case InequalityId::DELTA_FI:
    case InequalityId::DF:
    case InequalityId::F1:
      inst.a_or_gamma = 1.0;
      break;
    case InequalityId::GAMMA_BELOW:
      inst.a_or_gamma = 0.25;
      break;
    case InequalityId::RIESZ_FULL_BELOW:
    case InequalityId::RIESZ_LOWER:
    case InequalityId::PISIER:
    case InequalityId::GRADIENT_PROBE:
      inst.a_or_gamma = 0.0;
      break;
    default:
      inst.a_or_gamma = 0.5;
      break;
  }
  if (id == InequalityId::EPI) inst.a_or_gamma = 0.5;
  if (id == InequalityId::PT_DERIV) {
    inst.a_or_gamma = 0.0;
    inst.t = 1.0;
  }
  return inst;
}

MixedNormSpec InequalityInstance::norm_spec() const {
  MixedNormSpec s = inner;
  s.p = p;
  return s;
}

void InequalityInstance::validate() const {
  const int cap = input_shape(id) == InputShape::bi ? kMaxDenseDim / 2 : kMaxDenseDim;
  if (n < 1 || n > cap) {
    throw std::invalid_argument("n must lie in [1, " + std::to_string(cap) + "] for " + std::string(to_string(id)));
  }
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("p must lie in [1, inf)");
  norm_spec().validate();
  if (scalar_only(id) && inner.inner != MixedNormSpec::Inner::scalar) {
    throw std::invalid_argument(std::string(to_string(id)) + " is defined for scalar X only");
  }
  if (id == InequalityId::GAMMA_BELOW) {
    if (!(a_or_gamma >= 0.0 && a_or_gamma < 0.5)) throw std::invalid_argument("gamma must lie in [0, 1/2)");
  } else if (has_exponent(id)) {
    if (!(a_or_gamma > 0.0 && a_or_gamma <= 1.0)) throw std::invalid_argument("a must lie in (0, 1]");
  }
  if (id == InequalityId::PT_DERIV && !(t > 0.0 && std::isfinite(t))) {
    throw std::invalid_argument("PT_DERIV needs t > 0");
  }
}

InequalityInput InequalityInput::single(VectorCubeFunction f) {
  InequalityInput in;
  in.shape = InputShape::single;
  in.family.push_back(std::move(f));
  return in;
}

InequalityInput InequalityInput::single(const CubeFunction& f) { return single(VectorCubeFunction(f)); }

InequalityInput InequalityInput::of_family(std::vector<VectorCubeFunction> f) {
  InequalityInput in;
  in.shape = InputShape::family;
  in.family = std::move(f);
  return in;
}

InequalityInput InequalityInput::of_family(std::span<const CubeFunction> f) {
  std::vector<VectorCubeFunction> v;
  v.reserve(f.size());
  for (const auto& g : f) v.emplace_back(g);
  return of_family(std::move(v));
}

InequalityInput InequalityInput::of_bi(BiCubeFunction F) {
  InequalityInput in;
  in.shape = InputShape::bi;
  in.bi = std::move(F);
  return in;
}

std::vector<double> InequalityInput::parameters() const {
  if (shape == InputShape::bi) return {bi.values().begin(), bi.values().end()};
  std::vector<double> x;
  for (const auto& v : family) {
    for (const auto& c : v.components()) x.insert(x.end(), c.coeffs().begin(), c.coeffs().end());
  }
  return x;
}

InequalityInput InequalityInput::with_parameters(std::span<const double> x) const {
  if (x.size() != parameters().size()) throw std::invalid_argument("parameter vector has the wrong length");
  InequalityInput out = *this;
  if (shape == InputShape::bi) {
    out.bi = BiCubeFunction(bi.dim_eps(), bi.dim_delta(), {x.begin(), x.end()});
    return out;
  }
  std::size_t pos = 0;
  for (auto& v : out.family) {
    std::vector<CubeFunction> comps;
    for (const auto& c : v.components()) {
      comps.push_back(CubeFunction::from_coeffs(c.dim(), {x.begin() + static_cast<std::ptrdiff_t>(pos),
                                                          x.begin() + static_cast<std::ptrdiff_t>(pos + c.size())}));
      pos += c.size();
    }
    v = VectorCubeFunction(std::move(comps));
  }
  return out;
}

std::string InequalityInput::digest() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* b = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= b[i];
      h *= 1099511628211ull;
    }
  };
  const auto s = static_cast<int>(shape);
  mix(&s, sizeof s);
  if (shape == InputShape::bi) {
    const int dims[2] = {bi.dim_eps(), bi.dim_delta()};
    mix(dims, sizeof dims);
  } else {
    const std::size_t counts[2] = {family.size(), family.empty() ? 0 : family.front().inner_dim()};
    mix(counts, sizeof counts);
  }
  const std::vector<double> x = parameters();
  mix(x.data(), x.size() * sizeof(double));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

InequalityInput InequalityInput::scaled(double s) const {
  std::vector<double> x = parameters();
  for (double& v : x) v *= s;
  return with_parameters(x);
}

double ratio_of(double lhs, double rhs) {
  if (lhs == 0.0) return 0.0;
  if (rhs == 0.0) return std::numeric_limits<double>::infinity();
  return lhs / rhs;
}

namespace {

CubeFunction level_weighted_derivative_sum(std::span<const CubeFunction> f, double a) {
  // sum_i L^{-a} D_i f_i: coefficient A collects f_i^(A) for i in A, times |A|^{-a}
  const int n = f.front().dim();
  std::vector<double> c(f.front().size(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Mask bit = Mask{1} << i;
    const auto fi = f[i].coeffs();
    for (std::size_t A = 0; A < c.size(); ++A) {
      if (A & bit) c[A] += fi[A];
    }
  }
  for (std::size_t A = 1; A < c.size(); ++A) {
    c[A] *= std::pow(static_cast<double>(__builtin_popcount(static_cast<Mask>(A))), -a);
  }
  c[0] = 0.0;
  return CubeFunction::from_coeffs(n, std::move(c));
}

// Applies sum_i L^{-a} D_i to the family component by component.
VectorCubeFunction derivative_sum(std::span<const VectorCubeFunction> family, double a) {
  const std::size_t R = family.front().inner_dim();
  std::vector<CubeFunction> out;
  std::vector<CubeFunction> slice(family.size());
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t i = 0; i < family.size(); ++i) slice[i] = family[i][r];
    out.push_back(level_weighted_derivative_sum(slice, a));
  }
  return VectorCubeFunction(std::move(out));
}

struct Rad {
  double value;
  double se;
  bool exact;
};

Rad rademacher(std::span<const VectorCubeFunction> g, const InequalityInstance& inst) {
  const MixedNormSpec spec = inst.norm_spec();
  const RademacherConfig cfg = g.size() <= static_cast<std::size_t>(kMaxExactRademacher)
                                   ? RademacherConfig::exact()
                                   : RademacherConfig::monte_carlo(kMcSamples, inst.seed);
  const RademacherAverage r = rademacher_avg(g, inst.p, spec, cfg);
  return {r.value, r.std_error, r.exact};
}

double square_function_norm(std::span<const CubeFunction> g, double p) {
  std::vector<double> acc(g.front().size(), 0.0);
  for (const auto& gi : g) {
    const std::vector<double> v = gi.values();
    for (std::size_t x = 0; x < v.size(); ++x) acc[x] += v[x] * v[x];
  }
  for (double& v : acc) v = std::sqrt(v);
  return lp_norm(acc, p);
}

void check_family(const InequalityInstance& inst, std::span<const VectorCubeFunction> family, std::size_t count) {
  if (family.size() != count) {
    throw std::invalid_argument(std::string(to_string(inst.id)) + " expects " + std::to_string(count) +
                                " operand(s), got " + std::to_string(family.size()));
  }
  for (const auto& f : family) {
    if (f.dim() != inst.n) throw std::invalid_argument("operand dimension does not match n");
    if (f.inner_dim() != inst.inner.inner_count()) {
      throw std::invalid_argument("operand has " + std::to_string(f.inner_dim()) +
                                  " components but the norm expects " +
                                  std::to_string(inst.inner.inner_count()));
    }
  }
}

}  // namespace

RatioReport evaluate(const InequalityInstance& inst, const InequalityInput& input) {
  inst.validate();
  const InputShape shape = input_shape(inst.id);
  if (input.shape != shape) throw std::invalid_argument("input shape does not match " + std::string(to_string(inst.id)));

  RatioReport rep;
  rep.id = inst.id;
  rep.n = inst.n;
  rep.p = inst.p;
  rep.q = inst.inner.inner == MixedNormSpec::Inner::scalar ? 0.0 : inst.inner.q;
  rep.a_or_gamma = inst.a_or_gamma;
  rep.t = inst.t;
  rep.seed = inst.seed;
  rep.digest = input.digest();
  rep.mode = "exact";
  const MixedNormSpec spec = inst.norm_spec();
  const int n = inst.n;

  auto take_rad = [&rep](const Rad& r) {
    if (!r.exact) rep.mode = "monte-carlo";
    rep.rhs_std_error = r.se;
    return r.value;
  };

  switch (shape) {
    case InputShape::single: {
      check_family(inst, input.family, 1);
      const VectorCubeFunction& F = input.family.front();
      auto derivatives = [&](double a) {
        std::vector<VectorCubeFunction> g;
        for (int i = 0; i < n; ++i) {
          g.push_back(F.map([i, a](const CubeFunction& c) {
            CubeFunction d = discrete_derivative(c, i);
            return a == 0.0 ? d : frac_power(d, a).function;
          }));
        }
        return g;
      };
      switch (inst.id) {
        case InequalityId::R_ABOVE:
        case InequalityId::DF: {
          const Rad r = rademacher(derivatives(inst.a_or_gamma), inst);
          rep.lhs = r.value;
          if (!r.exact) rep.mode = "monte-carlo";
          rep.rhs = mixed_norm(F, spec);
          break;
        }
        case InequalityId::RIESZ_LOWER:
        case InequalityId::RIESZ_FULL_BELOW:
        case InequalityId::GAMMA_BELOW: {
          const double power = inst.id == InequalityId::GAMMA_BELOW ? 0.5 - inst.a_or_gamma : 0.5;
          rep.lhs = mixed_norm(F.map([power](const CubeFunction& c) { return frac_power(c, -power).function; }), spec);
          rep.rhs = take_rad(rademacher(derivatives(0.0), inst));
          break;
        }
        case InequalityId::PISIER: {
          rep.lhs = mixed_norm(F.map([](const CubeFunction& c) {
                                 return c - CubeFunction::constant(c.dim(), c.mean());
                               }),
                               spec);
          rep.rhs = take_rad(rademacher(derivatives(0.0), inst));
          break;
        }
        case InequalityId::GRADIENT_PROBE: {
          std::vector<CubeFunction> grad;
          for (int i = 0; i < n; ++i) grad.push_back(discrete_derivative(F[0], i));
          rep.lhs = square_function_norm(grad, inst.p);
          rep.rhs = lp_norm(frac_power(F[0], -1.0 / inst.p).function, inst.p);
          break;
        }
        default:
          throw std::logic_error("catalog shape table out of sync");
      }
      break;
    }
    case InputShape::family: {
      check_family(inst, input.family, static_cast<std::size_t>(n));
      const auto& fam = input.family;
      auto derivative_family = [&]() {
        std::vector<VectorCubeFunction> g;
        for (int i = 0; i < n; ++i) {
          g.push_back(fam[static_cast<std::size_t>(i)].map(
              [i](const CubeFunction& c) { return discrete_derivative(c, i); }));
        }
        return g;
      };
      switch (inst.id) {
        case InequalityId::R_BELOW:
          rep.lhs = mixed_norm(derivative_sum(fam, inst.a_or_gamma), spec);
          rep.rhs = take_rad(rademacher(derivative_family(), inst));
          break;
        case InequalityId::R_BELOW_NOD:
        case InequalityId::DELTA_FI:
          rep.lhs = mixed_norm(derivative_sum(fam, inst.a_or_gamma), spec);
          rep.rhs = take_rad(rademacher(fam, inst));
          break;
        case InequalityId::PT_DERIV: {
          std::vector<VectorCubeFunction> smoothed;
          for (const auto& f : fam) {
            smoothed.push_back(f.map([&inst](const CubeFunction& c) { return heat(c, inst.t); }));
          }
          rep.lhs = mixed_norm(derivative_sum(smoothed, 0.0), spec);
          const double factor = 1.0 / std::sqrt(std::expm1(2.0 * inst.t));
          rep.rhs = factor * take_rad(rademacher(derivative_family(), inst));
          rep.rhs_std_error *= factor;
          break;
        }
        case InequalityId::EPI: {
          rep.lhs = mixed_norm(derivative_sum(fam, 0.5), spec);
          std::vector<CubeFunction> d;
          for (int i = 0; i < n; ++i) d.push_back(discrete_derivative(fam[static_cast<std::size_t>(i)][0], i));
          rep.rhs = square_function_norm(d, inst.p);
          break;
        }
        default:
          throw std::logic_error("catalog shape table out of sync");
      }
      break;
    }
    case InputShape::bi: {
      const BiCubeFunction& F = input.bi;
      if (F.dim_eps() != n || F.dim_delta() != n) {
        throw std::invalid_argument("F1 expects F on {-1,1}^n x {-1,1}^n");
      }
      std::vector<CubeFunction> marg;
      for (int j = 0; j < n; ++j) marg.push_back(F.marginal(j));
      rep.lhs = lp_norm(level_weighted_derivative_sum(marg, 1.0), inst.p);
      rep.rhs = lp_norm(F.values(), inst.p);
      break;
    }
  }
  rep.ratio = ratio_of(rep.lhs, rep.rhs);
  return rep;
}

InequalityInput random_input(const InequalityInstance& inst, std::uint64_t seed, std::uint64_t stream) {
  inst.validate();
  CounterRng rng(seed, stream);
  const int n = inst.n;
  const std::size_t N = std::size_t{1} << n;
  std::vector<double> x;
  InequalityInput tmpl;
  switch (input_shape(inst.id)) {
    case InputShape::bi:
      tmpl = InequalityInput::of_bi(BiCubeFunction(n, n, std::vector<double>(N * N, 0.0)));
      break;
    case InputShape::single:
    case InputShape::family: {
      const std::size_t R = inst.inner.inner_count();
      const VectorCubeFunction zero(std::vector<CubeFunction>(R, CubeFunction(n)));
      tmpl = input_shape(inst.id) == InputShape::single
                 ? InequalityInput::single(zero)
                 : InequalityInput::of_family(std::vector<VectorCubeFunction>(static_cast<std::size_t>(n), zero));
      break;
    }
  }
  x.resize(tmpl.parameters().size());
  double norm2 = 0.0;
  for (double& v : x) {
    v = rng.normal();
    norm2 += v * v;
  }
  const double s = 1.0 / std::sqrt(norm2);
  for (double& v : x) v *= s;
  return tmpl.with_parameters(x);
}

}  // namespace hcube
