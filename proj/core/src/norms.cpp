#include "hcube/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hcube/krawtchouk.hpp"
#include "hcube/rng.hpp"

namespace hcube {

namespace {

bool valid_exponent(double p) { return p >= 1.0 && !std::isnan(p); }

// (sum w_i |x_i|^p)^{1/p} with weights summing to `total_weight`, scaled
// by the running maximum to avoid overflow.
double powered_mean(std::span<const double> x, double p, double weight_each) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  if (std::isinf(p)) return m;
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(weight_each * s, 1.0 / p);
}

}  // namespace

MixedNormSpec MixedNormSpec::scalar(double p) {
  MixedNormSpec s;
  s.p = p;
  return s;
}

MixedNormSpec MixedNormSpec::ell(double p, double q, int components) {
  return MixedNormSpec{p, Inner::ell_q, q, components};
}

MixedNormSpec MixedNormSpec::lq_cube(double p, double q, int m) { return MixedNormSpec{p, Inner::lq_cube, q, m}; }

MixedNormSpec MixedNormSpec::linf_cube(double p, int m) {
  return lq_cube(p, std::numeric_limits<double>::infinity(), m);
}

std::size_t MixedNormSpec::inner_count() const {
  switch (inner) {
    case Inner::scalar:
      return 1;
    case Inner::ell_q:
      return static_cast<std::size_t>(inner_dim);
    case Inner::lq_cube:
      return std::size_t{1} << inner_dim;
  }
  return 1;
}

void MixedNormSpec::validate() const {
  if (!valid_exponent(p)) throw std::invalid_argument("outer exponent p must lie in [1, inf]");
  if (inner != Inner::scalar && !valid_exponent(q)) {
    throw std::invalid_argument("inner exponent q must lie in [1, inf]");
  }
  if (inner == Inner::ell_q && inner_dim < 1) throw std::invalid_argument("l^q_R needs R >= 1");
  if (inner == Inner::lq_cube && (inner_dim < 0 || inner_dim > kMaxDenseDim)) {
    throw std::invalid_argument("inner cube dimension out of range");
  }
}

std::string MixedNormSpec::describe() const {
  std::ostringstream os;
  os << "L^" << p;
  switch (inner) {
    case Inner::scalar:
      break;
    case Inner::ell_q:
      os << "(l^" << q << "_" << inner_dim << ")";
      break;
    case Inner::lq_cube:
      os << "(L^" << q << " cube " << inner_dim << ")";
      break;
  }
  return os.str();
}

double inner_norm(std::span<const double> x, const MixedNormSpec& spec) {
  switch (spec.inner) {
    case MixedNormSpec::Inner::scalar:
      return std::abs(x[0]);
    case MixedNormSpec::Inner::ell_q:
      return powered_mean(x, spec.q, 1.0);
    case MixedNormSpec::Inner::lq_cube:
      return powered_mean(x, spec.q, 1.0 / static_cast<double>(x.size()));
  }
  return 0.0;
}

SampledField::SampledField(std::size_t points, std::size_t inner, std::vector<double> data)
    : points_(points), inner_(inner), data_(std::move(data)) {
  if (data_.size() != points_ * inner_) throw std::invalid_argument("field data size mismatch");
}

SampledField SampledField::of(const CubeFunction& f) {
  std::vector<double> v = f.values();
  const std::size_t n = v.size();
  return SampledField(n, 1, std::move(v));
}

SampledField SampledField::of(const VectorCubeFunction& f) {
  const std::size_t inner = f.inner_dim();
  const std::size_t points = f[0].size();
  std::vector<double> data(points * inner);
  for (std::size_t r = 0; r < inner; ++r) {
    const std::vector<double> v = f[r].values();
    for (std::size_t x = 0; x < points; ++x) data[x * inner + r] = v[x];
  }
  return SampledField(points, inner, std::move(data));
}

SampledField SampledField::of(const BiCubeFunction& f) {
  const std::size_t points = std::size_t{1} << f.dim_eps();
  const std::size_t inner = std::size_t{1} << f.dim_delta();
  return SampledField(points, inner, std::vector<double>(f.values().begin(), f.values().end()));
}

double lp_norm(std::span<const double> values, double p) {
  if (!valid_exponent(p)) throw std::invalid_argument("L^p exponent must lie in [1, inf]");
  if (values.empty()) return 0.0;
  return powered_mean(values, p, 1.0 / static_cast<double>(values.size()));
}

double lp_norm(const CubeFunction& f, double p) { return lp_norm(f.values(), p); }

double lp_norm(const RadialProfile& f, double p) {
  if (!valid_exponent(p)) throw std::invalid_argument("L^p exponent must lie in [1, inf]");
  const auto v = f.values();
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  if (m == 0.0) return 0.0;
  if (std::isinf(p)) return m;
  const std::vector<double> pmf = binomial_half_pmf(f.dim());
  double s = 0.0;
  for (std::size_t d = 0; d < v.size(); ++d) s += pmf[d] * std::pow(std::abs(v[d]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double mixed_norm(const SampledField& field, const MixedNormSpec& spec) {
  spec.validate();
  if (field.inner() != spec.inner_count()) {
    throw std::invalid_argument("operand inner size " + std::to_string(field.inner()) + " does not match " +
                                spec.describe());
  }
  std::vector<double> per_point(field.points());
  for (std::size_t x = 0; x < field.points(); ++x) per_point[x] = inner_norm(field.row(x), spec);
  return lp_norm(per_point, spec.p);
}

double mixed_norm(const VectorCubeFunction& f, const MixedNormSpec& spec) {
  return mixed_norm(SampledField::of(f), spec);
}

double mixed_norm(const BiCubeFunction& f, const MixedNormSpec& spec) {
  if (spec.inner == MixedNormSpec::Inner::scalar) {
    spec.validate();
    return lp_norm(f.values(), spec.p);
  }
  if (spec.inner != MixedNormSpec::Inner::lq_cube || spec.inner_dim != f.dim_delta()) {
    throw std::invalid_argument("bi-cube mixed norm needs an L^q inner norm over the delta cube");
  }
  return mixed_norm(SampledField::of(f), spec);
}

namespace {

void check_operands(std::span<const SampledField> g, const MixedNormSpec& spec) {
  if (g.empty()) throw std::invalid_argument("Rademacher average needs at least one operand");
  for (const auto& f : g) {
    if (f.points() != g.front().points() || f.inner() != g.front().inner()) {
      throw std::invalid_argument("Rademacher operands have different shapes");
    }
  }
  if (g.front().inner() != spec.inner_count()) {
    throw std::invalid_argument("operand inner size does not match " + spec.describe());
  }
}

double field_norm(std::span<const double> data, std::size_t points, std::size_t inner,
                  const MixedNormSpec& spec, std::vector<double>& scratch) {
  scratch.resize(points);
  for (std::size_t x = 0; x < points; ++x) scratch[x] = inner_norm(data.subspan(x * inner, inner), spec);
  return lp_norm(scratch, spec.p);
}

}  // namespace

RademacherAverage rademacher_avg(std::span<const SampledField> g, double moment_p, const MixedNormSpec& spec,
                                 const RademacherConfig& cfg) {
  spec.validate();
  check_operands(g, spec);
  if (!valid_exponent(moment_p)) throw std::invalid_argument("Rademacher moment must lie in [1, inf]");
  const std::size_t k = g.size();
  const std::size_t points = g.front().points();
  const std::size_t inner = g.front().inner();
  const std::size_t len = points * inner;
  std::vector<double> sum(len, 0.0);
  std::vector<double> scratch;
  RademacherAverage out;

  if (cfg.mode == RademacherConfig::Mode::exact) {
    if (k > static_cast<std::size_t>(kMaxExactRademacher)) {
      throw std::invalid_argument("exact Rademacher enumeration limited to " +
                                  std::to_string(kMaxExactRademacher) + " sign variables");
    }
    // ||S_delta|| = ||S_{-delta}||: fix delta_0 = +1 and Gray-walk the rest,
    // rebuilding the sum periodically to bound drift.
    const std::size_t free_bits = k - 1;
    const std::size_t patterns = std::size_t{1} << free_bits;
    std::vector<int> signs(k, 1);
    auto rebuild = [&]() {
      std::fill(sum.begin(), sum.end(), 0.0);
      for (std::size_t i = 0; i < k; ++i) {
        const auto d = g[i].data();
        const double s = signs[i];
        for (std::size_t e = 0; e < len; ++e) sum[e] += s * d[e];
      }
    };
    rebuild();
    double acc = 0.0;
    double m = 0.0;
    for (std::size_t step = 0; step < patterns; ++step) {
      if (step > 0) {
        const std::size_t flip = 1 + static_cast<std::size_t>(__builtin_ctzll(step));
        signs[flip] = -signs[flip];
        if (step % 1024 == 0) {
          rebuild();
        } else {
          const auto d = g[flip].data();
          const double s = 2.0 * signs[flip];
          for (std::size_t e = 0; e < len; ++e) sum[e] += s * d[e];
        }
      }
      const double nrm = field_norm(sum, points, inner, spec, scratch);
      if (std::isinf(moment_p)) {
        m = std::max(m, nrm);
      } else {
        acc += std::pow(nrm, moment_p);
      }
    }
    out.value = std::isinf(moment_p) ? m : std::pow(acc / static_cast<double>(patterns), 1.0 / moment_p);
    out.exact = true;
    return out;
  }

  if (cfg.samples < 2) throw std::invalid_argument("Monte-Carlo Rademacher average needs at least 2 samples");
  if (std::isinf(moment_p)) throw std::invalid_argument("Monte-Carlo mode cannot estimate an infinite moment");
  CounterRng rng(cfg.seed, cfg.stream);
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::uint64_t t = 0; t < cfg.samples; ++t) {
    std::fill(sum.begin(), sum.end(), 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      const double s = rng.sign();
      const auto d = g[i].data();
      for (std::size_t e = 0; e < len; ++e) sum[e] += s * d[e];
    }
    const double y = std::pow(field_norm(sum, points, inner, spec, scratch), moment_p);
    s1 += y;
    s2 += y * y;
  }
  const auto count = static_cast<double>(cfg.samples);
  const double mean = s1 / count;
  const double var = std::max(0.0, (s2 - s1 * mean) / (count - 1.0));
  const double se_mean = std::sqrt(var / count);
  out.value = std::pow(mean, 1.0 / moment_p);
  out.std_error = mean > 0.0 ? out.value / (moment_p * mean) * se_mean : 0.0;
  out.exact = false;
  return out;
}

RademacherAverage rademacher_avg(std::span<const CubeFunction> g, double moment_p, const MixedNormSpec& spec,
                                 const RademacherConfig& cfg) {
  std::vector<SampledField> fields;
  fields.reserve(g.size());
  for (const auto& f : g) fields.push_back(SampledField::of(f));
  return rademacher_avg(fields, moment_p, spec, cfg);
}

RademacherAverage rademacher_avg(std::span<const VectorCubeFunction> g, double moment_p,
                                 const MixedNormSpec& spec, const RademacherConfig& cfg) {
  std::vector<SampledField> fields;
  fields.reserve(g.size());
  for (const auto& f : g) fields.push_back(SampledField::of(f));
  return rademacher_avg(fields, moment_p, spec, cfg);
}

}  // namespace hcube
