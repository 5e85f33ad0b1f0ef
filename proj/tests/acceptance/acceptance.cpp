// Acceptance run: one PASS/FAIL line per criterion, INFO lines for context.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "hcube/counterexamples.hpp"
#include "hcube/cube_function.hpp"
#include "hcube/inequality.hpp"
#include "hcube/kernel_quadrature.hpp"
#include "hcube/noise.hpp"
#include "hcube/norms.hpp"
#include "hcube/quantum.hpp"
#include "hcube/rng.hpp"
#include "oracles.hpp"

namespace {

using namespace hcube;
using Clock = std::chrono::steady_clock;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Pinned tolerances.
constexpr double kTolRepresentation = 1e-12;
constexpr double kTolTail = 1e-12;
constexpr double kTolRieszIdentity = 1e-12;
constexpr double kTolPisierOne = 1e-9;
constexpr double kPisierVariation = 0.5;
constexpr double kPisierSeconds = 10.0;
constexpr double kTolRadialDense = 1e-10;
constexpr double kTalagrandResidualFraction = 0.05;
constexpr double kTalagrandRhsSpread = 0.10;
constexpr double kTolGradient = 1e-10;
constexpr double kTolIsometry = 1e-10;
constexpr double kTolProjection = 1e-12;
constexpr double kTolKernelLaw = 1e-8;
constexpr double kTolQaElpf = 1e-6;
constexpr double kQuadAccuracy = 1e-8;
constexpr double kSweepGrowth = 0.15;

int failures = 0;

void verdict(bool ok, const char* id, const std::string& text) {
  std::printf("%s  criterion %s: %s\n", ok ? "PASS" : "FAIL", id, text.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void info(const std::string& text) { std::printf("INFO  %s\n", text.c_str()); }

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::vector<double> values_of(const CubeFunction& f) {
  return oracle::values_from_coeffs({f.coeffs().begin(), f.coeffs().end()});
}

// 1 ---------------------------------------------------------------------------

void representation_formulas() {
  const double ts[] = {0.05, 0.1, 0.5, 1.0, 3.0};
  double worst = 0.0;
  CounterRng rng(101, 0);
  for (int n = 1; n <= 10; ++n) {
    for (double t : ts) {
      const NoiseParameter np(t);
      for (int k = 0; k < 50; ++k) {
        const CubeFunction f = oracle::random_function(n, rng);
        worst = std::max(worst, verify_heat_representation(f, np));
        for (int j = 0; j < n; ++j) worst = std::max(worst, verify_derivative_representation(f, j, np));
      }
    }
  }
  verdict(worst <= kTolRepresentation, "1",
          fmt("heat and derivative representations, n <= 10, 5 times, 50 f: max discrepancy %.3g <= %.0e", worst,
              kTolRepresentation));
}

// 2 ---------------------------------------------------------------------------

void tail_integral() {
  double worst = 0.0;
  for (int a = 0; a < 10; ++a) {
    const double t = 0.02 * std::pow(250.0, a / 9.0);  // 0.02 .. 5
    for (int b = 0; b < 10; ++b) {
      const double r = 1.0 + 0.5 * b;  // 1 .. 5.5
      worst = std::max(worst, std::abs(symmetrized_tail_integral(t, r) - symmetrized_tail_integral_numeric(t, r)));
    }
  }
  verdict(worst <= kTolTail, "2", fmt("tail integral closed form vs quadrature, 100 (t, r): max gap %.3g <= %.0e", worst, kTolTail));
}

// 3 ---------------------------------------------------------------------------

void riesz_identity() {
  double worst = 0.0;
  for (int n : {4, 6, 8}) {
    const InequalityInstance inst = InequalityInstance::make(InequalityId::RIESZ_LOWER, n, 2.0);
    for (std::uint64_t k = 0; k < 100; ++k) {
      const RatioReport r = evaluate(inst, random_input(inst, 303, k));
      worst = std::max(worst, std::abs(r.ratio - 1.0));
    }
  }
  verdict(worst <= kTolRieszIdentity, "3",
          fmt("RIESZ_LOWER at p = 2, 100 f per n in {4,6,8}: max |ratio - 1| %.3g <= %.0e", worst, kTolRieszIdentity));
}

// 4 ---------------------------------------------------------------------------

void pisier_constant() {
  const auto start = Clock::now();
  const double one = pisier_min_constant(1).minimum;
  const double expect = 3.0 + 2.0 * std::sqrt(2.0);
  verdict(std::abs(one - expect) <= kTolPisierOne, "4a",
          fmt("min_r r^-1 (1+r)/(1-r) = %.12f vs 3 + 2 sqrt 2, gap %.3g", one, std::abs(one - expect)));

  std::vector<double> excess;
  std::vector<double> log_excess;
  std::vector<double> bound_excess;
  for (int n : {1000, 10000, 100000, 1000000}) {
    const double m = pisier_min_constant(n).minimum;
    const double ln = std::log(static_cast<double>(n));
    const double lln = std::log(ln);
    excess.push_back(m - ln - lln);
    log_excess.push_back(std::log(m) - ln - lln);
    bound_excess.push_back(pisier_log_bound(n).minimum - ln - lln);
    info(fmt("n = %.0f: min = %.6g, min / (2e n) = %.9f", n, m, m / (2.0 * std::numbers::e * n)));
  }
  auto spread = [](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
  };
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  verdict(spread(excess) < kPisierVariation, "4b",
          fmt("min(n) - log n - log log n over n = 1e3..1e6 varies by %.6g (< %.1f required)", spread(excess),
              kPisierVariation));
  info(fmt("log min(n) - log n - log log n varies by %.6g", spread(log_excess)));
  info(fmt("min_r r^-n log((1+r)/(1-r)) - log n - log log n varies by %.6g", spread(bound_excess)));
  verdict(seconds < kPisierSeconds, "4c", fmt("runtime %.3g s < %.0f s", seconds, kPisierSeconds));
}

// 5 ---------------------------------------------------------------------------

void talagrand() {
  double gap = 0.0;
  for (int n = 4; n <= 10; ++n) {
    const double root = std::sqrt(static_cast<double>(n));
    std::vector<double> v(std::size_t{1} << n);
    for (std::size_t x = 0; x < v.size(); ++x) {
      const int d = std::popcount(x);
      v[x] = d > root ? std::log(d / root) : 0.0;
    }
    double mean = 0.0;
    for (double y : v) mean += y;
    mean /= static_cast<double>(v.size());
    double lhs = 0.0;
    for (double y : v) lhs = std::max(lhs, std::abs(y - mean));
    for (double p : {2.0, 3.0}) {
      const CounterexampleReport r = talagrand_ratio(n, p);
      const double rhs = oracle::sup_rademacher_moment(v, n, p);
      gap = std::max({gap, std::abs(r.lhs - lhs), std::abs(r.rhs - rhs)});
    }
    gap = std::max(gap, std::abs(radial_sup_rademacher_moment_quadratic(talagrand_profile(n), kInf) -
                                 oracle::sup_rademacher_moment(v, n, kInf)));
  }
  verdict(gap <= kTolRadialDense, "5a", fmt("radial vs dense Talagrand quantities, n = 4..10: max gap %.3g", gap));

  std::vector<double> ns;
  std::vector<double> lhs;
  std::vector<double> rhs;
  for (int k = 8; k <= 20; ++k) {
    const CounterexampleReport r = talagrand_ratio(1 << k, 2.0);
    ns.push_back(r.n);
    lhs.push_back(r.lhs);
    rhs.push_back(r.rhs);
  }
  const GrowthCurve g = fit_log_growth(ns, lhs);
  const auto [lo, hi] = std::minmax_element(rhs.begin(), rhs.end());
  const double rhs_spread = (*hi - *lo) / *lo;
  verdict(g.slope > 0.0 && g.residual < kTalagrandResidualFraction * g.range(), "5b",
          fmt("lhs ~ c log n over n = 2^8..2^20: slope %.6f, max residual %.3g vs 5%% of range %.4g", g.slope,
              g.residual, g.range()));
  verdict(rhs_spread < kTalagrandRhsSpread, "5c",
          fmt("rhs at p = 2 over n = 2^8..2^20: relative spread %.4f < %.2f", rhs_spread, kTalagrandRhsSpread));

  const BoundCheck b = talagrand_bound_check(1 << 10, 100000, 505);
  verdict(b.violations == 0, "5d",
          fmt("pointwise bound at n = 2^10 on 1e5 samples: %.0f violations, worst margin %.4g", static_cast<double>(b.violations),
              b.worst_margin));
  info(fmt("same bound over every sign sum at n = 2^10: worst margin %.4g", talagrand_bound_worst_margin_exact(1 << 10)));
}

// 6 ---------------------------------------------------------------------------

void lamberton() {
  bool increasing = true;
  double prev = -kInf;
  double first = 0.0;
  for (int n = 6; n <= 20; ++n) {
    const double r = lamberton_ratio(n, 1.5).ratio;
    if (n == 6) first = r;
    increasing = increasing && r > prev;
    prev = r;
  }
  verdict(increasing, "6a", fmt("Lamberton ratio at s = 1.5 strictly increasing over n = 6..20 (%.6f -> %.6f)", first, prev));

  double gap = 0.0;
  for (int n = 6; n <= 20; ++n) {
    std::vector<double> v(std::size_t{1} << n, 0.0);
    v[0] = 1.0;
    std::vector<double> grad(v.size(), 0.0);
    for (int i = 0; i < n; ++i) {
      const std::vector<double> d = oracle::discrete_derivative(v, i);
      for (std::size_t x = 0; x < v.size(); ++x) grad[x] += d[x] * d[x];
    }
    for (double& x : grad) x = std::sqrt(x);
    for (double s : {1.25, 1.5, 1.75}) {
      const double dense = oracle::lp(grad, s);
      gap = std::max(gap, std::abs(lamberton_gradient_norm(n, s) - dense) / dense);
    }
  }
  verdict(gap <= kTolGradient, "6b", fmt("closed-form gradient norm vs dense, n = 6..20: max relative gap %.3g", gap));
}

// 7 ---------------------------------------------------------------------------

void quantum_isometries() {
  const double ps[] = {1.0, 1.5, 2.0, 3.0, kInf};
  double scalar = 0.0;
  double column = 0.0;
  double diag = 0.0;
  CounterRng rng(707, 0);
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k < 50; ++k) {
      const CubeFunction f = oracle::random_function(n, rng);
      const quantum::Matrix T = quantum::embed(f);
      const std::vector<double> fv = values_of(f);
      std::vector<CubeFunction> comps;
      for (int r = 0; r < 3; ++r) comps.push_back(oracle::random_function(n, rng));
      const VectorCubeFunction F(comps);
      std::vector<std::vector<double>> cv;
      for (const CubeFunction& c : comps) cv.push_back(values_of(c));
      for (double p : ps) {
        const double want = oracle::lp(fv, p);
        scalar = std::max(scalar, std::abs(quantum::schatten_norm(T, p) - want) / want);
        std::vector<double> l2(fv.size(), 0.0);
        std::vector<double> lp(fv.size(), 0.0);
        for (std::size_t x = 0; x < fv.size(); ++x) {
          for (const auto& c : cv) {
            l2[x] += c[x] * c[x];
            lp[x] = std::isinf(p) ? std::max(lp[x], std::abs(c[x])) : lp[x] + std::pow(std::abs(c[x]), p);
          }
          l2[x] = std::sqrt(l2[x]);
          if (!std::isinf(p)) lp[x] = std::pow(lp[x], 1.0 / p);
        }
        if (p >= 2.0) {
          const double w2 = oracle::lp(l2, p);
          column = std::max(column, std::abs(quantum::block_column_norm(F, p) - w2) / w2);
        }
        const double wp = oracle::lp(lp, p);
        diag = std::max(diag, std::abs(quantum::block_diag_norm(F, p) - wp) / wp);
      }
    }
  }
  verdict(scalar <= kTolIsometry, "7a",
          fmt("||T_f||_sigma_p = ||f||_p, n <= 6, p in {1,1.5,2,3,inf}, 50 f: max relative gap %.3g", scalar));
  verdict(std::max(column, diag) <= kTolIsometry, "7b",
          fmt("block column (p >= 2) and block diagonal isometries: max relative gaps %.3g, %.3g", column, diag));
}

// 8 ---------------------------------------------------------------------------

void projection() {
  const int n = 4;
  const double ps[] = {1.0, 1.5, 2.0, 3.0, kInf};
  double routes = 0.0;
  double idem = 0.0;
  int violations = 0;
  CounterRng rng(808, 0);
  for (double p : ps) {
    for (int k = 0; k < 100; ++k) {
      const quantum::Matrix T = oracle::random_matrix(Eigen::Index{1} << n, rng);
      const quantum::Matrix A = quantum::project_Q(T);
      routes = std::max(routes, (A - quantum::project_Q_conjugated(T)).cwiseAbs().maxCoeff());
      idem = std::max(idem, (quantum::project_Q(A) - A).cwiseAbs().maxCoeff());
      if (oracle::schatten(A, p, 16.0) > oracle::schatten(T, p, 16.0) * (1.0 + 1e-12)) ++violations;
    }
  }
  verdict(routes <= kTolProjection && idem <= kTolProjection && violations == 0, "8",
          fmt("projection routes agree to %.3g, idempotence %.3g, %.0f contraction violations in 500", routes, idem,
              violations));
}

// 9 ---------------------------------------------------------------------------

// Double-exponential rule on theta in (0, pi/2), kept separate from the
// library's folded Gauss-Legendre rule.
double kernel_integral_tanh_sinh(int m, double step) {
  const double quarter = std::numbers::pi / 4.0;
  double acc = 0.0;
  for (double s = -6.0; s <= 6.0 + 1e-12; s += step) {
    const double u = std::numbers::pi / 2.0 * std::sinh(s);
    const double a = quarter * 2.0 / (1.0 + std::exp(-2.0 * u));  // theta
    const double b = quarter * 2.0 / (1.0 + std::exp(2.0 * u));   // pi/2 - theta
    if (a <= 0.0 || b <= 0.0) continue;
    const double c = std::sin(b);
    const double minus_log_cos = a < b ? -std::log1p(-2.0 * std::pow(std::sin(a / 2.0), 2)) : -std::log(c);
    if (!(minus_log_cos > 0.0)) continue;
    const double g = std::pow(c, m) * std::sin(a) / std::sqrt(minus_log_cos);
    const double w = quarter * std::numbers::pi / 2.0 * std::cosh(s) * (1.0 - std::pow(std::tanh(u), 2));
    acc += w * g;
  }
  return 2.0 * acc * step;
}

void kernel_law() {
  const KernelQuadrature quad(kQuadAccuracy);
  double lo = kInf;
  double hi = -kInf;
  double oracle_gap = 0.0;
  double oracle_self = 0.0;
  const double c = pisier_kernel_integral_closed_form(0);
  for (int m = 0; m <= 64; ++m) {
    const double scaled = pisier_kernel_integral(m, quad) * std::sqrt(m + 1.0);
    lo = std::min(lo, scaled);
    hi = std::max(hi, scaled);
    const double fine = kernel_integral_tanh_sinh(m, 1.0 / 256.0);
    oracle_self = std::max(oracle_self, std::abs(fine - kernel_integral_tanh_sinh(m, 1.0 / 128.0)));
    oracle_gap = std::max(oracle_gap, std::abs(fine * std::sqrt(m + 1.0) - scaled));
  }
  const double c_oracle = kernel_integral_tanh_sinh(0, 1.0 / 256.0);
  info(fmt("c = %.15f (closed form 2 sqrt(pi) = %.15f), independent quadrature %.15f", c, 2.0 * std::sqrt(std::numbers::pi),
           c_oracle));
  info(fmt("independent quadrature step-halving change %.3g", oracle_self));
  const bool ok = hi - lo <= kTolKernelLaw && std::abs(c - c_oracle) <= kTolKernelLaw && oracle_gap <= kTolKernelLaw;
  verdict(ok, "9",
          fmt("I(m) sqrt(m+1) over m = 0..64 varies by %.3g; gap to independent quadrature %.3g; c gap %.3g", hi - lo,
              oracle_gap, std::abs(c - c_oracle)));
}

// 10 --------------------------------------------------------------------------

void qa_elpf() {
  const KernelQuadrature quad(kQuadAccuracy);
  double qa = 0.0;
  double elpf = 0.0;
  CounterRng rng(1010, 0);
  for (int n = 1; n <= 5; ++n) {
    for (int k = 0; k < 20; ++k) {
      const CubeFunction f = oracle::random_function(n, rng);
      for (int j = 0; j < n; ++j) qa = std::max(qa, quantum::verify_qa_formula(f, j, quad));
      elpf = std::max(elpf, quantum::verify_elpF(f, quad));
    }
  }
  verdict(std::max(qa, elpf) <= kTolQaElpf, "10",
          fmt("matrix formulas at quadrature accuracy %.0e, n <= 5, 20 f, all j: residuals %.3g, %.3g", kQuadAccuracy, qa,
              elpf));
}

// 11 --------------------------------------------------------------------------

struct Curve {
  std::string label;
  SweepGrid grid;
};

void dimension_free_sweeps() {
  const std::vector<int> ns{4, 6, 8, 10};
  auto grid = [&](InequalityId id, double p, std::vector<double> q, std::vector<double> a) {
    SweepGrid g;
    g.id = id;
    g.n_list = ns;
    g.p_list = {p};
    g.q_list = std::move(q);
    g.a_list = std::move(a);
    g.components = 2;
    g.search.mode = SearchMode::ascent;
    g.search.trials = 4;
    g.search.ascent_steps = 24;
    g.search.seed = 1111;
    return g;
  };
  const std::vector<Curve> curves{
      {"R_BELOW a=1/2, p=3, l^2", grid(InequalityId::R_BELOW, 3.0, {2.0}, {0.5})},
      {"R_BELOW a=1/2, p=3, l^3", grid(InequalityId::R_BELOW, 3.0, {3.0}, {0.5})},
      {"RIESZ_LOWER p=4, l^2", grid(InequalityId::RIESZ_LOWER, 4.0, {2.0}, {})},
      {"RIESZ_LOWER p=4, l^3", grid(InequalityId::RIESZ_LOWER, 4.0, {3.0}, {})},
      {"GAMMA_BELOW gamma=0.1, p=1.5", grid(InequalityId::GAMMA_BELOW, 1.5, {}, {0.1})},
      {"GAMMA_BELOW gamma=0.1, p=3", grid(InequalityId::GAMMA_BELOW, 3.0, {}, {0.1})},
      {"GAMMA_BELOW gamma=0.25, p=1.5", grid(InequalityId::GAMMA_BELOW, 1.5, {}, {0.25})},
      {"GAMMA_BELOW gamma=0.25, p=3", grid(InequalityId::GAMMA_BELOW, 3.0, {}, {0.25})},
  };
  int flagged = 0;
  for (const Curve& c : curves) {
    const std::vector<RatioReport> rows = sweep(c.grid);
    std::string line = c.label + ":";
    bool monotone = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      line += fmt(" %.6f", rows[i].ratio);
      if (i > 0 && rows[i].ratio < rows[i - 1].ratio) monotone = false;
    }
    const double growth = rows.back().ratio / rows.front().ratio - 1.0;
    const bool bad = monotone && growth > kSweepGrowth;
    if (bad) ++flagged;
    info(line + fmt("  (end-to-end %+.4f)", growth));
  }
  verdict(flagged == 0, "11",
          fmt("searched max ratios over n = 4,6,8,10: %.0f of %.0f curves show monotone growth above 15%%", flagged,
              static_cast<double>(curves.size())));
}

}  // namespace

int main() {
  const auto start = Clock::now();
  representation_formulas();
  tail_integral();
  riesz_identity();
  pisier_constant();
  talagrand();
  lamberton();
  quantum_isometries();
  projection();
  kernel_law();
  qa_elpf();
  dimension_free_sweeps();
  info(fmt("total %.1f s, %.0f failing lines", std::chrono::duration<double>(Clock::now() - start).count(),
           static_cast<double>(failures)));
  return failures == 0 ? 0 : 1;
}
