// hcube: batch front end for the hcube library.
//
// Every subcommand writes one experiment record (JSON by default, CSV with
// --format csv) to --out or standard output. Exit status: 0 when all
// asserted tolerances hold, 1 on usage or range errors, 2 on a
// verification failure.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcube/counterexamples.hpp"
#include "hcube/cube_function.hpp"
#include "hcube/inequality.hpp"
#include "hcube/io.hpp"
#include "hcube/kernel_quadrature.hpp"
#include "hcube/noise.hpp"
#include "hcube/norms.hpp"
#include "hcube/quantum.hpp"
#include "hcube/rng.hpp"

namespace {

using namespace hcube;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  bool wall_time = false;
};

double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return kInf;
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw std::invalid_argument("not a number: '" + s + "'");
  return x;
}

std::vector<double> parse_exponents(const std::vector<std::string>& v) {
  std::vector<double> out;
  for (const auto& s : v) out.push_back(parse_exponent(s));
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

template <class T>
std::string join_numbers(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_cell(Cell(static_cast<double>(v[i])));
  return s;
}

CubeFunction random_function(int n, std::uint64_t seed, std::uint64_t index) {
  CounterRng rng(seed, derive_stream(0, index));
  std::vector<double> c(std::size_t{1} << n);
  for (double& x : c) x = rng.normal();
  return CubeFunction::from_coeffs(n, std::move(c));
}

quantum::Matrix random_matrix(int n, std::uint64_t seed, std::uint64_t index) {
  CounterRng rng(seed, derive_stream(1, index));
  const Eigen::Index dim = Eigen::Index{1} << n;
  quantum::Matrix M(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) M(i, j) = {rng.normal(), rng.normal()};
  }
  return M;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

class Emitter {
 public:
  explicit Emitter(const Common& c) : common_(c), start_(std::chrono::steady_clock::now()) {}

  void emit(ExperimentRecord rec) const {
    rec.seed = common_.seed;
    if (common_.wall_time) {
      rec.wall_time_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
    const std::string text = common_.format == "csv" ? rec.to_csv() : rec.to_json();
    if (common_.out.empty() || common_.out == "-") {
      std::cout << text;
      std::cout.flush();
    } else {
      std::ofstream f(common_.out, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open output file " + common_.out);
      f << text;
    }
  }

 private:
  const Common& common_;
  std::chrono::steady_clock::time_point start_;
};

int verdict(ExperimentRecord& rec, double worst, double tolerance) {
  const bool ok = worst <= tolerance;
  rec.summary.emplace_back("max_discrepancy", worst);
  rec.summary.emplace_back("tolerance", tolerance);
  rec.summary.emplace_back("status", std::string(ok ? "pass" : "fail"));
  return ok ? kExitOk : kExitVerify;
}

// verify formula ------------------------------------------------------------

struct VerifyArgs {
  std::string which;
  int n = 6;
  double t = 1.0;
  double r = 2.0;
  int trials = 10;
  double quad_accuracy = 1e-8;
};

int run_verify(const VerifyArgs& a, const Common& c, const Emitter& out) {
  ExperimentRecord rec;
  rec.name = "verify-formula-" + a.which;
  rec.parameters = {{"which", a.which}, {"n", std::to_string(a.n)}, {"t", format_double(a.t)}};
  double worst = 0.0;
  double tol = 1e-12;
  require(a.trials >= 1, "--trials must be >= 1");
  if (a.which == "heat" || a.which == "derivative") {
    require(a.n >= 1 && a.n <= kMaxEnumerativeDim,
            "--n must lie in [1, " + std::to_string(kMaxEnumerativeDim) + "] for enumerative checks");
    const NoiseParameter np(a.t);
    rec.parameters.emplace_back("trials", std::to_string(a.trials));
    for (int k = 0; k < a.trials; ++k) {
      const CubeFunction f = random_function(a.n, c.seed, static_cast<std::uint64_t>(k));
      if (a.which == "heat") {
        const double d = verify_heat_representation(f, np);
        worst = std::max(worst, d);
        rec.rows.push_back({{"trial", std::int64_t{k}}, {"j", std::int64_t{-1}}, {"discrepancy", d}});
      } else {
        for (int j = 0; j < a.n; ++j) {
          const double d = verify_derivative_representation(f, j, np);
          worst = std::max(worst, d);
          rec.rows.push_back({{"trial", std::int64_t{k}}, {"j", std::int64_t{j}}, {"discrepancy", d}});
        }
      }
    }
  } else if (a.which == "tail-integral") {
    rec.parameters.emplace_back("r", format_double(a.r));
    const double closed = symmetrized_tail_integral(a.t, a.r);
    const double numeric = symmetrized_tail_integral_numeric(a.t, a.r);
    worst = std::abs(closed - numeric);
    rec.rows.push_back({{"t", a.t}, {"r", a.r}, {"closed_form", closed}, {"numeric", numeric}, {"discrepancy", worst}});
  } else if (a.which == "qa" || a.which == "elpf") {
    require(a.n >= 1 && a.n <= 6, "--n must lie in [1, 6] for matrix formulas");
    tol = 1e-6;
    const KernelQuadrature quad(a.quad_accuracy);
    rec.parameters.emplace_back("quad_accuracy", format_double(a.quad_accuracy));
    rec.parameters.emplace_back("trials", std::to_string(a.trials));
    for (int k = 0; k < a.trials; ++k) {
      CubeFunction f = random_function(a.n, c.seed, static_cast<std::uint64_t>(k));
      if (a.which == "qa") {
        for (int j = 0; j < a.n; ++j) {
          const double d = quantum::verify_qa_formula(f, j, quad);
          worst = std::max(worst, d);
          rec.rows.push_back({{"trial", std::int64_t{k}}, {"j", std::int64_t{j}}, {"discrepancy", d}});
        }
      } else {
        f.coeffs()[0] = 0.0;
        const double d = quantum::verify_elpF(f, quad);
        worst = std::max(worst, d);
        rec.rows.push_back({{"trial", std::int64_t{k}}, {"j", std::int64_t{-1}}, {"discrepancy", d}});
      }
    }
  } else {
    throw std::invalid_argument("--which must be one of heat, derivative, tail-integral, qa, elpf");
  }
  const int code = verdict(rec, worst, tol);
  out.emit(std::move(rec));
  return code;
}

// ratio / sweep -------------------------------------------------------------

struct RatioArgs {
  std::string ineq;
  int n = 0;
  std::string p;
  std::optional<std::string> q;
  int components = 2;
  std::optional<double> a;
  std::optional<double> gamma;
  std::optional<double> t;
  std::string search = "random";
  int trials = 16;
  int ascent_steps = 64;
};

void apply_exponents(InequalityInstance& inst, const std::optional<double>& a, const std::optional<double>& gamma,
                     const std::optional<double>& t) {
  if (gamma) {
    require(inst.id == InequalityId::GAMMA_BELOW, "--gamma applies to GAMMA_BELOW only");
    inst.a_or_gamma = *gamma;
  }
  if (a) {
    require(has_exponent(inst.id) && inst.id != InequalityId::GAMMA_BELOW,
            "--a does not apply to " + std::string(to_string(inst.id)));
    inst.a_or_gamma = *a;
  }
  if (t) {
    require(inst.id == InequalityId::PT_DERIV, "--t applies to PT_DERIV only");
    inst.t = *t;
  }
}

int run_ratio(const RatioArgs& r, const Common& c, const Emitter& out) {
  const InequalityId id = inequality_from_string(r.ineq);
  const double p = parse_exponent(r.p);
  const MixedNormSpec inner = r.q ? MixedNormSpec::ell(p, parse_exponent(*r.q), r.components) : MixedNormSpec::scalar(p);
  InequalityInstance inst = InequalityInstance::make(id, r.n, p, inner);
  apply_exponents(inst, r.a, r.gamma, r.t);
  inst.seed = c.seed;
  SearchConfig cfg;
  cfg.mode = search_mode_from_string(r.search);
  cfg.trials = r.trials;
  cfg.ascent_steps = r.ascent_steps;
  cfg.seed = c.seed;
  const SearchResult res = search_max_ratio(inst, cfg);

  ExperimentRecord rec;
  rec.name = "ratio";
  rec.parameters = {{"ineq", std::string(to_string(id))},
                    {"n", std::to_string(r.n)},
                    {"p", format_double(p)},
                    {"inner", inner.describe()},
                    {"search", r.search},
                    {"trials", std::to_string(r.trials)}};
  rec.rows.push_back(report_row(res.best));
  rec.summary = {{"best_trial", std::int64_t{res.best_trial}},
                 {"evaluations", std::int64_t{res.evaluations}},
                 {"witness_digest", res.best.digest},
                 {"rhs_std_error", res.best.rhs_std_error}};
  out.emit(std::move(rec));
  return kExitOk;
}

struct SweepArgs {
  std::string ineq;
  std::vector<int> n_list;
  std::vector<std::string> p_list;
  std::vector<std::string> q_list;
  std::vector<double> a_list;
  std::vector<double> t_list;
  int components = 2;
  std::string search = "random";
  int trials = 16;
  int ascent_steps = 64;
};

int run_sweep(const SweepArgs& s, const Common& c, const Emitter& out) {
  SweepGrid g;
  g.id = inequality_from_string(s.ineq);
  g.n_list = s.n_list;
  g.p_list = parse_exponents(s.p_list);
  g.q_list = parse_exponents(s.q_list);
  g.components = s.components;
  g.a_list = s.a_list;
  g.t_list = s.t_list;
  g.search.mode = search_mode_from_string(s.search);
  g.search.trials = s.trials;
  g.search.ascent_steps = s.ascent_steps;
  g.search.seed = c.seed;
  const std::vector<RatioReport> rows = sweep(g);
  ExperimentRecord rec;
  rec.name = "sweep";
  rec.parameters = {{"ineq", std::string(to_string(g.id))},
                    {"n_list", join_numbers(s.n_list)},
                    {"p_list", join(s.p_list)},
                    {"q_list", join(s.q_list)},
                    {"search", s.search},
                    {"trials", std::to_string(s.trials)}};
  for (const RatioReport& r : rows) rec.rows.push_back(report_row(r));
  out.emit(std::move(rec));
  return kExitOk;
}

// counterexamples -----------------------------------------------------------

struct CounterArgs {
  std::vector<int> n_list;
  double p = 2.0;
  double s = 1.5;
  std::uint64_t samples = 100000;
};

Row counter_row(const CounterexampleReport& r) {
  return {{"name", r.name}, {"n", std::int64_t{r.n}}, {"p", r.p},     {"s", r.s},
          {"lhs", r.lhs},   {"rhs", r.rhs},           {"ratio", r.ratio}};
}

std::vector<double> as_doubles(const std::vector<int>& v) { return {v.begin(), v.end()}; }

int run_talagrand(const CounterArgs& a, const Common& c, const Emitter& out) {
  require(!a.n_list.empty(), "--n-list is required");
  ExperimentRecord rec;
  rec.name = "counterexample-talagrand";
  rec.parameters = {{"n_list", join_numbers(a.n_list)}, {"p", format_double(a.p)}};
  std::vector<double> lhs;
  std::vector<double> rhs;
  for (int n : a.n_list) {
    const CounterexampleReport r = talagrand_ratio(n, a.p);
    lhs.push_back(r.lhs);
    rhs.push_back(r.rhs);
    rec.rows.push_back(counter_row(r));
  }
  if (a.n_list.size() >= 2) {
    const GrowthCurve fit = fit_log_growth(as_doubles(a.n_list), lhs);
    const GrowthCurve ratio_fit = fit_log_growth(as_doubles(a.n_list), [&] {
      std::vector<double> q;
      for (std::size_t i = 0; i < lhs.size(); ++i) q.push_back(lhs[i] / rhs[i]);
      return q;
    }());
    const auto [lo, hi] = std::minmax_element(rhs.begin(), rhs.end());
    rec.summary = {{"lhs_slope", fit.slope},
                   {"lhs_intercept", fit.intercept},
                   {"lhs_residual", fit.residual},
                   {"lhs_range", fit.range()},
                   {"ratio_slope", ratio_fit.slope},
                   {"rhs_relative_spread", (*hi - *lo) / *lo}};
  }
  if (a.samples > 0) {
    const int n = a.n_list.back();
    const BoundCheck b = talagrand_bound_check(n, a.samples, c.seed);
    rec.summary.emplace_back("bound_n", std::int64_t{n});
    rec.summary.emplace_back("bound_samples", static_cast<std::int64_t>(b.samples));
    rec.summary.emplace_back("bound_violations", static_cast<std::int64_t>(b.violations));
    rec.summary.emplace_back("bound_worst_margin", b.worst_margin);
    out.emit(std::move(rec));
    return b.violations == 0 ? kExitOk : kExitVerify;
  }
  out.emit(std::move(rec));
  return kExitOk;
}

int run_lamberton(const CounterArgs& a, const Emitter& out, bool vector_form) {
  require(!a.n_list.empty(), "--n-list is required");
  ExperimentRecord rec;
  rec.name = vector_form ? "counterexample-riesz-above" : "counterexample-lamberton";
  rec.parameters = {{"n_list", join_numbers(a.n_list)}, {"s", format_double(a.s)}};
  if (vector_form) rec.parameters.emplace_back("p", format_double(a.p));
  double prev = -kInf;
  bool increasing = true;
  for (int n : a.n_list) {
    const CounterexampleReport r = vector_form ? riesz_above_vector_check(n, a.p, a.s) : lamberton_ratio(n, a.s);
    increasing = increasing && r.ratio > prev;
    prev = r.ratio;
    rec.rows.push_back(counter_row(r));
  }
  rec.summary = {{"exponent_in_failure_range", std::string(lamberton_exponent_in_failure_range(a.s) ? "yes" : "no")},
                 {"strictly_increasing", std::string(increasing ? "yes" : "no")}};
  out.emit(std::move(rec));
  return kExitOk;
}

int run_pisier_constant(const CounterArgs& a, const Emitter& out) {
  require(!a.n_list.empty(), "--n-list is required");
  ExperimentRecord rec;
  rec.name = "counterexample-pisier-constant";
  rec.parameters = {{"n_list", join_numbers(a.n_list)}};
  for (int n : a.n_list) {
    const PisierMinimum m = pisier_min_constant(n);
    const PisierMinimum lb = pisier_log_bound(n);
    const double ln = std::log(static_cast<double>(n));
    const double excess = n >= 2 ? m.minimum - ln - std::log(ln) : std::numeric_limits<double>::quiet_NaN();
    rec.rows.push_back({{"n", std::int64_t{n}},
                        {"minimum", m.minimum},
                        {"argmin", m.argmin},
                        {"argmin_closed_form", pisier_argmin_closed_form(n)},
                        {"minimum_minus_log_terms", excess},
                        {"log_minimum", std::log(m.minimum)},
                        {"log_bound", lb.minimum}});
  }
  out.emit(std::move(rec));
  return kExitOk;
}

// quantum -------------------------------------------------------------------

struct QuantumArgs {
  int n = 4;
  std::vector<std::string> p_list{"1", "1.5", "2", "3", "inf"};
  std::string p = "4";
  double quad_accuracy = 1e-8;
  int trials = 20;
  int m_max = 64;
  int components = 3;
};

int run_projection(const QuantumArgs& q, const Common& c, const Emitter& out) {
  require(q.n >= 1 && q.n <= 6, "--n must lie in [1, 6]");
  const std::vector<double> ps = parse_exponents(q.p_list);
  ExperimentRecord rec;
  rec.name = "quantum-projection";
  rec.parameters = {{"n", std::to_string(q.n)}, {"trials", std::to_string(q.trials)}, {"p_list", join(q.p_list)}};
  double disagreement = 0.0;
  double idempotence = 0.0;
  std::int64_t violations = 0;
  for (int k = 0; k < q.trials; ++k) {
    const quantum::Matrix T = random_matrix(q.n, c.seed, static_cast<std::uint64_t>(k));
    const quantum::Matrix A = quantum::project_Q(T);
    const quantum::Matrix B = quantum::project_Q_conjugated(T);
    disagreement = std::max(disagreement, (A - B).cwiseAbs().maxCoeff());
    idempotence = std::max(idempotence, (quantum::project_Q(A) - A).cwiseAbs().maxCoeff());
    for (double p : ps) {
      const double before = quantum::schatten_norm(T, p);
      const double after = quantum::schatten_norm(A, p);
      if (after > before * (1 + 1e-12)) ++violations;
      rec.rows.push_back({{"trial", std::int64_t{k}}, {"p", p}, {"norm", before}, {"projected_norm", after}});
    }
  }
  rec.summary = {{"route_disagreement", disagreement},
                 {"idempotence_error", idempotence},
                 {"contraction_violations", violations}};
  const bool ok = disagreement <= 1e-12 && idempotence <= 1e-12 && violations == 0;
  rec.summary.emplace_back("status", std::string(ok ? "pass" : "fail"));
  out.emit(std::move(rec));
  return ok ? kExitOk : kExitVerify;
}

int run_rotation(const QuantumArgs& q, const Common& c, const Emitter& out) {
  require(q.n >= 1 && q.n <= 6, "--n must lie in [1, 6]");
  using quantum::Letter;
  ExperimentRecord rec;
  rec.name = "quantum-rotation";
  rec.parameters = {{"n", std::to_string(q.n)}};
  const std::vector<double> angles{-1.3, -0.5, 0.2, 0.8, 1.4};
  double worst = 0.0;
  for (int j = 0; j < q.n; ++j) {
    auto word = [&](Letter l) {
      quantum::PauliWord w = quantum::PauliWord::q_word(q.n, 0);
      w.letters[static_cast<std::size_t>(j)] = l;
      return quantum::pauli_build(w);
    };
    const quantum::Matrix Q = word(Letter::Q);
    const quantum::Matrix P = word(Letter::P);
    for (double th : angles) {
      const double eq = (quantum::rotate(Q, th) - (std::cos(th) * Q + std::sin(th) * P)).cwiseAbs().maxCoeff();
      const double ep = (quantum::rotate(P, th) - (std::cos(th) * P - std::sin(th) * Q)).cwiseAbs().maxCoeff();
      worst = std::max({worst, eq, ep});
      rec.rows.push_back({{"check", std::string("letter")}, {"j", std::int64_t{j}}, {"theta", th}, {"error", std::max(eq, ep)}});
    }
    const double basis = quantum::verify_qa_basis_identity(q.n, j, angles);
    worst = std::max(worst, basis);
    rec.rows.push_back({{"check", std::string("projected-basis")}, {"j", std::int64_t{j}}, {"theta", 0.0}, {"error", basis}});
  }
  const CubeFunction f = random_function(q.n, c.seed, 0);
  const quantum::Matrix T = quantum::embed(f);
  for (double th : angles) {
    const double iso = std::abs(quantum::schatten_norm(quantum::rotate(T, th), 3.0) - quantum::schatten_norm(T, 3.0));
    worst = std::max(worst, iso);
    rec.rows.push_back({{"check", std::string("isometry-p3")}, {"j", std::int64_t{-1}}, {"theta", th}, {"error", iso}});
  }
  const int code = verdict(rec, worst, 1e-12);
  out.emit(std::move(rec));
  return code;
}

int run_pisier_integral(const QuantumArgs& q, const Emitter& out) {
  require(q.m_max >= 0, "--m-max must be >= 0");
  const KernelQuadrature quad(q.quad_accuracy);
  ExperimentRecord rec;
  rec.name = "quantum-pisier-integral";
  rec.parameters = {{"m_max", std::to_string(q.m_max)}, {"quad_accuracy", format_double(q.quad_accuracy)}};
  const double c = pisier_kernel_integral_closed_form(0);
  double worst = 0.0;
  for (int m = 0; m <= q.m_max; ++m) {
    const double I = pisier_kernel_integral(m, quad);
    const double scaled = I * std::sqrt(m + 1.0);
    worst = std::max(worst, std::abs(scaled - c));
    rec.rows.push_back({{"m", std::int64_t{m}}, {"integral", I}, {"scaled", scaled}});
  }
  rec.summary.emplace_back("c", c);
  rec.summary.emplace_back("estimated_quadrature_error", quad.estimated_error());
  const int code = verdict(rec, worst, 1e-8);
  out.emit(std::move(rec));
  return code;
}

int run_isometry(const QuantumArgs& q, const Common& c, const Emitter& out) {
  require(q.n >= 1 && q.n <= 6, "--n must lie in [1, 6]");
  require(q.components >= 1 && q.components <= 8, "--components must lie in [1, 8]");
  const std::vector<double> ps = parse_exponents(q.p_list);
  ExperimentRecord rec;
  rec.name = "quantum-isometry";
  rec.parameters = {{"n", std::to_string(q.n)}, {"trials", std::to_string(q.trials)}, {"p_list", join(q.p_list)}};
  double worst = 0.0;
  for (int k = 0; k < q.trials; ++k) {
    const CubeFunction f = random_function(q.n, c.seed, static_cast<std::uint64_t>(k));
    std::vector<CubeFunction> comps;
    for (int r = 0; r < q.components; ++r) {
      comps.push_back(random_function(q.n, c.seed, static_cast<std::uint64_t>(q.trials + k * q.components + r)));
    }
    const VectorCubeFunction F(comps);
    for (double p : ps) {
      const double e1 = std::abs(quantum::schatten_norm(quantum::embed(f), p) - lp_norm(f, p));
      double e2 = 0.0;
      double e3 = 0.0;
      if (p >= 2.0) {
        e2 = std::abs(quantum::block_column_norm(F, p) - mixed_norm(F, MixedNormSpec::ell(p, 2.0, q.components)));
      }
      if (!std::isinf(p)) {
        e3 = std::abs(quantum::block_diag_norm(F, p) - mixed_norm(F, MixedNormSpec::ell(p, p, q.components)));
      }
      worst = std::max({worst, e1, e2, e3});
      rec.rows.push_back({{"trial", std::int64_t{k}}, {"p", p}, {"scalar_error", e1}, {"column_error", e2}, {"diag_error", e3}});
    }
  }
  const int code = verdict(rec, worst, 1e-10);
  out.emit(std::move(rec));
  return code;
}

int run_epi(const QuantumArgs& q, const Common& c, const Emitter& out) {
  require(q.n >= 1 && q.n <= 6, "--n must lie in [1, 6]");
  const double p = parse_exponent(q.p);
  ExperimentRecord rec;
  rec.name = "quantum-epi";
  rec.parameters = {{"n", std::to_string(q.n)}, {"p", format_double(p)}, {"trials", std::to_string(q.trials)}};
  double best = 0.0;
  std::vector<CubeFunction> dict(static_cast<std::size_t>(q.n), CubeFunction::character(q.n, 1));
  const RatioReport d = quantum::epi_quantum_ratio(dict, p);
  rec.rows.push_back({{"trial", std::int64_t{-1}}, {"lhs", d.lhs}, {"rhs", d.rhs}, {"ratio", d.ratio}});
  best = d.ratio;
  for (int k = 0; k < q.trials; ++k) {
    std::vector<CubeFunction> fam;
    for (int i = 0; i < q.n; ++i) {
      fam.push_back(random_function(q.n, c.seed, static_cast<std::uint64_t>(k * q.n + i)));
    }
    const RatioReport r = quantum::epi_quantum_ratio(fam, p);
    best = std::max(best, r.ratio);
    rec.rows.push_back({{"trial", std::int64_t{k}}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"ratio", r.ratio}});
  }
  rec.summary = {{"max_ratio", best}, {"dictator_ratio", d.ratio}};
  out.emit(std::move(rec));
  return kExitOk;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "Seed for every random draw")->capture_default_str();
  app->add_option("--out", c.out, "Output path (default: standard output)");
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app->add_flag("--wall-time", c.wall_time, "Record wall time (breaks byte-identical output)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for Riesz-transform and Rademacher inequalities on the Hamming cube", "hcube"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  Common common;
  std::function<int()> action;

  // verify formula
  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check representation formulas");
  verify->require_subcommand(1);
  auto* formula = verify->add_subcommand("formula", "Check one formula");
  formula->add_option("--which", va.which, "heat | derivative | tail-integral | qa | elpf")
      ->required()
      ->check(CLI::IsMember({"heat", "derivative", "tail-integral", "qa", "elpf"}));
  formula->add_option("--n", va.n, "Cube dimension")->capture_default_str();
  formula->add_option("--t", va.t, "Heat time")->capture_default_str();
  formula->add_option("--r", va.r, "Tail-integral exponent")->capture_default_str();
  formula->add_option("--trials", va.trials, "Random functions per case")->capture_default_str();
  formula->add_option("--quad-accuracy", va.quad_accuracy, "Kernel quadrature target")->capture_default_str();
  add_common(formula, common);
  formula->callback([&] { action = [&] { return run_verify(va, common, Emitter(common)); }; });

  // ratio
  RatioArgs ra;
  auto* ratio = app.add_subcommand("ratio", "Evaluate or search one inequality instance");
  ratio->add_option("--ineq", ra.ineq, "Inequality id")->required();
  ratio->add_option("--n", ra.n, "Cube dimension")->required();
  ratio->add_option("--p", ra.p, "Outer exponent")->required();
  ratio->add_option("--q", ra.q, "Inner l^q exponent (omit for scalar X)");
  ratio->add_option("--components", ra.components, "Inner dimension for l^q")->capture_default_str();
  ratio->add_option("--a", ra.a, "Exponent a");
  ratio->add_option("--gamma", ra.gamma, "Exponent gamma (GAMMA_BELOW)");
  ratio->add_option("--t", ra.t, "Heat time (PT_DERIV)");
  ratio->add_option("--search", ra.search, "none | random | ascent")->capture_default_str();
  ratio->add_option("--trials", ra.trials, "Search restarts")->capture_default_str();
  ratio->add_option("--ascent-steps", ra.ascent_steps, "Moves per ascent")->capture_default_str();
  add_common(ratio, common);
  ratio->callback([&] { action = [&] { return run_ratio(ra, common, Emitter(common)); }; });

  // sweep
  SweepArgs sa;
  auto* sw = app.add_subcommand("sweep", "Searched ratios over a parameter grid");
  sw->add_option("--ineq", sa.ineq, "Inequality id")->required();
  sw->add_option("--n-list", sa.n_list, "Dimensions")->required()->delimiter(',');
  sw->add_option("--p-list", sa.p_list, "Outer exponents")->required()->delimiter(',');
  sw->add_option("--q-list", sa.q_list, "Inner l^q exponents")->delimiter(',');
  sw->add_option("--a-list", sa.a_list, "Exponents a or gamma")->delimiter(',');
  sw->add_option("--t-list", sa.t_list, "Heat times")->delimiter(',');
  sw->add_option("--components", sa.components, "Inner dimension for l^q")->capture_default_str();
  sw->add_option("--search", sa.search, "none | random | ascent")->capture_default_str();
  sw->add_option("--trials", sa.trials, "Search restarts")->capture_default_str();
  sw->add_option("--ascent-steps", sa.ascent_steps, "Moves per ascent")->capture_default_str();
  add_common(sw, common);
  sw->callback([&] { action = [&] { return run_sweep(sa, common, Emitter(common)); }; });

  // counterexample
  CounterArgs ca;
  auto* counter = app.add_subcommand("counterexample", "Reproduce the dimension-dependent examples");
  counter->require_subcommand(1);
  auto add_counter = [&](const std::string& name, const std::string& help, bool with_p, bool with_s,
                         std::function<int()> run) {
    auto* sub = counter->add_subcommand(name, help);
    sub->add_option("--n-list", ca.n_list, "Dimensions")->required()->delimiter(',');
    if (with_p) sub->add_option("--p", ca.p, "Outer exponent")->capture_default_str();
    if (with_s) sub->add_option("--s", ca.s, "Inner exponent")->capture_default_str();
    if (name == "talagrand") {
      sub->add_option("--samples", ca.samples, "Samples for the pointwise bound (0 skips)")->capture_default_str();
    }
    add_common(sub, common);
    sub->callback([&action, run] { action = run; });
  };
  add_counter("talagrand", "Radial log profile", true, false, [&] { return run_talagrand(ca, common, Emitter(common)); });
  add_counter("lamberton", "Indicator of a point, gradient vs half Laplacian", false, true,
              [&] { return run_lamberton(ca, Emitter(common), false); });
  add_counter("riesz-above", "Vector-valued lift of the Lamberton function", true, true,
              [&] { return run_lamberton(ca, Emitter(common), true); });
  add_counter("pisier-constant", "min over r of r^-n (1+r)/(1-r)", false, false,
              [&] { return run_pisier_constant(ca, Emitter(common)); });

  // quantum
  QuantumArgs qa;
  auto* quantum_cmd = app.add_subcommand("quantum", "Matrix-model checks");
  quantum_cmd->require_subcommand(1);
  auto add_quantum = [&](const std::string& name, const std::string& help, std::function<int()> run) {
    auto* sub = quantum_cmd->add_subcommand(name, help);
    sub->add_option("--n", qa.n, "Number of qubits")->capture_default_str();
    sub->add_option("--p", qa.p, "Schatten exponent (epi)")->capture_default_str();
    sub->add_option("--p-list", qa.p_list, "Schatten exponents")->delimiter(',');
    sub->add_option("--quad-accuracy", qa.quad_accuracy, "Kernel quadrature target")->capture_default_str();
    sub->add_option("--trials", qa.trials, "Random samples")->capture_default_str();
    sub->add_option("--m-max", qa.m_max, "Largest m for the kernel law")->capture_default_str();
    sub->add_option("--components", qa.components, "Block count for block isometries")->capture_default_str();
    add_common(sub, common);
    sub->callback([&action, run] { action = run; });
  };
  add_quantum("projection", "Two routes to the Q-projection, idempotence, contraction",
              [&] { return run_projection(qa, common, Emitter(common)); });
  add_quantum("rotation", "Rotation semigroup identities", [&] { return run_rotation(qa, common, Emitter(common)); });
  add_quantum("pisier-integral", "Kernel law I(m) sqrt(m+1) = c", [&] { return run_pisier_integral(qa, Emitter(common)); });
  add_quantum("isometry", "Schatten isometries of the embedding and block matrices",
              [&] { return run_isometry(qa, common, Emitter(common)); });
  add_quantum("epi", "Matrix form of the square-function inequality", [&] { return run_epi(qa, common, Emitter(common)); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitVerify;
  }
}
