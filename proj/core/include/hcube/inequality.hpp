#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hcube/cube_function.hpp"
#include "hcube/norms.hpp"

namespace hcube {

/// Catalog of cube inequalities lhs <= C rhs. Every X-valued operand is a
/// VectorCubeFunction whose components are read through the inner norm of
/// the instance (scalar X has one component). L = sum_j D_j throughout.
enum class InequalityId {
  R_ABOVE,           ///< (E_d ||sum d_i L^{-a} D_i f||^p)^{1/p}  vs  ||f||
  RIESZ_LOWER,       ///< ||L^{1/2} f||  vs  (E_d ||sum d_i D_i f||^p)^{1/p}
  R_BELOW,           ///< ||sum L^{-a} D_i f_i||  vs  (E_d ||sum d_i D_i f_i||^p)^{1/p}
  R_BELOW_NOD,       ///< ||sum L^{-a} D_i f_i||  vs  (E_d ||sum d_i f_i||^p)^{1/p}
  DELTA_FI,          ///< as R_BELOW_NOD, exponent a in (1 - 1/max(p,q), 1], default 1
  PISIER,            ///< ||f - E f||  vs  (E_d ||sum d_j D_j f||^p)^{1/p}
  F1,                ///< ||sum L^{-1} D_j F_j||  vs  ||F||_{L^p(eps, delta)}, F_j = E_d d_j F
  DF,                ///< (E_d ||sum d_j L^{-1} D_j g||^p)^{1/p}  vs  ||g||
  PT_DERIV,          ///< ||sum D_i P_t f_i||  vs  (e^{2t} - 1)^{-1/2} (E_d ||sum d_i D_i f_i||^p)^{1/p}
  EPI,               ///< ||sum D_i L^{-1/2} f_i||  vs  ||(sum |D_i f_i|^2)^{1/2}||
  GAMMA_BELOW,       ///< ||L^{1/2 - gamma} f||  vs  (E_d ||sum d_i D_i f||^p)^{1/p}
  RIESZ_FULL_BELOW,  ///< GAMMA_BELOW at gamma = 0
  GRADIENT_PROBE,    ///< || |grad f|_{l^2} ||  vs  ||L^{1/p} f||, scalar, 1 < p < 2
};

/// What evaluate() expects for an id.
enum class InputShape { single, family, bi };

std::string_view to_string(InequalityId id);
/// Throws std::invalid_argument listing the catalog on unknown names.
InequalityId inequality_from_string(std::string_view name);
std::span<const InequalityId> all_inequalities();
std::string catalog_listing();
InputShape input_shape(InequalityId id);
/// True for ids with a tunable exponent a (or gamma for GAMMA_BELOW).
bool has_exponent(InequalityId id);
/// True for ids defined only for scalar X.
bool scalar_only(InequalityId id);

struct InequalityInstance {
  InequalityId id = InequalityId::RIESZ_LOWER;
  int n = 1;
  double p = 2.0;
  /// a for the Riesz-type ids, gamma for GAMMA_BELOW; ignored elsewhere.
  double a_or_gamma = 0.0;
  /// Semigroup time for PT_DERIV.
  double t = 0.0;
  /// Inner norm; its outer exponent is overwritten by p.
  MixedNormSpec inner = MixedNormSpec::scalar(2.0);
  /// Seed for Monte-Carlo Rademacher averages (n > kMaxExactRademacher).
  std::uint64_t seed = 0;

  /// Instance with the catalog default exponent (a = 1/2, or 1 for DELTA_FI,
  /// DF and F1, gamma = 1/4 for GAMMA_BELOW) and t = 1 for PT_DERIV.
  static InequalityInstance make(InequalityId id, int n, double p,
                                 const MixedNormSpec& inner = MixedNormSpec::scalar(2.0));

  MixedNormSpec norm_spec() const;
  /// Range checks: a in (0, 1], gamma in [0, 1/2), p in [1, inf), q in [1, inf],
  /// t > 0 for PT_DERIV, dense dimension. Throws std::invalid_argument.
  void validate() const;
};

/// Operands for evaluate(); the active member depends on input_shape(id).
struct InequalityInput {
  InputShape shape = InputShape::single;
  std::vector<VectorCubeFunction> family;  ///< size 1 for single, n for family
  BiCubeFunction bi;

  static InequalityInput single(VectorCubeFunction f);
  static InequalityInput single(const CubeFunction& f);
  static InequalityInput of_family(std::vector<VectorCubeFunction> f);
  static InequalityInput of_family(std::span<const CubeFunction> f);
  static InequalityInput of_bi(BiCubeFunction F);

  /// Flattened coefficients (values for bi); used by the search.
  std::vector<double> parameters() const;
  /// Same layout as `this`, parameters replaced.
  InequalityInput with_parameters(std::span<const double> x) const;
  /// FNV-1a over shape, dimensions and the raw parameter bytes.
  std::string digest() const;
  InequalityInput scaled(double s) const;
};

struct RatioReport {
  InequalityId id = InequalityId::RIESZ_LOWER;
  int n = 0;
  double p = 0.0;
  double q = 0.0;  ///< inner exponent; 0 for scalar X
  double a_or_gamma = 0.0;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs / rhs; +inf when rhs = 0 < lhs; 0 when lhs = 0.
  double ratio = 0.0;
  std::string mode;  ///< "exact" or "monte-carlo"
  std::uint64_t seed = 0;
  std::string digest;
  /// Set when an L^{-a} with a > 0 dropped a nonzero mean.
  bool mean_annihilated = false;
  /// Standard error of rhs (Monte-Carlo only).
  double rhs_std_error = 0.0;
};

double ratio_of(double lhs, double rhs);

/// Throws std::invalid_argument on shape or dimension mismatch.
RatioReport evaluate(const InequalityInstance& inst, const InequalityInput& input);

/// Random input of the right shape for inst, coefficients i.i.d. normal
/// then scaled to unit Euclidean length.
InequalityInput random_input(const InequalityInstance& inst, std::uint64_t seed, std::uint64_t stream);

enum class SearchMode { none, random, ascent };
SearchMode search_mode_from_string(std::string_view name);
std::string_view to_string(SearchMode m);

struct SearchConfig {
  SearchMode mode = SearchMode::random;
  int trials = 16;
  int ascent_steps = 64;
  double perturbation = 0.25;
  std::uint64_t seed = 0;
};

struct SearchResult {
  RatioReport best;
  InequalityInput witness;
  int best_trial = -1;
  int evaluations = 0;
};

/// Trial i draws its start from stream derive_stream(seed, i) and, in
/// ascent mode, performs greedy coordinate perturbations drawn from the
/// same stream. Trials are independent, so enlarging `trials` never lowers
/// the reported maximum. mode none evaluates the single start of trial 0.
/// The random and ascent modes also start from a few dictator-type inputs
/// (single characters); those report a negative best_trial.
SearchResult search_max_ratio(const InequalityInstance& inst, const SearchConfig& cfg);

struct SweepGrid {
  InequalityId id = InequalityId::RIESZ_LOWER;
  std::vector<int> n_list;
  std::vector<double> p_list;
  /// Inner exponents; empty means scalar X. Each q uses `components` entries.
  std::vector<double> q_list;
  int components = 2;
  /// Empty means the catalog default.
  std::vector<double> a_list;
  std::vector<double> t_list;
  SearchConfig search;
};

/// Rows in grid order (n, p, q, a, t nested left to right). Grid point g
/// searches with seed derive_stream(search.seed, g).
std::vector<RatioReport> sweep(const SweepGrid& grid);

}  // namespace hcube
