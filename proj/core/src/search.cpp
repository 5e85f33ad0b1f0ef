#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "hcube/inequality.hpp"
#include "hcube/parallel.hpp"
#include "hcube/rng.hpp"

namespace hcube {

SearchMode search_mode_from_string(std::string_view name) {
  if (name == "none") return SearchMode::none;
  if (name == "random") return SearchMode::random;
  if (name == "ascent") return SearchMode::ascent;
  throw std::invalid_argument("unknown search mode '" + std::string(name) + "'; expected none, random or ascent");
}

std::string_view to_string(SearchMode m) {
  switch (m) {
    case SearchMode::none:
      return "none";
    case SearchMode::random:
      return "random";
    case SearchMode::ascent:
      return "ascent";
  }
  return "none";
}

namespace {

constexpr std::uint64_t kStructuredStreamBase = std::uint64_t{1} << 32;

struct Trial {
  RatioReport report;
  InequalityInput input;
  int evaluations = 0;
};

void normalize(std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  if (s == 0.0) return;
  s = 1.0 / std::sqrt(s);
  for (double& v : x) v *= s;
}

// Dictator-type witnesses: single characters placed in the first component.
std::vector<InequalityInput> structured_inputs(const InequalityInstance& inst) {
  const int n = inst.n;
  const std::size_t R = inst.inner.inner_count();
  auto lift = [&](const CubeFunction& f) {
    std::vector<CubeFunction> comps(R, CubeFunction(n));
    comps[0] = f;
    return VectorCubeFunction(std::move(comps));
  };
  std::vector<InequalityInput> out;
  switch (input_shape(inst.id)) {
    case InputShape::single:
      out.push_back(InequalityInput::single(lift(CubeFunction::character(n, 1))));
      if (n >= 2) out.push_back(InequalityInput::single(lift(CubeFunction::character(n, 3))));
      break;
    case InputShape::family: {
      std::vector<VectorCubeFunction> one(static_cast<std::size_t>(n), lift(CubeFunction(n)));
      one[0] = lift(CubeFunction::character(n, 1));
      out.push_back(InequalityInput::of_family(one));
      std::vector<VectorCubeFunction> diag;
      for (int i = 0; i < n; ++i) diag.push_back(lift(CubeFunction::character(n, Mask{1} << i)));
      out.push_back(InequalityInput::of_family(std::move(diag)));
      break;
    }
    case InputShape::bi: {
      std::vector<CubeFunction> fam(static_cast<std::size_t>(n), CubeFunction(n));
      fam[0] = CubeFunction::character(n, 1);
      out.push_back(InequalityInput::of_bi(BiCubeFunction::linear_in_delta(fam)));
      break;
    }
  }
  return out;
}

Trial run_trial(const InequalityInstance& inst, const SearchConfig& cfg, std::uint64_t stream,
                std::optional<InequalityInput> start) {
  Trial t;
  t.input = start ? std::move(*start) : random_input(inst, cfg.seed, stream);
  t.report = evaluate(inst, t.input);
  t.evaluations = 1;
  if (cfg.mode != SearchMode::ascent || cfg.ascent_steps <= 0) return t;

  // separate substream for the moves so the start matches random mode
  CounterRng rng(cfg.seed, derive_stream(stream, 1));
  std::vector<double> x = t.input.parameters();
  double h = cfg.perturbation;
  int misses = 0;
  for (int step = 0; step < cfg.ascent_steps; ++step) {
    const std::size_t c = rng.below(x.size());
    const double first = rng.sign();
    bool moved = false;
    for (double dir : {first, -first}) {
      std::vector<double> y = x;
      y[c] += dir * h;
      normalize(y);
      InequalityInput cand = t.input.with_parameters(y);
      RatioReport r = evaluate(inst, cand);
      ++t.evaluations;
      if (r.ratio > t.report.ratio) {
        x = std::move(y);
        t.input = std::move(cand);
        t.report = std::move(r);
        moved = true;
        break;
      }
    }
    if (moved) {
      misses = 0;
    } else if (++misses >= 8) {
      h = std::max(0.5 * h, 1e-6);
      misses = 0;
    }
  }
  return t;
}

}  // namespace

SearchResult search_max_ratio(const InequalityInstance& inst, const SearchConfig& cfg) {
  inst.validate();
  if (cfg.trials < 1) throw std::invalid_argument("search needs at least one trial");
  if (!(cfg.perturbation > 0.0)) throw std::invalid_argument("perturbation scale must be positive");
  const int trials = cfg.mode == SearchMode::none ? 1 : cfg.trials;
  std::vector<InequalityInput> starts;
  if (cfg.mode != SearchMode::none) starts = structured_inputs(inst);
  const std::size_t S = starts.size();
  std::vector<Trial> results(S + static_cast<std::size_t>(trials));
  parallel_for(results.size(), [&](std::size_t i) {
    if (i < S) {
      results[i] = run_trial(inst, cfg, derive_stream(cfg.seed, kStructuredStreamBase + i), starts[i]);
    } else {
      results[i] = run_trial(inst, cfg, derive_stream(cfg.seed, i - S), std::nullopt);
    }
  });
  SearchResult out;
  bool have = false;
  for (std::size_t i = 0; i < results.size(); ++i) {
    out.evaluations += results[i].evaluations;
    if (!have || results[i].report.ratio > out.best.ratio) {
      have = true;
      out.best = results[i].report;
      out.witness = results[i].input;
      out.best_trial = static_cast<int>(i) - static_cast<int>(S);
    }
  }
  out.best.seed = cfg.seed;
  return out;
}

std::vector<RatioReport> sweep(const SweepGrid& grid) {
  if (grid.n_list.empty() || grid.p_list.empty()) throw std::invalid_argument("sweep needs n and p lists");
  std::vector<std::optional<double>> qs;
  if (grid.q_list.empty()) {
    qs.push_back(std::nullopt);
  } else {
    for (double q : grid.q_list) qs.push_back(q);
  }
  std::vector<std::optional<double>> as;
  if (grid.a_list.empty()) {
    as.push_back(std::nullopt);
  } else {
    for (double a : grid.a_list) as.push_back(a);
  }
  std::vector<std::optional<double>> ts;
  if (grid.t_list.empty()) {
    ts.push_back(std::nullopt);
  } else {
    for (double t : grid.t_list) ts.push_back(t);
  }

  std::vector<InequalityInstance> points;
  for (int n : grid.n_list) {
    for (double p : grid.p_list) {
      for (const auto& q : qs) {
        for (const auto& a : as) {
          for (const auto& t : ts) {
            const MixedNormSpec inner = q ? MixedNormSpec::ell(p, *q, grid.components) : MixedNormSpec::scalar(p);
            InequalityInstance inst = InequalityInstance::make(grid.id, n, p, inner);
            if (a) inst.a_or_gamma = *a;
            if (t) inst.t = *t;
            inst.validate();
            points.push_back(inst);
          }
        }
      }
    }
  }
  std::vector<RatioReport> rows;
  rows.reserve(points.size());
  for (std::size_t g = 0; g < points.size(); ++g) {
    SearchConfig cfg = grid.search;
    cfg.seed = derive_stream(grid.search.seed, g);
    points[g].seed = cfg.seed;
    rows.push_back(search_max_ratio(points[g], cfg).best);
  }
  return rows;
}

}  // namespace hcube
