#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hcube/krawtchouk.hpp"
#include "hcube/norms.hpp"

namespace hcube {

namespace {

struct Slopes {
  std::vector<double> alpha;
  std::vector<double> gamma;  // beta - alpha
};

Slopes slopes_of(const RadialProfile& prof) {
  const int n = prof.dim();
  const auto v = prof.values();
  Slopes s;
  s.alpha.assign(static_cast<std::size_t>(n) + 1, 0.0);
  s.gamma.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int d = 0; d <= n; ++d) {
    const auto i = static_cast<std::size_t>(d);
    const double a = d < n ? 0.5 * (v[i] - v[i + 1]) : 0.0;
    const double b = d > 0 ? 0.5 * (v[i] - v[i - 1]) : 0.0;
    s.alpha[i] = a;
    s.gamma[i] = b - a;
  }
  return s;
}

// max over feasible u of |alpha s + gamma u| at weight d.
inline double sup_at(const Slopes& sl, int n, int d, int s) {
  const int lo = std::max(-d, s - (n - d));
  const int hi = std::min(d, s + (n - d));
  const auto i = static_cast<std::size_t>(d);
  const double base = sl.alpha[i] * s;
  return std::max(std::abs(base + sl.gamma[i] * lo), std::abs(base + sl.gamma[i] * hi));
}

void check_moment(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("sup-Rademacher moment needs p >= 1");
}

// Upper envelope of lines y = a x + b over integer x in [0, xmax].
class LiChao {
 public:
  explicit LiChao(int xmax) : xmax_(xmax), a_(4 * static_cast<std::size_t>(xmax + 1)), b_(a_.size()),
                              used_(a_.size(), false) {}

  void insert(double a, double b) { insert(1, 0, xmax_, a, b); }

  double query(int x) const {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t node = 1;
    int lo = 0;
    int hi = xmax_;
    while (true) {
      if (used_[node]) best = std::max(best, a_[node] * x + b_[node]);
      if (lo == hi) break;
      const int mid = lo + (hi - lo) / 2;
      if (x <= mid) {
        node = 2 * node;
        hi = mid;
      } else {
        node = 2 * node + 1;
        lo = mid + 1;
      }
    }
    return best;
  }

 private:
  void insert(std::size_t node, int lo, int hi, double a, double b) {
    while (true) {
      if (!used_[node]) {
        used_[node] = true;
        a_[node] = a;
        b_[node] = b;
        return;
      }
      const int mid = lo + (hi - lo) / 2;
      const bool better_mid = a * mid + b > a_[node] * mid + b_[node];
      if (better_mid) {
        std::swap(a, a_[node]);
        std::swap(b, b_[node]);
      }
      if (lo == hi) return;
      const bool better_lo = a * lo + b > a_[node] * lo + b_[node];
      if (better_lo) {
        node = 2 * node;
        hi = mid;
      } else if (a * hi + b > a_[node] * hi + b_[node]) {
        node = 2 * node + 1;
        lo = mid + 1;
      } else {
        return;
      }
    }
  }

  int xmax_;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<bool> used_;
};

// p-th moment from per-|s| suprema, with M(s) = M(-s).
double finish_moment(int n, const std::vector<double>& pmf, int p_lo, int p_hi,
                     const std::vector<double>& sup_by_abs_s, double p) {
  double scale = 0.0;
  for (double m : sup_by_abs_s) scale = std::max(scale, m);
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (int P = p_lo; P <= p_hi; ++P) {
    const int s = std::abs(2 * P - n);
    acc += pmf[static_cast<std::size_t>(P)] * std::pow(sup_by_abs_s[static_cast<std::size_t>(s)] / scale, p);
  }
  return scale * std::pow(acc, 1.0 / p);
}

// M(s) for 0 <= s <= s_max with s = n mod 2 (other entries 0).
std::vector<double> sup_table(const Slopes& sl, int n, int s_max) {
  // Inner region: d with |n - 2d| >= |s| contributes a_d |s| + b_d.
  std::vector<int> order(static_cast<std::size_t>(n) + 1);
  for (int d = 0; d <= n; ++d) order[static_cast<std::size_t>(d)] = d;
  std::sort(order.begin(), order.end(), [n](int x, int y) {
    const int ex = std::abs(n - 2 * x);
    const int ey = std::abs(n - 2 * y);
    return ex != ey ? ex > ey : x < y;
  });
  LiChao hull(s_max);
  std::size_t next = 0;
  std::vector<double> sup_by_abs_s(static_cast<std::size_t>(n) + 1, 0.0);
  for (int s = s_max; s >= 0; --s) {
    while (next < order.size() && std::abs(n - 2 * order[next]) >= s) {
      const int d = order[next++];
      const auto i = static_cast<std::size_t>(d);
      if (2 * d <= n) {
        hull.insert(std::abs(sl.alpha[i]), std::abs(sl.gamma[i]) * d);
      } else {
        hull.insert(std::abs(sl.alpha[i] + sl.gamma[i]), std::abs(sl.gamma[i]) * (n - d));
      }
    }
    if ((s - n) % 2 != 0) continue;
    double m = next > 0 ? std::max(0.0, hull.query(s)) : 0.0;
    // outer band: (n - s)/2 < d < (n + s)/2, evaluated directly
    for (int d = (n - s) / 2 + 1; 2 * d < n + s; ++d) m = std::max(m, sup_at(sl, n, d, s));
    sup_by_abs_s[static_cast<std::size_t>(s)] = m;
  }
  return sup_by_abs_s;
}

}  // namespace

double radial_sup_rademacher_moment_quadratic(const RadialProfile& prof, double p) {
  check_moment(p);
  const int n = prof.dim();
  const Slopes sl = slopes_of(prof);
  std::vector<double> sup_by_abs_s(static_cast<std::size_t>(n) + 1, 0.0);
  for (int s = n % 2; s <= n; s += 2) {
    double m = 0.0;
    for (int d = 0; d <= n; ++d) m = std::max(m, sup_at(sl, n, d, s));
    sup_by_abs_s[static_cast<std::size_t>(s)] = m;
  }
  if (std::isinf(p)) return *std::max_element(sup_by_abs_s.begin(), sup_by_abs_s.end());
  return finish_moment(n, binomial_half_pmf(n), 0, n, sup_by_abs_s, p);
}

std::vector<double> radial_sup_by_sign_sum(const RadialProfile& prof) {
  const int n = prof.dim();
  return sup_table(slopes_of(prof), n, n);
}

double radial_sup_rademacher_moment(const RadialProfile& prof, double p) {
  check_moment(p);
  if (std::isinf(p)) return radial_sup_rademacher_moment_quadratic(prof, p);
  const int n = prof.dim();
  const Slopes sl = slopes_of(prof);

  // crude bound on every supremum, used to decide where the tail is negligible
  double bound = 0.0;
  for (int d = 0; d <= n; ++d) {
    const auto i = static_cast<std::size_t>(d);
    bound = std::max(bound, std::abs(sl.alpha[i]) + std::abs(sl.gamma[i]));
  }
  bound *= n;
  if (bound == 0.0) return 0.0;

  const std::vector<double> pmf = binomial_half_pmf(n);
  const int centre = n / 2;
  const int core = std::min(centre, static_cast<int>(std::ceil(10.0 * std::sqrt(static_cast<double>(n)) / 2.0)));
  auto sup_direct = [&](int s) {
    double m = 0.0;
    for (int d = 0; d <= n; ++d) m = std::max(m, sup_at(sl, n, d, s));
    return m;
  };
  // a lower estimate of the moment sum from a few central sign sums
  double central = 0.0;
  for (int P = centre; P <= std::min(n, centre + 2); ++P) {
    central += pmf[static_cast<std::size_t>(P)] * std::pow(sup_direct(std::abs(2 * P - n)) / bound, p);
  }
  int half_width = centre;
  if (central > 0.0) {
    const double log_cut = std::log(1e-18) + std::log(central);
    half_width = core;
    while (centre - half_width > 0 &&
           std::log(pmf[static_cast<std::size_t>(centre - half_width - 1)]) > log_cut) {
      ++half_width;
    }
    // include the symmetric partner of the widest kept weight as well
    half_width = std::min(centre, half_width + 1);
  }
  const int p_lo = centre - half_width;
  const int p_hi = n - p_lo;
  const int s_max = std::min(n, std::max(std::abs(2 * p_lo - n), std::abs(2 * p_hi - n)));

  const std::vector<double> sup_by_abs_s = sup_table(sl, n, s_max);
  return finish_moment(n, pmf, p_lo, p_hi, sup_by_abs_s, p);
}

}  // namespace hcube
