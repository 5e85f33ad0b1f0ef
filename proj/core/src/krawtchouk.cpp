#include "hcube/krawtchouk.hpp"

#include <cmath>
#include <stdexcept>

namespace hcube {

__extension__ using i128 = __int128;


namespace {

void check_args(int k, int d, int n) {
  if (n < 0 || k < 0 || d < 0 || k > n || d > n) {
    throw std::invalid_argument("Krawtchouk arguments must satisfy 0 <= k, d <= n");
  }
}

double exact_krawtchouk(int k, int d, int n) {
  i128 prev = 1;        // K_0
  i128 cur = n - 2 * d; // K_1
  if (k == 0) return 1.0;
  for (int j = 1; j < k; ++j) {
    const i128 next = (static_cast<i128>(n - 2 * d) * cur - static_cast<i128>(n - j + 1) * prev) / (j + 1);
    prev = cur;
    cur = next;
  }
  return static_cast<double>(cur);
}

}  // namespace

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -INFINITY;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

std::vector<double> binomial_half_pmf(int n) {
  if (n < 0) throw std::invalid_argument("binomial dimension must be nonnegative");
  // ratios C(n, d+1)/C(n, d) walked outward from the centre, then normalized
  const int c = n / 2;
  std::vector<long double> w(static_cast<std::size_t>(n) + 1, 0.0L);
  w[static_cast<std::size_t>(c)] = 1.0L;
  for (int d = c; d < n; ++d) {
    w[static_cast<std::size_t>(d) + 1] = w[static_cast<std::size_t>(d)] * (n - d) / (d + 1);
  }
  for (int d = c; d > 0; --d) {
    w[static_cast<std::size_t>(d) - 1] = w[static_cast<std::size_t>(d)] * d / (n - d + 1);
  }
  // tails first so the small terms are not swamped
  long double total = 0.0L;
  for (int k = 0; k <= c; ++k) {
    total += w[static_cast<std::size_t>(k)];
    if (n - k != k) total += w[static_cast<std::size_t>(n - k)];
  }
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1);
  for (int d = 0; d <= n; ++d) pmf[static_cast<std::size_t>(d)] = static_cast<double>(w[static_cast<std::size_t>(d)] / total);
  return pmf;
}

KrawtchoukTable::KrawtchoukTable(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("Krawtchouk table dimension must be nonnegative");
  const auto stride = static_cast<std::size_t>(n) + 1;
  table_.assign(stride * stride, 0.0);
  // kappa_{k+1}(d) (n - k) = (n - 2d) kappa_k(d) - k kappa_{k-1}(d), run for
  // d <= n/2 and reflected with kappa_k(n - d) = (-1)^k kappa_k(d).
  for (int d = 0; 2 * d <= n; ++d) {
    long double prev = 1.0L;
    long double cur = n == 0 ? 1.0L : static_cast<long double>(n - 2 * d) / n;
    table_[static_cast<std::size_t>(d)] = 1.0;
    if (n >= 1) table_[stride + static_cast<std::size_t>(d)] = static_cast<double>(cur);
    for (int k = 1; k < n; ++k) {
      const long double next = (static_cast<long double>(n - 2 * d) * cur - k * prev) / (n - k);
      prev = cur;
      cur = next;
      table_[static_cast<std::size_t>(k + 1) * stride + static_cast<std::size_t>(d)] = static_cast<double>(cur);
    }
  }
  for (int d = n / 2 + 1; d <= n; ++d) {
    for (int k = 0; k <= n; ++k) {
      const double mirrored = table_[static_cast<std::size_t>(k) * stride + static_cast<std::size_t>(n - d)];
      table_[static_cast<std::size_t>(k) * stride + static_cast<std::size_t>(d)] = (k % 2 ? -mirrored : mirrored);
    }
  }
}

double krawtchouk(int k, int d, int n) {
  check_args(k, d, n);
  if (n <= kKrawtchoukExactDim) return exact_krawtchouk(k, d, n);
  long double prev = 1.0L;
  long double cur = static_cast<long double>(n - 2 * d) / n;
  if (k == 0) return 1.0;
  for (int j = 1; j < k; ++j) {
    const long double next = (static_cast<long double>(n - 2 * d) * cur - j * prev) / (n - j);
    prev = cur;
    cur = next;
  }
  return static_cast<double>(cur * std::exp(static_cast<long double>(log_binomial(n, k))));
}

}  // namespace hcube
