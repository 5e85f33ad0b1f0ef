#pragma once

#include <cstddef>
#include <vector>

namespace hcube {

/// K_k(d) = sum_{|A| = k} eps^A at any point of Hamming weight d, n coordinates.
///
/// For n <= kKrawtchoukExactDim the three-term recurrence
///   (k+1) K_{k+1} = (n - 2d) K_k - (n - k + 1) K_{k-1}
/// runs in 64-bit integers and is exact (|K_k(d)| <= C(n,k) < 2^62).
/// Above that the normalized polynomials kappa_k = K_k / C(n,k), which are
/// bounded by 1, are propagated in floating point and rescaled by C(n,k).
/// The floating path loses roughly k * eps relative accuracy per value and
/// overflows to +-inf once C(n,k) exceeds the double range (n around 1030).
double krawtchouk(int k, int d, int n);

inline constexpr int kKrawtchoukExactDim = 60;

/// Table of normalized Krawtchouk values kappa_k(d) = K_k(d) / C(n,k) for
/// all 0 <= k, d <= n. O(n^2) time and memory.
class KrawtchoukTable {
 public:
  explicit KrawtchoukTable(int n);

  int dim() const { return n_; }
  /// K_k(d) / C(n, k).
  double normalized(int k, int d) const {
    return table_[static_cast<std::size_t>(k) * static_cast<std::size_t>(n_ + 1) +
                  static_cast<std::size_t>(d)];
  }

 private:
  int n_;
  std::vector<double> table_;
};

/// log C(n, k) via lgamma.
double log_binomial(int n, int k);
/// Binomial(n, 1/2) probabilities C(n,d) 2^{-n}, d = 0..n, computed in log space.
std::vector<double> binomial_half_pmf(int n);

}  // namespace hcube
