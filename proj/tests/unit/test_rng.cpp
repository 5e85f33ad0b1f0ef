#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "hcube/parallel.hpp"
#include "hcube/rng.hpp"

using namespace hcube;

// Known-answer vectors distributed with Random123 (kat_vectors, philox4x32_10).
TEST(Philox, KnownAnswers) {
  using C = std::array<std::uint32_t, 4>;
  using K = std::array<std::uint32_t, 2>;
  EXPECT_EQ(philox4x32_10(C{0, 0, 0, 0}, K{0, 0}), (C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(philox4x32_10(C{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, K{0xffffffffu, 0xffffffffu}),
            (C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(philox4x32_10(C{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, K{0xa4093822u, 0x299f31d0u}),
            (C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(CounterRng, Reproducible) {
  CounterRng a(42, 3);
  CounterRng b(42, 3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
  CounterRng c(42, 4);
  CounterRng d(43, 3);
  CounterRng e(42, 3);
  EXPECT_NE(c(), e());
  EXPECT_NE(d(), CounterRng(42, 3)());
}

TEST(CounterRng, SeekMatchesSequentialDraws) {
  CounterRng a(7, 1);
  std::vector<std::uint64_t> seq;
  for (int i = 0; i < 9; ++i) seq.push_back(a());
  for (std::uint64_t pos : {0u, 1u, 4u, 7u}) {
    CounterRng b(7, 1);
    b.seek(pos);
    EXPECT_EQ(b(), seq[pos]);
    EXPECT_EQ(b.position(), pos + 1);
  }
}

TEST(CounterRng, DistributionMoments) {
  CounterRng r(11, 0);
  const int N = 200000;
  double su = 0.0;
  double sn = 0.0;
  double sn2 = 0.0;
  long signs = 0;
  for (int i = 0; i < N; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = r.normal();
    sn += z;
    sn2 += z * z;
    signs += r.sign();
  }
  EXPECT_NEAR(su / N, 0.5, 4 * std::sqrt(1.0 / 12 / N));
  EXPECT_NEAR(sn / N, 0.0, 4 / std::sqrt(static_cast<double>(N)));
  EXPECT_NEAR(sn2 / N, 1.0, 4 * std::sqrt(2.0 / N));
  EXPECT_LT(std::abs(static_cast<double>(signs)), 4 * std::sqrt(static_cast<double>(N)));
}

TEST(CounterRng, BelowIsInRangeAndCoversValues) {
  CounterRng r(5, 0);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto x = r.below(7);
    ASSERT_LT(x, 7u);
    seen.insert(x);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_THROW(r.below(0), std::invalid_argument);
}

TEST(CounterRng, DerivedStreamsDiffer) {
  std::set<std::uint64_t> ids;
  for (std::uint64_t i = 0; i < 1000; ++i) ids.insert(derive_stream(9, i));
  EXPECT_EQ(ids.size(), 1000u);
  EXPECT_EQ(derive_stream(9, 5), derive_stream(9, 5));
  EXPECT_NE(derive_stream(9, 5), derive_stream(10, 5));
}

TEST(Parallel, CoversEveryIndexAndRethrows) {
  std::vector<int> hit(257, 0);
  parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 3) throw std::runtime_error("boom");
               }),
               std::runtime_error);
  EXPECT_GE(thread_count(), 1);
}
