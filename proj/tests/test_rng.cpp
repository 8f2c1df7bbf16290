#include "doctest.h"

#include <array>
#include <cmath>
#include <vector>

#include "bondsim/core/rng.hpp"

using namespace bondsim;

TEST_CASE("identical (seed, stream) reproduces the same sequence") {
  RngStream a(123, 5);
  RngStream b(123, 5);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different stream ids give independent sequences") {
  RngStream a(123, 5);
  RngStream b(123, 6);
  int same = 0;
  for (int i = 0; i < 1000; ++i) {
    if (a.next_u64() == b.next_u64()) ++same;
  }
  CHECK(same == 0);
}

TEST_CASE("uniform_int degenerate range always returns the bound") {
  RngStream r(9, 0);
  for (int i = 0; i < 100; ++i) CHECK(r.uniform_int(0, 0) == 0);
}

TEST_CASE("uniform_int stays within an inclusive range") {
  RngStream r(9, 1);
  std::int64_t lo = 1 << 30, hi = -1;
  for (int i = 0; i < 200000; ++i) {
    const auto v = r.uniform_int(0, 511);
    CHECK(v >= 0);
    CHECK(v <= 511);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo == 0);
  CHECK(hi == 511);
}

TEST_CASE("backoff draw over [0,15] is uniform within 3 sigma per bin") {
  RngStream r(2024, 0);
  constexpr int kDraws = 1000000;
  std::array<int, 16> counts{};
  for (int i = 0; i < kDraws; ++i) counts[r.uniform_int(0, 15)]++;
  const double expected = kDraws / 16.0;
  const double sigma = std::sqrt(kDraws * (1.0 / 16.0) * (15.0 / 16.0));
  for (int c : counts) {
    CHECK(std::abs(c - expected) <= 3.0 * sigma);
  }
}

TEST_CASE("uniform_real covers the half-open interval") {
  RngStream r(77, 0);
  double lo = 1e9, hi = -1e9;
  for (int i = 0; i < 100000; ++i) {
    const double v = r.uniform_real(10.0, 30.0);
    CHECK(v >= 10.0);
    CHECK(v < 30.0);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo < 10.1);
  CHECK(hi > 29.9);
}
