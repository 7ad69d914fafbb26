#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lemni/sampling.hpp"
#include "lemni/stats.hpp"

using namespace lemni;

TEST_CASE("philox4x32-10 known answers") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are pure functions of seed, index and counter") {
  RngStream a = derive_substream(7, 3);
  RngStream b = derive_substream(7, 3);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  RngStream c = derive_substream(7, 3);
  for (int i = 0; i < 37; ++i) c.next_u64();
  RngStream d(7, 3, 37);
  CHECK(c.next_u64() == d.next_u64());
  CHECK(c.counter() == 38);
}

TEST_CASE("distinct trial indices give distinct streams") {
  RngStream s0 = derive_substream(42, 0);
  RngStream s1 = derive_substream(42, 1);
  int equal = 0;
  for (int i = 0; i < 64; ++i) equal += s0.next_u64() == s1.next_u64();
  CHECK(equal == 0);
}

TEST_CASE("lanes do not overlap the lane-0 prefix") {
  const RngStream base = derive_substream(42, 5);
  RngStream l0 = lane_of(base, Lane::Roots);
  RngStream l1 = lane_of(base, Lane::Solver);
  CHECK(l1.counter() == (std::uint64_t{1} << 56));
  int equal = 0;
  for (int i = 0; i < 64; ++i) equal += l0.next_u64() == l1.next_u64();
  CHECK(equal == 0);
}

TEST_CASE("uniform lies in [0, 1) with 53-bit granularity") {
  RngStream s(1, 2);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    CHECK(std::ldexp(u, 53) == std::floor(std::ldexp(u, 53)));
  }
}

TEST_CASE("disc samples are strictly inside and consume two uniforms") {
  RngStream s(11, 0);
  for (int i = 0; i < 100000; ++i) {
    const std::uint64_t before = s.counter();
    const DiscPoint p = sample_unit_disc(s);
    REQUIRE(p.norm() < 1.0);
    REQUIRE(std::isfinite(p.re));
    REQUIRE(s.counter() == before + 2);
  }
}

TEST_CASE("disc sample mean is centered") {
  RngStream s(2024, 0);
  const int N = 1000000;
  SummaryAccumulator x, y;
  for (int i = 0; i < N; ++i) {
    const DiscPoint p = sample_unit_disc(s);
    x.add(p.re);
    y.add(p.im);
  }
  // Per-axis variance of the uniform disc law is 1/4.
  const double se = 0.5 / std::sqrt(static_cast<double>(N));
  CHECK(std::abs(x.mean()) < 3 * se);
  CHECK(std::abs(y.mean()) < 3 * se);
  CHECK(x.variance() == doctest::Approx(0.25).epsilon(0.01));
}

TEST_CASE("mean of 1/(z0 - X) is conj(z0)") {
  RngStream s(99, 0);
  const std::complex<double> z0{0.3, 0.4};
  SummaryAccumulator re, im;
  for (int i = 0; i < 1000000; ++i) {
    const auto w = 1.0 / (z0 - sample_unit_disc(s).value());
    re.add(w.real());
    im.add(w.imag());
  }
  CHECK(std::abs(re.mean() - 0.3) < 3 * re.standard_error());
  CHECK(std::abs(im.mean() + 0.4) < 3 * im.standard_error());
}

TEST_CASE("chi-square uniformity over 64 equal-area annular sectors") {
  RngStream s(5, 0);
  const int N = 1000000;
  std::vector<int> counts(64, 0);
  for (int i = 0; i < N; ++i) {
    const DiscPoint p = sample_unit_disc(s);
    // Annulus k holds radii in [sqrt(k/8), sqrt((k+1)/8)).
    const int ring = std::min(7, static_cast<int>(p.norm() * 8.0));
    double angle = std::atan2(p.im, p.re);
    if (angle < 0) angle += 2.0 * std::numbers::pi;
    const int sector = std::min(7, static_cast<int>(angle / (2.0 * std::numbers::pi) * 8.0));
    ++counts[ring * 8 + sector];
  }
  const double expected = N / 64.0;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // Upper 1e-3 quantile of chi-square with 63 degrees of freedom.
  CHECK(chi2 < 103.442);
}

TEST_CASE("E log|r - X| = (r^2 - 1)/2") {
  for (double r : {0.0, 0.5, 0.9, 1.0}) {
    RngStream s(17, static_cast<std::uint64_t>(r * 100));
    SummaryAccumulator acc;
    for (int i = 0; i < 1000000; ++i) acc.add(std::log(std::abs(r - sample_unit_disc(s).value())));
    CAPTURE(r);
    CHECK(std::abs(acc.mean() - 0.5 * (r * r - 1.0)) < 3 * acc.standard_error());
  }
}

TEST_CASE("lower tail of log|r - X| is exp(2x)") {
  const double r = 0.5;
  const int N = 1000000;
  std::vector<double> samples(N);
  RngStream s(23, 0);
  for (auto& v : samples) v = std::log(std::abs(r - sample_unit_disc(s).value()));
  for (double x : {-2.0, -1.5, -1.0}) {
    int below = 0;
    for (double v : samples) below += v <= x;
    const Estimate e = binomial_estimate(below, N);
    CAPTURE(x);
    CHECK(std::abs(e.value - std::exp(2 * x)) < 3 * e.se);
  }
}

TEST_CASE("seed parsing") {
  CHECK(parse_seed("42") == 42);
  CHECK(parse_seed("0x2A") == 42);
  CHECK(parse_seed("0xffffffffffffffff") == ~std::uint64_t{0});
  CHECK_THROWS_AS(parse_seed(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_seed("12a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_seed("0x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_seed("-1"), std::invalid_argument);
}
