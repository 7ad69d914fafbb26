#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>

namespace lemni {

/// A point of the complex plane expected to lie in the closed unit disc.
struct DiscPoint {
  double re = 0.0;
  double im = 0.0;

  std::complex<double> value() const { return {re, im}; }
  double norm() const { return re * re + im * im; }
};

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Counter-based random stream.
///
/// The k-th 64-bit output of the stream (k = counter) is a pure function of
/// (master_seed, stream_index, k):
///
///   block  = philox4x32_10({lo(k/2), hi(k/2), lo(stream), hi(stream)},
///                          {lo(seed), hi(seed)})
///   output = k even ? block[1]:block[0] : block[3]:block[2]   (hi:lo)
///
/// Uniform doubles take the top 53 bits of one output. The top byte of the
/// counter selects a lane (see `lane`), so one trial stream can feed several
/// independent consumers without any of them shifting the others.
///
/// This algorithm is part of the output format: changing it changes every
/// recorded experiment.
class RngStream {
 public:
  RngStream() = default;
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index,
            std::uint64_t counter = 0)
      : seed_(master_seed), stream_(stream_index), counter_(counter) {}

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Fresh stream on the same (seed, index) whose counter starts at
  /// `lane << 56`. Lane 0 is the stream's own start.
  RngStream lane(std::uint8_t lane) const;

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::uint64_t counter_ = 0;
  std::uint64_t cached_block_ = ~std::uint64_t{0};
  std::array<std::uint32_t, 4> cache_{};
};

/// Lanes used by the per-trial pipeline.
enum class Lane : std::uint8_t { Roots = 0, Solver = 1, Area = 2, Extra = 3 };

inline RngStream lane_of(const RngStream& s, Lane l) {
  return s.lane(static_cast<std::uint8_t>(l));
}

/// Stream for trial `trial_index` of an experiment seeded with `master_seed`.
RngStream derive_substream(std::uint64_t master_seed, std::uint64_t trial_index);

/// Uniform point on the open unit disc by the polar method: radius sqrt(U1),
/// angle 2*pi*U2. Always consumes exactly two uniforms.
DiscPoint sample_unit_disc(RngStream& stream);

/// Parses a seed given as decimal or 0x-prefixed hex. Throws
/// std::invalid_argument on malformed input.
std::uint64_t parse_seed(const std::string& text);

}  // namespace lemni
