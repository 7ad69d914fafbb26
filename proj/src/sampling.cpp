#include "lemni/sampling.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lemni {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t p = std::uint64_t{a} * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t block = counter_ >> 1;
  if (block != cached_block_) {
    cache_ = philox4x32_10(
        {static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
         static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
        {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
    cached_block_ = block;
  }
  const unsigned w = (counter_ & 1u) ? 2u : 0u;
  ++counter_;
  return (std::uint64_t{cache_[w + 1]} << 32) | cache_[w];
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

RngStream RngStream::lane(std::uint8_t lane) const {
  return RngStream(seed_, stream_, std::uint64_t{lane} << 56);
}

RngStream derive_substream(std::uint64_t master_seed, std::uint64_t trial_index) {
  return RngStream(master_seed, trial_index, 0);
}

DiscPoint sample_unit_disc(RngStream& stream) {
  const double u1 = stream.uniform();
  const double u2 = stream.uniform();
  const double radius = std::sqrt(u1);
  const double angle = 2.0 * std::numbers::pi * u2;
  DiscPoint p{radius * std::cos(angle), radius * std::sin(angle)};
  // sqrt(1 - 2^-53) rounds to 1; pull such points back inside.
  while (p.norm() >= 1.0) {
    p.re *= 1.0 - 0x1.0p-52;
    p.im *= 1.0 - 0x1.0p-52;
  }
  return p;
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    first += 2;
    base = 16;
  }
  auto [ptr, ec] = std::from_chars(first, last, value, base);
  if (ec != std::errc{} || ptr != last || first == last)
    throw std::invalid_argument("invalid seed '" + text + "'");
  return value;
}

}  // namespace lemni
