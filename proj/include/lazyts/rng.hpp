#pragma once

#include <array>
#include <cstdint>

namespace lazyts {

// Philox4x32-10 block function (Salmon et al., Random123). Counter based:
// the output is a pure function of (counter, key), so streams are
// reproducible across platforms and never depend on call interleaving.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;
  static constexpr int kRounds = 10;

  static Counter block(Counter ctr, Key key);
};

// Stream identifiers, mixed into the counter so that instance generation
// and reward noise drawn from the same seed never overlap.
enum class StreamId : std::uint32_t {
  kInstance = 1,
  kReward = 2,
  kDiagnostics = 3,
};

// Sequential view over a Philox stream. Version 1 of the stream layout:
//   key     = (seed low 32 bits, seed high 32 bits)
//   counter = (block low, block high, stream id, 0)
// Uniform doubles take 53 bits from two consecutive words (first word high);
// Gaussians use the Marsaglia polar method, caching the second variate.
class RandomStream {
 public:
  static constexpr int kFormatVersion = 1;

  RandomStream(std::uint64_t seed, StreamId stream);

  std::uint32_t next_u32();
  // Uniform on the open interval (0, 1).
  double next_uniform();
  double next_gaussian();

 private:
  void refill();

  Philox4x32::Key key_;
  std::uint32_t stream_;
  std::uint64_t block_ = 0;
  Philox4x32::Counter buffer_{};
  int pos_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace lazyts
