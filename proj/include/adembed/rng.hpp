#pragma once

#include <array>
#include <cstdint>

namespace adembed {

// Philox4x32-10 block cipher used as a counter-based generator.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Independent stream families derived from one master seed.
enum class StreamDomain : std::uint64_t {
  projection_row = 0,
  dither = 1,
  dataset = 2,
  reference = 3,
  trial = 4,
  task = 5,
};

/// Random stream addressed by (seed, domain, index).
///
/// The Philox key is a hash of (seed, domain); the upper half of the
/// 128-bit counter holds `index` and the lower half counts blocks. Any
/// stream can therefore be regenerated in isolation, on any thread, and
/// produces the same sequence.
///
/// Gaussian variates use the Box-Muller transform on two 53-bit uniforms;
/// both outputs of a pair are consumed in order.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, StreamDomain domain, std::uint64_t index) noexcept;

  std::uint64_t next_u64() noexcept;
  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  double gaussian() noexcept;

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t index_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace adembed
