#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "adembed/io.hpp"

namespace adembed {

/// m-bit sign code packed into 64-bit words, bit j in word j/64 at position
/// j%64. Tail bits past m are always zero so equality is bitwise.
class PackedCode {
 public:
  PackedCode() = default;
  explicit PackedCode(std::size_t length);

  // Throws ShapeError if the word count or the tail bits are wrong.
  static PackedCode from_words(std::size_t length, std::vector<std::uint64_t> words);

  std::size_t size() const noexcept { return length_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool bit(std::size_t j) const noexcept { return (words_[j >> 6] >> (j & 63)) & 1u; }
  void set(std::size_t j, bool value) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (j & 63);
    if (value) {
      words_[j >> 6] |= mask;
    } else {
      words_[j >> 6] &= ~mask;
    }
  }

  PackedCode complement() const;
  std::size_t popcount() const noexcept;

  bool operator==(const PackedCode&) const = default;

 private:
  std::size_t length_ = 0;
  std::vector<std::uint64_t> words_;
};

// bit j = 1 iff values[j] > 0; zero maps to 0.
PackedCode from_signs(std::span<const double> values);

struct HammingDistance {
  std::size_t raw = 0;
  double normalized = 0.0;
};

HammingDistance hamming(const PackedCode& a, const PackedCode& b);
std::size_t hamming_raw(const PackedCode& a, const PackedCode& b);

/// Bits needed to store an adaptive code: m sign bits plus the location set,
/// m + log2 C(m_pool, m), evaluated with lgamma.
double storage_bits(std::size_t m, std::size_t m_pool);

// Code length of the equal-storage baseline: ceil(storage_bits(m, m_pool)).
std::size_t equal_storage_length(std::size_t m, std::size_t m_pool);

// u32 length, then ceil(m/64) little-endian u64 words.
void write_code(io::ByteWriter& out, const PackedCode& code);
PackedCode read_code(io::ByteReader& in);

}  // namespace adembed
