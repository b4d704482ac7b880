#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "adembed/bitcode.hpp"
#include "adembed/errors.hpp"
#include "adembed/io.hpp"
#include "adembed/rng.hpp"

using namespace adembed;

namespace {

PackedCode random_code(std::size_t length, std::uint64_t index) {
  CounterStream s(77, StreamDomain::trial, index);
  PackedCode c(length);
  for (std::size_t j = 0; j < length; ++j) c.set(j, s.next_u64() & 1u);
  return c;
}

// log2 of an exact binomial coefficient via big integers.
double exact_log2_binomial(unsigned n, unsigned k) {
  using boost::multiprecision::cpp_int;
  cpp_int c = 1;
  for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(c));
  // Keep the top 60 bits for a double-precision mantissa.
  const unsigned shift = bits > 60 ? bits - 60 : 0;
  const double top = static_cast<double>(static_cast<std::uint64_t>(c >> shift));
  return std::log2(top) + shift;
}

}  // namespace

TEST(FromSigns, Examples) {
  const std::vector<double> v = {1.0, -2.0, 0.5};
  const auto c = from_signs(v);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_TRUE(c.bit(0));
  EXPECT_FALSE(c.bit(1));
  EXPECT_TRUE(c.bit(2));
  const std::vector<double> zero = {0.0};
  EXPECT_FALSE(from_signs(zero).bit(0));
}

TEST(FromSigns, NegationFlipsNonZeroPositions) {
  std::vector<double> v(130);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (i % 7 == 0) ? 0.0 : std::sin(1.0 + i);
  std::vector<double> neg(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
  const auto a = from_signs(v), b = from_signs(neg);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) EXPECT_NE(a.bit(i), b.bit(i)) << i;
    else EXPECT_EQ(a.bit(i), b.bit(i)) << i;
  }
}

TEST(FromSigns, EmptyIsShapeError) { EXPECT_THROW(from_signs(std::vector<double>{}), ShapeError); }

TEST(Hamming, IdenticalAndComplement) {
  const auto a = random_code(64, 1);
  EXPECT_EQ(hamming(a, a).raw, 0u);
  EXPECT_EQ(hamming(a, a).normalized, 0.0);
  const auto d = hamming(a, a.complement());
  EXPECT_EQ(d.raw, 64u);
  EXPECT_EQ(d.normalized, 1.0);
}

TEST(Hamming, ComplementKeepsTailClear) {
  const auto a = random_code(70, 2);
  const auto c = a.complement();
  EXPECT_EQ(c.words().back() >> 6, 0u);
  EXPECT_EQ(a.popcount() + c.popcount(), 70u);
}

TEST(Hamming, MatchesBitLoop) {
  for (std::size_t len : {1u, 63u, 64u, 65u, 100u, 1000u}) {
    const auto a = random_code(len, 10 + len), b = random_code(len, 20 + len);
    std::size_t loop = 0;
    for (std::size_t j = 0; j < len; ++j) loop += a.bit(j) != b.bit(j);
    EXPECT_EQ(hamming_raw(a, b), loop);
    EXPECT_DOUBLE_EQ(hamming(a, b).normalized, static_cast<double>(loop) / len);
  }
}

TEST(Hamming, LengthMismatchIsShapeError) {
  EXPECT_THROW(hamming(PackedCode(10), PackedCode(11)), ShapeError);
}

TEST(PackedCode, FromWordsValidates) {
  EXPECT_THROW(PackedCode::from_words(10, {0, 0}), ShapeError);
  EXPECT_THROW(PackedCode::from_words(10, {std::uint64_t{1} << 10}), ShapeError);
  const auto c = PackedCode::from_words(10, {0x3ff});
  EXPECT_EQ(c.popcount(), 10u);
}

TEST(StorageBits, Examples) {
  EXPECT_NEAR(storage_bits(2, 4), 2.0 + std::log2(6.0), 1e-10);
  EXPECT_EQ(storage_bits(7, 7), 7.0);
  EXPECT_EQ(storage_bits(0, 9), 0.0);
  EXPECT_NEAR(storage_bits(512, 8192), 3269.0, 1.0);
  EXPECT_THROW(storage_bits(5, 4), DomainError);
}

TEST(StorageBits, MatchesExactBinomial) {
  for (auto [m, pool] : std::vector<std::pair<unsigned, unsigned>>{
           {2, 4}, {32, 1024}, {64, 1024}, {128, 1024}, {256, 1024}, {512, 8192}, {800, 5000}, {1, 2}}) {
    const double exact = m + exact_log2_binomial(pool, m);
    EXPECT_NEAR(storage_bits(m, pool), exact, 1e-9 * exact) << m << "/" << pool;
  }
}

TEST(StorageBits, EqualStorageLengthAtClassifierScale) {
  const double bits = storage_bits(32, 1024);
  EXPECT_GE(bits, 233.0);
  EXPECT_LT(bits, 234.0);
  EXPECT_EQ(equal_storage_length(32, 1024), 234u);
}

TEST(CodeIo, RoundTripAndTruncation) {
  const auto a = random_code(131, 5);
  io::ByteWriter w;
  write_code(w, a);
  const auto bytes = w.bytes();
  io::ByteReader r(bytes);
  EXPECT_EQ(read_code(r), a);
  EXPECT_EQ(r.remaining(), 0u);
  const std::vector<std::uint8_t> cut(bytes.begin(), bytes.end() - 3);
  io::ByteReader rc(cut);
  EXPECT_THROW(read_code(rc), FormatError);
}

TEST(CodeIo, VarintRoundTrip) {
  io::ByteWriter w;
  const std::vector<std::uint64_t> values = {0, 1, 127, 128, 300, 1ull << 40, ~0ull};
  for (auto v : values) w.varint(v);
  io::ByteReader r(w.bytes());
  for (auto v : values) EXPECT_EQ(r.varint(), v);
}
