#include "adembed/bitcode.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "adembed/errors.hpp"

namespace adembed {

namespace io {

void ByteWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
void ByteWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::varint(std::uint64_t v) {
  while (v >= 0x80) {
    bytes_.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  bytes_.push_back(static_cast<std::uint8_t>(v));
}

void ByteReader::need(std::size_t count) const {
  if (bytes_.size() - pos_ < count) throw FormatError("unexpected end of data", pos_);
}

std::uint8_t ByteReader::u8() {
  need(1);
  return bytes_[pos_++];
}

std::uint32_t ByteReader::u32() {
  need(4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
  pos_ += 4;
  return v;
}

std::uint64_t ByteReader::u64() {
  need(8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
  pos_ += 8;
  return v;
}

float ByteReader::f32() { return std::bit_cast<float>(u32()); }
double ByteReader::f64() { return std::bit_cast<double>(u64()); }

std::uint64_t ByteReader::varint() {
  const std::size_t start = pos_;
  std::uint64_t v = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    const std::uint8_t b = u8();
    v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
    if ((b & 0x80) == 0) return v;
  }
  throw FormatError("varint longer than 10 bytes", start);
}

std::string ByteReader::raw(std::size_t count) {
  need(count);
  std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), count);
  pos_ += count;
  return s;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace io

namespace {
std::size_t word_count(std::size_t length) { return (length + 63) / 64; }

std::uint64_t tail_mask(std::size_t length) {
  const std::size_t used = length & 63;
  return used == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << used) - 1;
}
}  // namespace

PackedCode::PackedCode(std::size_t length) : length_(length), words_(word_count(length), 0) {}

PackedCode PackedCode::from_words(std::size_t length, std::vector<std::uint64_t> words) {
  if (words.size() != word_count(length)) throw ShapeError("word count does not match code length");
  if (!words.empty() && (words.back() & ~tail_mask(length)) != 0) {
    throw ShapeError("non-zero bits past the end of the code");
  }
  PackedCode code;
  code.length_ = length;
  code.words_ = std::move(words);
  return code;
}

PackedCode PackedCode::complement() const {
  PackedCode out = *this;
  for (auto& w : out.words_) w = ~w;
  if (!out.words_.empty()) out.words_.back() &= tail_mask(length_);
  return out;
}

std::size_t PackedCode::popcount() const noexcept {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

PackedCode from_signs(std::span<const double> values) {
  if (values.empty()) throw ShapeError("cannot build a code from an empty vector");
  PackedCode code(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j] > 0.0) code.set(j, true);
  }
  return code;
}

std::size_t hamming_raw(const PackedCode& a, const PackedCode& b) {
  if (a.size() != b.size()) {
    throw ShapeError("hamming distance between codes of length " + std::to_string(a.size()) + " and " +
                     std::to_string(b.size()));
  }
  const auto wa = a.words();
  const auto wb = b.words();
  std::size_t total = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) total += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
  return total;
}

HammingDistance hamming(const PackedCode& a, const PackedCode& b) {
  const std::size_t raw = hamming_raw(a, b);
  return {raw, a.size() == 0 ? 0.0 : static_cast<double>(raw) / static_cast<double>(a.size())};
}

double storage_bits(std::size_t m, std::size_t m_pool) {
  if (m > m_pool) {
    throw DomainError("storage_bits: m=" + std::to_string(m) + " exceeds m_pool=" + std::to_string(m_pool));
  }
  if (m == 0 || m == m_pool) return static_cast<double>(m);
  const double log_binom = std::lgamma(static_cast<double>(m_pool) + 1.0) - std::lgamma(static_cast<double>(m) + 1.0) -
                           std::lgamma(static_cast<double>(m_pool - m) + 1.0);
  return static_cast<double>(m) + log_binom / std::log(2.0);
}

std::size_t equal_storage_length(std::size_t m, std::size_t m_pool) {
  return static_cast<std::size_t>(std::ceil(storage_bits(m, m_pool)));
}

void write_code(io::ByteWriter& out, const PackedCode& code) {
  if (code.size() > std::numeric_limits<std::uint32_t>::max()) throw ShapeError("code too long to serialize");
  out.u32(static_cast<std::uint32_t>(code.size()));
  for (std::uint64_t w : code.words()) out.u64(w);
}

PackedCode read_code(io::ByteReader& in) {
  const std::size_t start = in.offset();
  const std::size_t length = in.u32();
  std::vector<std::uint64_t> words(word_count(length));
  for (auto& w : words) w = in.u64();
  try {
    return PackedCode::from_words(length, std::move(words));
  } catch (const ShapeError& e) {
    throw FormatError(e.what(), start);
  }
}

}  // namespace adembed
