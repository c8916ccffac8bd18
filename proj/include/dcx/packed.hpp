#ifndef DCX_PACKED_HPP
#define DCX_PACKED_HPP

#include <bit>
#include <cstdint>
#include <vector>

#include "dcx/common.hpp"

namespace dcx {

// Fixed-width bit-packed symbol sequence, MSB-first, so that
// integer order of any aligned window equals lexicographic order of
// the symbols it covers. Reads past the end yield 0 (the sentinel).
class PackedSymbols {
 public:
  PackedSymbols() = default;
  PackedSymbols(unsigned bits_per_symbol, std::uint64_t count)
      : bits_(bits_per_symbol), count_(count) {
    words_.assign((count * bits_ + 127) / 64 + 2, 0);
  }

  void set(std::uint64_t i, std::uint64_t value) {
    std::uint64_t g = i * bits_;
    std::uint64_t q = g >> 6;
    unsigned off = static_cast<unsigned>(g & 63);
    if (off + bits_ <= 64) {
      words_[q] |= value << (64 - bits_ - off);
    } else {
      unsigned spill = off + bits_ - 64;
      words_[q] |= value >> spill;
      words_[q + 1] |= value << (64 - spill);
    }
  }

  std::uint64_t get(std::uint64_t i) const {
    return window(i) >> (64 - bits_);
  }

  // 64 bits starting at symbol i, zero-padded past the buffer.
  std::uint64_t window(std::uint64_t i) const {
    std::uint64_t g = i * bits_;
    std::uint64_t q = g >> 6;
    unsigned off = static_cast<unsigned>(g & 63);
    std::uint64_t w1 = q < words_.size() ? words_[q] : 0;
    if (off == 0) return w1;
    std::uint64_t w2 = q + 1 < words_.size() ? words_[q + 1] : 0;
    return (w1 << off) | (w2 >> (64 - off));
  }

  unsigned bits() const { return bits_; }
  std::uint64_t size() const { return count_; }
  unsigned symbols_per_word() const { return 64 / bits_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  unsigned bits_ = 1;
  std::uint64_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

// Common-prefix length of the zero-padded streams a[pa..] and b[pb..],
// truncated at cap. Word-at-a-time: XOR plus leading-zero count.
inline std::uint64_t packed_lcp(const PackedSymbols& a, std::uint64_t pa,
                                const PackedSymbols& b, std::uint64_t pb,
                                std::uint64_t cap) {
  unsigned bits = a.bits();
  unsigned spw = 64 / bits;
  std::uint64_t k = 0;
  while (k < cap) {
    std::uint64_t wa = a.window(pa + k);
    std::uint64_t wb = b.window(pb + k);
    if (wa == wb) {
      k += spw;
      continue;
    }
    unsigned d = static_cast<unsigned>(std::countl_zero(wa ^ wb)) / bits;
    if (d >= spw) {  // difference only in the trailing partial symbol
      k += spw;
      continue;
    }
    k += d;
    break;
  }
  return k < cap ? k : cap;
}

}  // namespace dcx

#endif  // DCX_PACKED_HPP
