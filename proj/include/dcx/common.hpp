#ifndef DCX_COMMON_HPP
#define DCX_COMMON_HPP

#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcx {

using Symbol = std::uint32_t;  // alphabet code in [0, sigma)
using Pos = std::uint64_t;     // text position
using LeafRank = std::uint32_t;

// smallest k with 2^k >= x (x >= 1)
inline unsigned ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0 : std::bit_width(x - 1);
}

// sigma^e, or nullopt-style failure (returns false) on 64-bit overflow
inline bool checked_pow(std::uint64_t base, unsigned e, std::uint64_t& out) {
  std::uint64_t v = 1;
  while (e--) {
    if (base != 0 && v > std::numeric_limits<std::uint64_t>::max() / base) return false;
    v *= base;
  }
  out = v;
  return true;
}

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace dcx

#endif  // DCX_COMMON_HPP
