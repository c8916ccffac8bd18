#include "dcx/diffcover.hpp"

#include <algorithm>

namespace dcx {

DifferenceCover::DifferenceCover(std::uint32_t r) : r_(r) {
  if (r == 0) throw ConfigError("difference cover scale r must be >= 1");
  std::uint64_t s64 = 12ull * r * r + 18ull * r + 6;
  if (s64 > 0x7fffffffull) throw ConfigError("difference cover modulus overflows");
  s_ = static_cast<std::uint32_t>(s64);

  // b-sequence: r ones, r+1, then (2r+1) x r times, (4r+3) x (2r+1) times,
  // (2r+2) x (r+1) times, and r ones again; a_i = a_{i-1} + b_i.
  std::vector<std::uint32_t> b;
  b.reserve(6 * r + 3);
  for (std::uint32_t i = 0; i < r; ++i) b.push_back(1);
  b.push_back(r + 1);
  for (std::uint32_t i = r + 2; i <= 2 * r + 1; ++i) b.push_back(2 * r + 1);
  for (std::uint32_t i = 2 * r + 2; i <= 4 * r + 2; ++i) b.push_back(4 * r + 3);
  for (std::uint32_t i = 4 * r + 3; i <= 5 * r + 3; ++i) b.push_back(2 * r + 2);
  for (std::uint32_t i = 5 * r + 4; i <= 6 * r + 3; ++i) b.push_back(1);

  elements_.reserve(6 * r + 4);
  elements_.push_back(0);
  for (std::uint32_t bi : b) elements_.push_back(elements_.back() + bi);

  in_cover_.assign(s_, 0);
  for (std::uint32_t a : elements_) in_cover_[a % s_] = 1;
  for (std::uint32_t x = 0; x < s_; ++x)
    if (in_cover_[x]) residues_.push_back(x);

  // d[x]: smallest f in the cover with (f + x) mod s also in the cover.
  d_table_.assign(s_, 0);
  for (std::uint32_t x = 0; x < s_; ++x) {
    bool found = false;
    for (std::uint32_t f : residues_) {
      if (in_cover_[(f + x) % s_]) {
        d_table_[x] = f;
        found = true;
        break;
      }
    }
    if (!found) throw ConfigError("cover property violated (internal)");
  }
}

}  // namespace dcx
