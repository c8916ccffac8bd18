#ifndef DCX_DIFFCOVER_HPP
#define DCX_DIFFCOVER_HPP

#include <cstdint>
#include <vector>

#include "dcx/common.hpp"

namespace dcx {

// Colbourn-Ling difference cover modulo s = 12r^2+18r+6 with 6r+4 elements,
// plus the shift function h(i,j) mapping any two residues onto the cover.
//
// elements() keeps both endpoints 0 and s (they are congruent mod s);
// residues() is the deduplicated view that every consumer works with.
class DifferenceCover {
 public:
  // Builds the cover for scale r >= 1 and precomputes the d-table
  // (d[x] = f_x with e_x - f_x = x (mod s), smallest valid f_x).
  explicit DifferenceCover(std::uint32_t r);

  std::uint32_t r() const { return r_; }
  std::uint32_t modulus() const { return s_; }
  const std::vector<std::uint32_t>& elements() const { return elements_; }
  const std::vector<std::uint32_t>& residues() const { return residues_; }

  bool is_residue(std::uint64_t x) const { return in_cover_[x % s_]; }

  // shift h with (i+h) mod s and (j+h) mod s both in the cover; h < s
  std::uint32_t h(std::uint64_t i, std::uint64_t j) const {
    std::uint64_t im = i % s_, jm = j % s_;
    return static_cast<std::uint32_t>((d_table_[(jm + s_ - im) % s_] + s_ - im) % s_);
  }

  // Serializes r only; the cover is a pure function of r.
  std::uint32_t d_table_at(std::uint32_t x) const { return d_table_[x]; }

 private:
  std::uint32_t r_ = 0;
  std::uint32_t s_ = 0;
  std::vector<std::uint32_t> elements_;   // a_0..a_{6r+3}, sorted, a_0=0, a_last=s
  std::vector<std::uint32_t> residues_;   // deduplicated {a_i mod s}, sorted
  std::vector<char> in_cover_;            // membership bitmap over [0,s)
  std::vector<std::uint32_t> d_table_;    // d[x] = f_x
};

}  // namespace dcx

#endif  // DCX_DIFFCOVER_HPP
