#ifndef DCX_WAVELET_HPP
#define DCX_WAVELET_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "dcx/bitvector.hpp"

namespace dcx {

// Pointerless wavelet tree over a sequence of `width`-bit values.
// One bitvector per level; each node's segment is partitioned in place
// by the current bit, so child segments are derived with rank queries.
class WaveletTree {
 public:
  WaveletTree() = default;
  WaveletTree(const std::vector<std::uint64_t>& values, unsigned width);

  std::uint64_t size() const { return n_; }
  unsigned width() const { return width_; }

  std::uint64_t access(std::uint64_t i) const;

  // number of positions in [xlo, xhi) holding a value in [ylo, yhi]
  std::uint64_t count(std::uint64_t xlo, std::uint64_t xhi, std::uint64_t ylo,
                      std::uint64_t yhi) const;

  // emit(position, value) for each match of the same rectangle
  void report(std::uint64_t xlo, std::uint64_t xhi, std::uint64_t ylo, std::uint64_t yhi,
              const std::function<void(std::uint64_t, std::uint64_t)>& emit) const;

  const std::vector<BitVector>& levels() const { return levels_; }
  static WaveletTree from_levels(std::uint64_t n, unsigned width, std::vector<BitVector> levels);

 private:
  std::uint64_t n_ = 0;
  unsigned width_ = 0;
  std::vector<BitVector> levels_;

  struct Seg {
    std::uint64_t lo, hi;      // node segment at this level
    std::uint64_t a, b;        // query x-range inside the segment
    std::uint64_t vlo, vhi;    // value range of the node
    unsigned level;
  };
  std::uint64_t count_rec(const Seg& s, std::uint64_t ylo, std::uint64_t yhi) const;
  void report_rec(const Seg& s, std::uint64_t ylo, std::uint64_t yhi,
                  const std::function<void(std::uint64_t, std::uint64_t)>& emit) const;
  std::uint64_t map_up(unsigned level, std::uint64_t seg_lo, std::uint64_t parent_lo, bool right,
                       std::uint64_t pos) const;
};

}  // namespace dcx

#endif  // DCX_WAVELET_HPP
