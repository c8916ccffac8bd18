#include "dcx/wavelet.hpp"

#include <cassert>

namespace dcx {

WaveletTree::WaveletTree(const std::vector<std::uint64_t>& values, unsigned width)
    : n_(values.size()), width_(width) {
  assert(width >= 1 && width <= 63);
  levels_.reserve(width);
  for (unsigned l = 0; l < width; ++l) levels_.emplace_back(n_);
  // top-down per-node stable partition
  struct Job {
    std::uint64_t lo;
    unsigned level;
    std::vector<std::uint64_t> vals;
  };
  std::vector<Job> stack;
  stack.push_back({0, 0, values});
  while (!stack.empty()) {
    Job j = std::move(stack.back());
    stack.pop_back();
    if (j.level == width_ || j.vals.empty()) continue;
    unsigned bit = width_ - 1 - j.level;
    std::vector<std::uint64_t> left, right;
    for (std::size_t i = 0; i < j.vals.size(); ++i) {
      if ((j.vals[i] >> bit) & 1) {
        levels_[j.level].set(j.lo + i);
        right.push_back(j.vals[i]);
      } else {
        left.push_back(j.vals[i]);
      }
    }
    std::uint64_t z = left.size();
    stack.push_back({j.lo, j.level + 1, std::move(left)});
    stack.push_back({j.lo + z, j.level + 1, std::move(right)});
  }
  for (auto& bv : levels_) bv.finalize();
}

std::uint64_t WaveletTree::access(std::uint64_t i) const {
  std::uint64_t lo = 0, hi = n_, v = 0;
  for (unsigned l = 0; l < width_; ++l) {
    const BitVector& bv = levels_[l];
    std::uint64_t z = bv.rank0(hi) - bv.rank0(lo);
    if (bv.get(i)) {
      v = (v << 1) | 1;
      i = lo + z + (bv.rank1(i) - bv.rank1(lo));
      lo = lo + z;
    } else {
      v <<= 1;
      i = lo + (bv.rank0(i) - bv.rank0(lo));
      hi = lo + z;
    }
  }
  return v;
}

std::uint64_t WaveletTree::count_rec(const Seg& s, std::uint64_t ylo, std::uint64_t yhi) const {
  if (s.b <= s.a || s.vhi < ylo || yhi < s.vlo) return 0;
  if (ylo <= s.vlo && s.vhi <= yhi) return s.b - s.a;
  const BitVector& bv = levels_[s.level];
  std::uint64_t z = bv.rank0(s.hi) - bv.rank0(s.lo);
  std::uint64_t a0 = bv.rank0(s.a) - bv.rank0(s.lo), b0 = bv.rank0(s.b) - bv.rank0(s.lo);
  std::uint64_t a1 = (s.a - s.lo) - a0, b1 = (s.b - s.lo) - b0;
  std::uint64_t vmid = s.vlo + (s.vhi - s.vlo) / 2;
  std::uint64_t res = 0;
  res += count_rec({s.lo, s.lo + z, s.lo + a0, s.lo + b0, s.vlo, vmid, s.level + 1}, ylo, yhi);
  res += count_rec({s.lo + z, s.hi, s.lo + z + a1, s.lo + z + b1, vmid + 1, s.vhi, s.level + 1},
                   ylo, yhi);
  return res;
}

std::uint64_t WaveletTree::count(std::uint64_t xlo, std::uint64_t xhi, std::uint64_t ylo,
                                 std::uint64_t yhi) const {
  if (n_ == 0 || xlo >= xhi) return 0;
  return count_rec({0, n_, xlo, xhi, 0, width_ >= 64 ? ~0ull : (1ull << width_) - 1, 0}, ylo, yhi);
}

std::uint64_t WaveletTree::map_up(unsigned level, std::uint64_t seg_lo, std::uint64_t parent_lo,
                                  bool right, std::uint64_t pos) const {
  const BitVector& bv = levels_[level];
  std::uint64_t off = pos - seg_lo;
  if (right) return bv.select1(bv.rank1(parent_lo) + off);
  return bv.select0(bv.rank0(parent_lo) + off);
}

void WaveletTree::report_rec(const Seg& s, std::uint64_t ylo, std::uint64_t yhi,
                             const std::function<void(std::uint64_t, std::uint64_t)>& emit) const {
  if (s.b <= s.a || s.vhi < ylo || yhi < s.vlo) return;
  if (s.level == width_) {
    for (std::uint64_t p = s.a; p < s.b; ++p) emit(p, s.vlo);
    return;
  }
  const BitVector& bv = levels_[s.level];
  std::uint64_t z = bv.rank0(s.hi) - bv.rank0(s.lo);
  std::uint64_t a0 = bv.rank0(s.a) - bv.rank0(s.lo), b0 = bv.rank0(s.b) - bv.rank0(s.lo);
  std::uint64_t a1 = (s.a - s.lo) - a0, b1 = (s.b - s.lo) - b0;
  std::uint64_t vmid = s.vlo + (s.vhi - s.vlo) / 2;
  auto lift_left = [&](std::uint64_t p, std::uint64_t v) {
    emit(map_up(s.level, s.lo, s.lo, false, p), v);
  };
  auto lift_right = [&](std::uint64_t p, std::uint64_t v) {
    emit(map_up(s.level, s.lo + z, s.lo, true, p), v);
  };
  report_rec({s.lo, s.lo + z, s.lo + a0, s.lo + b0, s.vlo, vmid, s.level + 1}, ylo, yhi,
             lift_left);
  report_rec({s.lo + z, s.hi, s.lo + z + a1, s.lo + z + b1, vmid + 1, s.vhi, s.level + 1}, ylo,
             yhi, lift_right);
}

void WaveletTree::report(std::uint64_t xlo, std::uint64_t xhi, std::uint64_t ylo,
                         std::uint64_t yhi,
                         const std::function<void(std::uint64_t, std::uint64_t)>& emit) const {
  if (n_ == 0 || xlo >= xhi) return;
  report_rec({0, n_, xlo, xhi, 0, width_ >= 64 ? ~0ull : (1ull << width_) - 1, 0}, ylo, yhi,
             emit);
}

WaveletTree WaveletTree::from_levels(std::uint64_t n, unsigned width,
                                     std::vector<BitVector> levels) {
  WaveletTree w;
  w.n_ = n;
  w.width_ = width;
  w.levels_ = std::move(levels);
  return w;
}

}  // namespace dcx
