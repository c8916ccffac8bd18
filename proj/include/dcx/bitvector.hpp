#ifndef DCX_BITVECTOR_HPP
#define DCX_BITVECTOR_HPP

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace dcx {

// Plain bitvector with per-word cumulative rank; select by binary
// search over the rank superblocks.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::uint64_t n) : n_(n), words_((n + 63) / 64, 0) {}
  BitVector(std::uint64_t n, std::vector<std::uint64_t> words)
      : n_(n), words_(std::move(words)) {
    assert(words_.size() == (n_ + 63) / 64);
    finalize();
  }

  static BitVector from_parts(std::uint64_t n, std::vector<std::uint64_t> words,
                              std::vector<std::uint64_t> cum) {
    BitVector bv;
    bv.n_ = n;
    bv.words_ = std::move(words);
    bv.cum_ = std::move(cum);
    return bv;
  }

  void set(std::uint64_t i) { words_[i >> 6] |= 1ull << (i & 63); }

  // call once after all set() calls
  void finalize() {
    cum_.resize(words_.size() + 1);
    cum_[0] = 0;
    for (std::size_t w = 0; w < words_.size(); ++w)
      cum_[w + 1] = cum_[w] + std::popcount(words_[w]);
  }

  bool get(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  std::uint64_t size() const { return n_; }
  std::uint64_t ones() const { return cum_.back(); }

  // number of 1s in [0, i)
  std::uint64_t rank1(std::uint64_t i) const {
    std::uint64_t w = i >> 6;
    std::uint64_t r = cum_[w];
    if (i & 63) r += std::popcount(words_[w] & ((1ull << (i & 63)) - 1));
    return r;
  }
  std::uint64_t rank0(std::uint64_t i) const { return i - rank1(i); }

  // position of the k-th 1 (k 0-based); k < ones()
  std::uint64_t select1(std::uint64_t k) const {
    std::size_t lo = 0, hi = words_.size();  // first word with cum > k
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      (cum_[mid] <= k ? lo : hi) = mid;
    }
    std::uint64_t rem = k - cum_[lo], w = words_[lo];
    for (std::uint64_t b = 0;; ++b)
      if ((w >> b) & 1) {
        if (rem-- == 0) return lo * 64 + b;
      }
  }

  // position of the k-th 0 (k 0-based)
  std::uint64_t select0(std::uint64_t k) const {
    std::size_t lo = 0, hi = words_.size();
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      (mid * 64 - cum_[mid] <= k ? lo : hi) = mid;
    }
    std::uint64_t rem = k - (lo * 64 - cum_[lo]), w = words_[lo];
    for (std::uint64_t b = 0;; ++b)
      if (!((w >> b) & 1)) {
        if (rem-- == 0) return lo * 64 + b;
      }
  }

  const std::vector<std::uint64_t>& words() const { return words_; }
  const std::vector<std::uint64_t>& superblocks() const { return cum_; }

 private:
  std::uint64_t n_ = 0;
  std::vector<std::uint64_t> words_;
  std::vector<std::uint64_t> cum_;
};

}  // namespace dcx

#endif  // DCX_BITVECTOR_HPP
