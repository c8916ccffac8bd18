#ifndef DCX_TEXTMODEL_HPP
#define DCX_TEXTMODEL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "dcx/diffcover.hpp"
#include "dcx/packed.hpp"

namespace dcx {

// The text plus its sampling geometry: alphabet mapping, meta-symbol
// packing, difference-cover block layout and the selected-position set.
//
// Symbols are stored shifted by +1 so that 0 acts as a virtual sentinel
// smaller than every real symbol; positions >= n read as sentinel.
class TextModel {
 public:
  TextModel(const std::vector<Symbol>& codes, std::uint32_t sigma,
            std::optional<std::uint32_t> r_override = std::nullopt);

  Pos n() const { return n_; }
  std::uint32_t sigma() const { return sigma_; }
  unsigned bits() const { return bits_; }
  unsigned meta_width() const { return m_; }
  const DifferenceCover& cover() const { return dc_; }
  std::uint32_t s() const { return dc_.modulus(); }
  std::uint32_t r() const { return dc_.r(); }
  std::uint32_t max_gap() const { return 4 * dc_.r() + 3; }

  // true when n < s: the sampled machinery is meaningless below one block
  bool tiny() const { return tiny_; }

  const std::vector<Pos>& selected() const { return selected_; }
  const std::vector<std::uint32_t>& run_len_before() const { return run_len_; }

  bool is_selected(Pos p) const { return p < n_ && dc_.is_residue(p % s()); }

  // index of a selected position within selected() in O(1)
  std::uint64_t selected_index(Pos p) const {
    return (p / s()) * residues_per_block_ + resid_rank_[p % s()];
  }

  Symbol symbol_at(Pos p) const {  // unshifted code; p < n
    return static_cast<Symbol>(packed_.get(p)) - 1;
  }

  // packed meta-symbol of the m symbols starting at pos (sentinel-padded);
  // integer order equals lexicographic order of the chunks
  std::uint64_t meta_at(Pos pos) const {
    unsigned mb = m_ * bits_;
    std::uint64_t w = packed_.window(pos);
    return mb == 64 ? w : w >> (64 - mb);
  }

  // |LCP(T[p1..], T[p2..])| under sentinel padding, truncated at cap
  std::uint64_t word_lcp(Pos p1, Pos p2, std::uint64_t cap) const {
    if (p1 == p2) {
      std::uint64_t rest = p1 <= n_ ? n_ - p1 : 0;
      return cap < rest ? cap : rest;
    }
    return packed_lcp(packed_, p1, packed_, p2, cap);
  }

  // LCP between the text at tpos and a packed query at qpos, capped
  std::uint64_t lcp_vs(const PackedSymbols& q, Pos qpos, Pos tpos,
                       std::uint64_t cap) const {
    return packed_lcp(q, qpos, packed_, tpos, cap);
  }

  // packs real codes with the same shifted layout as the text
  PackedSymbols pack_query(const std::vector<Symbol>& codes) const;

  const PackedSymbols& packed() const { return packed_; }

 private:
  Pos n_ = 0;
  std::uint32_t sigma_ = 0;
  unsigned bits_ = 1;  // per stored symbol (codes shifted by +1)
  unsigned m_ = 1;     // meta-symbol width in symbols
  DifferenceCover dc_;
  PackedSymbols packed_;
  bool tiny_ = false;
  std::uint32_t residues_per_block_ = 0;
  std::vector<std::int32_t> resid_rank_;  // residue -> rank, -1 otherwise
  std::vector<Pos> selected_;
  std::vector<std::uint32_t> run_len_;  // run of non-selected before selected_[k]
};

}  // namespace dcx

#endif  // DCX_TEXTMODEL_HPP
