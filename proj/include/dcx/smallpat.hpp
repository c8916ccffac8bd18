#ifndef DCX_SMALLPAT_HPP
#define DCX_SMALLPAT_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "dcx/textmodel.hpp"

namespace dcx {

// Dedicated index for patterns of length <= p = 4r+3: the text is cut
// into length-2p overlapping blocks A[i] = T[ip..ip+2p), every block
// content is tabulated, and every in-block substring starting in the
// first p offsets points back at its blocks. Counting is one lookup;
// locating walks the precomputed (block, offset) pairs.
class SmallPatternIndex {
 public:
  struct Pair {
    std::uint32_t alpha;  // distinct-block id
    std::uint16_t offset;
  };

  static SmallPatternIndex build(const TextModel& tm);

  std::uint32_t p() const { return p_; }
  bool direct() const { return direct_; }

  std::uint64_t count(const std::vector<Symbol>& q) const;
  std::vector<Pos> locate(const std::vector<Symbol>& q) const;

  // serialization access
  std::uint32_t block_count() const { return static_cast<std::uint32_t>(block_of_.size()); }
  const std::vector<std::uint32_t>& block_of() const { return block_of_; }
  const std::vector<std::uint32_t>& rep_block() const { return rep_block_; }
  static SmallPatternIndex rebuild(const TextModel& tm, std::vector<std::uint32_t> block_of,
                                   std::vector<std::uint32_t> rep_block);

 private:
  std::uint32_t p_ = 0;
  Pos n_ = 0;
  std::uint32_t sigma_ = 0;
  bool direct_ = false;

  std::vector<std::uint32_t> block_of_;    // block index -> distinct id
  std::vector<std::uint32_t> rep_block_;   // distinct id -> first block index
  std::vector<std::vector<std::uint32_t>> postings_;  // distinct id -> blocks, ascending

  // direct mode: per length j, flat arrays over the sigma^j universe
  std::vector<std::vector<std::uint64_t>> count_direct_;
  std::vector<std::vector<std::vector<Pair>>> pairs_direct_;
  // associative mode, keyed by the raw symbol bytes
  std::vector<std::unordered_map<std::string, std::uint64_t>> count_assoc_;
  std::vector<std::unordered_map<std::string, std::vector<Pair>>> pairs_assoc_;

  void build_tables(const TextModel& tm);
  const std::vector<Pair>* find_pairs(const std::vector<Symbol>& q) const;
};

}  // namespace dcx

#endif  // DCX_SMALLPAT_HPP
