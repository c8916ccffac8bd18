#ifndef DCX_JUMPS_HPP
#define DCX_JUMPS_HPP

#include <cstdint>
#include <vector>

#include "dcx/counters.hpp"
#include "dcx/lcp.hpp"
#include "dcx/sst.hpp"
#include "dcx/textmodel.hpp"

namespace dcx {

// Result of a suffix jump: the locus of the longest prefix of the
// target that prefixes some sampled suffix, and that prefix's length.
struct JumpResult {
  Locus locus;
  std::uint64_t lcp_len = 0;
  bool full = false;  // lcp_len covers the whole target
};

// Binary-search suffix jump: locates T[f1+shift .. f1+shift+target_len)
// among the sampled suffixes with O(log t) shifted-LCP evaluations.
JumpResult jump_binary(const TextModel& tm, const SampledSuffixTree& sst, const LcpEngine& lcp,
                       Pos f1, std::uint32_t shift, std::uint64_t target_len,
                       QueryCounters* counters = nullptr);

// Precomputed suffix-jump tables for short patterns: the trie over the
// trimmed prefix set X with names, the X0 marking with loci, and the
// single-symbol trim links.
class ShortJumpTables {
 public:
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

  struct LocusLite {
    std::uint32_t node = 0;
    std::int32_t child_lo = 0;
    std::int32_t child_hi = -1;
  };

  static ShortJumpTables build(const TextModel& tm, const SampledSuffixTree& sst,
                               std::uint32_t period, std::uint32_t max_len);

  std::uint32_t period() const { return period_; }
  std::uint32_t max_len() const { return max_len_; }
  std::size_t name_count() const { return parent_.size(); }  // including the root at 0

  // trie navigation (names are lexicographic ranks, root excluded from
  // the naming but stored as entry 0)
  std::uint32_t child(std::uint32_t name, Symbol c) const;
  std::uint32_t parent(std::uint32_t name) const { return parent_[name]; }
  std::uint32_t depth(std::uint32_t name) const { return depth_[name]; }
  Symbol symbol(std::uint32_t name) const { return sym_[name]; }
  bool is_x0(std::uint32_t name) const { return x0_index_[name] != kNone; }
  std::uint32_t trim1(std::uint32_t name) const { return trim1_[name]; }
  // deepest prefix (ancestor-or-self) that lies in X0, and its length
  std::uint32_t x0_prefix(std::uint32_t name) const { return x0_ref_[name]; }
  std::uint32_t x0_prefix_len(std::uint32_t name) const {
    return x0_ref_[name] == kNone ? 0 : depth_[x0_ref_[name]];
  }
  Locus x0_locus(std::uint32_t name) const {
    const LocusLite& l = x0_loci_[x0_index_[name]];
    return Locus{l.node, l.child_lo, l.child_hi, depth_[name]};
  }
  std::vector<Symbol> string_of(std::uint32_t name) const;

  // P_i = LCP(Q[i..], X0) for all i in [0, 4r+3]: name (kNone when
  // empty) and length
  struct PrefixInfo {
    std::uint32_t name = kNone;
    std::uint64_t len = 0;
  };
  std::vector<PrefixInfo> find_x0_prefixes(const TextModel& tm,
                                           const std::vector<Symbol>& q) const;

  // Computes LCP(Q[i..], S') and its locus using the X0 locus to narrow
  // the binary search to an interval that holds no X0 sample.
  JumpResult jump_short(const TextModel& tm, const SampledSuffixTree& sst,
                        const PackedSymbols& packed_q, const std::vector<Symbol>& q,
                        std::uint32_t i, const PrefixInfo& pi,
                        QueryCounters* counters = nullptr) const;

  // serialization access
  const std::vector<std::uint32_t>& parents() const { return parent_; }
  const std::vector<std::uint32_t>& symbols() const { return sym_; }
  const std::vector<std::uint32_t>& depths() const { return depth_; }
  const std::vector<std::uint32_t>& trim1s() const { return trim1_; }
  const std::vector<std::uint32_t>& x0_indices() const { return x0_index_; }
  const std::vector<LocusLite>& x0_loci() const { return x0_loci_; }
  static ShortJumpTables rebuild(std::uint32_t period, std::uint32_t max_len,
                                 std::vector<std::uint32_t> parent, std::vector<std::uint32_t> sym,
                                 std::vector<std::uint32_t> depth,
                                 std::vector<std::uint32_t> trim1,
                                 std::vector<std::uint32_t> x0_index,
                                 std::vector<LocusLite> x0_loci);

 private:
  std::uint32_t period_ = 64;
  std::uint32_t max_len_ = 256;
  std::vector<std::uint32_t> parent_, sym_, depth_;
  std::vector<std::uint32_t> x0_ref_, trim1_, x0_index_;
  std::vector<LocusLite> x0_loci_;
  std::vector<std::uint64_t> edge_keys_;  // (parent << 32) | symbol, sorted
  std::vector<std::uint32_t> edge_child_;

  void index_edges();
  std::uint32_t walk(const std::vector<Symbol>& q, std::uint64_t from_off, std::uint32_t node,
                     std::uint64_t node_depth, std::uint64_t q_end) const;
};

}  // namespace dcx

#endif  // DCX_JUMPS_HPP
