#ifndef DCX_SST_HPP
#define DCX_SST_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "dcx/textmodel.hpp"

namespace dcx {

// A position in the trie: deepest node whose label prefixes the query,
// the interval of its children whose labels extend the match, and the
// number of symbols matched. child_lo > child_hi encodes an empty range.
struct Locus {
  std::uint32_t node = 0;
  std::int32_t child_lo = 0;
  std::int32_t child_hi = -1;
  std::uint64_t matched = 0;

  bool has_children() const { return child_lo <= child_hi; }
};

// Compacted trie over the selected suffixes, keyed by packed meta-symbols.
// Internal string depths are multiples of the meta width m; leaf depths
// include one trailing sentinel-bearing chunk so no leaf label is a
// prefix of another.
class SampledSuffixTree {
 public:
  struct Node {
    std::uint32_t parent;
    std::uint32_t slot;  // index of this node among parent's children
    std::uint32_t level;
    std::uint64_t depth;  // string depth in symbols
    std::uint32_t leaf_lo, leaf_hi;       // inclusive rank interval
    std::uint32_t child_first, child_count;  // slice of the child arrays
  };

  static SampledSuffixTree build(const TextModel& tm);

  std::uint32_t root() const { return 0; }
  std::size_t leaf_count() const { return leaf_order_.size(); }
  std::size_t node_count() const { return nodes_.size(); }
  const Node& node(std::uint32_t id) const { return nodes_[id]; }
  const std::vector<Pos>& leaf_order() const { return leaf_order_; }
  Pos leaf_position(std::uint32_t rank) const { return leaf_order_[rank]; }
  std::uint32_t leaf_node(std::uint32_t rank) const { return leaf_node_[rank]; }
  std::uint64_t child_key(std::uint32_t idx) const { return child_keys_[idx]; }
  std::uint32_t child_node(std::uint32_t idx) const { return child_nodes_[idx]; }

  // rank of the selected suffix starting at p (p must be selected)
  std::uint32_t rank_of(const TextModel& tm, Pos p) const {
    return rank_of_selected_[tm.selected_index(p)];
  }

  std::uint32_t lca(std::uint32_t rank1, std::uint32_t rank2) const;

  Locus root_locus() const { return Locus{0, 0, -1, 0}; }

  // inclusive leaf interval covered by a locus
  std::pair<std::uint32_t, std::uint32_t> locus_leaves(const Locus& l) const;
  std::uint64_t subtree_count(const Locus& l) const {
    auto [lo, hi] = locus_leaves(l);
    return static_cast<std::uint64_t>(hi) - lo + 1;
  }
  // a leaf rank whose suffix begins with the locus's matched prefix
  std::uint32_t locus_witness(const Locus& l) const { return locus_leaves(l).first; }

  // Extends the match of q[qoff..qlen) from `start` as far as possible.
  // `consumed`, when given, accumulates the number of symbols advanced.
  Locus descend(const TextModel& tm, const PackedSymbols& q, std::uint64_t qoff,
                std::uint64_t qlen, Locus start, std::uint64_t* consumed = nullptr) const;

  // Locus of the matchedLen-symbol prefix shared by the non-empty leaf
  // interval [lo, hi); every leaf in it starts with that prefix and no
  // leaf outside does.
  Locus locus_from_leaf_range(const TextModel& tm, std::uint32_t lo, std::uint32_t hi,
                              std::uint64_t matched_len) const;

  // children of `node` whose key begins with the `len`-symbol partial
  // chunk packed in the top bits of `partial` (meta layout); empty range
  // when none do
  std::pair<std::int32_t, std::int32_t> child_range_for_partial(const TextModel& tm,
                                                                std::uint32_t node,
                                                                std::uint64_t partial,
                                                                unsigned len) const;

  // used by serialization
  const std::vector<std::uint32_t>& rank_of_selected() const { return rank_of_selected_; }

 private:
  std::vector<Node> nodes_;  // preorder; 0 is the root
  std::vector<std::uint64_t> child_keys_;
  std::vector<std::uint32_t> child_nodes_;
  std::vector<Pos> leaf_order_;
  std::vector<std::uint32_t> leaf_node_;
  std::vector<std::uint32_t> rank_of_selected_;  // selected index -> rank

  // Euler tour + sparse-table RMQ for O(1) LCA
  std::vector<std::uint32_t> euler_nodes_;
  std::vector<std::uint32_t> euler_first_;
  std::vector<std::vector<std::uint32_t>> rmq_;  // argmin euler positions

  void build_euler_rmq();
  friend SampledSuffixTree rebuild_sst_from_sections(const TextModel&, std::vector<Node>,
                                                     std::vector<std::uint64_t>,
                                                     std::vector<Pos>);
};

SampledSuffixTree rebuild_sst_from_sections(const TextModel& tm,
                                            std::vector<SampledSuffixTree::Node> nodes,
                                            std::vector<std::uint64_t> child_keys,
                                            std::vector<Pos> leaf_order);

}  // namespace dcx

#endif  // DCX_SST_HPP
