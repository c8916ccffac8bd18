#include "dcx/sst.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "dcx/suffix_array.hpp"

namespace dcx {

namespace {

constexpr std::uint64_t kNoPos = ~0ull;

inline std::uint64_t ones(unsigned k) { return k >= 64 ? ~0ull : ((1ull << k) - 1); }

// top `len` symbols starting at `at`, as a len*bits-bit integer
inline std::uint64_t prefix_bits(const PackedSymbols& p, std::uint64_t at, unsigned len,
                                 unsigned bits) {
  std::uint64_t w = p.window(at);
  unsigned lb = len * bits;
  return lb >= 64 ? w : w >> (64 - lb);
}

}  // namespace

std::pair<std::int32_t, std::int32_t> SampledSuffixTree::child_range_for_partial(
    const TextModel& tm, std::uint32_t node_id, std::uint64_t partial, unsigned len) const {
  const Node& un = nodes_[node_id];
  if (len == 0) return un.child_count ? std::pair<std::int32_t, std::int32_t>{0, (std::int32_t)un.child_count - 1}
                                      : std::pair<std::int32_t, std::int32_t>{0, -1};
  unsigned bits = tm.bits(), m = tm.meta_width();
  unsigned tail = (m - len) * bits;
  std::uint64_t lo = tail >= 64 ? 0 : partial << tail;
  std::uint64_t hi = lo | ones(tail);
  auto first = child_keys_.begin() + un.child_first;
  auto last = first + un.child_count;
  auto itlo = std::lower_bound(first, last, lo);
  auto ithi = std::upper_bound(itlo, last, hi);
  if (itlo == ithi) return {0, -1};
  return {static_cast<std::int32_t>(itlo - first), static_cast<std::int32_t>(ithi - first - 1)};
}

std::pair<std::uint32_t, std::uint32_t> SampledSuffixTree::locus_leaves(const Locus& l) const {
  const Node& un = nodes_[l.node];
  if (!l.has_children()) return {un.leaf_lo, un.leaf_hi};
  std::uint32_t a = child_nodes_[un.child_first + l.child_lo];
  std::uint32_t b = child_nodes_[un.child_first + l.child_hi];
  return {nodes_[a].leaf_lo, nodes_[b].leaf_hi};
}

Locus SampledSuffixTree::descend(const TextModel& tm, const PackedSymbols& q,
                                 std::uint64_t qoff, std::uint64_t qlen, Locus cur,
                                 std::uint64_t* consumed) const {
  const std::uint64_t plen = qlen - qoff;
  const unsigned m = tm.meta_width();
  const unsigned bits = tm.bits();
  std::uint32_t u = cur.node;
  std::uint64_t matched = cur.matched;
  std::int32_t clo = cur.child_lo, chi = cur.child_hi;
  const std::uint64_t start_matched = matched;

  auto finish = [&](std::uint32_t fu, std::int32_t flo, std::int32_t fhi, std::uint64_t fm) {
    if (consumed) *consumed += fm - start_matched;
    return Locus{fu, flo, fhi, fm};
  };

  while (true) {
    const Node& un = nodes_[u];
    if (matched == plen) return finish(u, clo, chi, matched);

    std::int32_t edge_child = -1;  // set when a single child's edge is to be walked

    if (matched == un.depth) {
      // at a node boundary: consume the next (possibly partial) chunk
      std::uint64_t rem = plen - matched;
      unsigned want = rem < m ? static_cast<unsigned>(rem) : m;
      std::uint64_t part = prefix_bits(q, qoff + matched, want, bits);
      auto [l2, h2] = child_range_for_partial(tm, u, part, want);
      if (l2 > h2) {
        // maximal shorter partial match (ranges nest as the prefix grows)
        std::int32_t blo = 0, bhi = -1;
        unsigned best = 0;
        for (unsigned len = 1; len < want; ++len) {
          auto [l3, h3] =
              child_range_for_partial(tm, u, prefix_bits(q, qoff + matched, len, bits), len);
          if (l3 > h3) break;
          best = len;
          blo = l3;
          bhi = h3;
        }
        return finish(u, blo, bhi, matched + best);
      }
      if (want < m) return finish(u, l2, h2, matched + want);  // pattern ends mid-chunk
      assert(l2 == h2);  // full meta keys are distinct
      clo = chi = l2;
      matched += m;
      edge_child = l2;
    } else if (matched < un.depth + m) {
      // resumed inside the first chunk of the child range: extend one
      // symbol at a time, narrowing the range
      while (matched < plen && matched < un.depth + m) {
        unsigned len = static_cast<unsigned>(matched - un.depth) + 1;
        auto [l3, h3] =
            child_range_for_partial(tm, u, prefix_bits(q, qoff + un.depth, len, bits), len);
        if (l3 > h3) return finish(u, clo, chi, matched);
        clo = l3;
        chi = h3;
        ++matched;
      }
      if (matched < un.depth + m) return finish(u, clo, chi, matched);  // pattern ended mid-chunk
      assert(clo == chi);
      edge_child = clo;
    } else {
      assert(clo == chi);
      edge_child = clo;
    }

    // walk down the edge of the single remaining child, validating the
    // label against the text of any leaf below it
    std::uint32_t c = child_nodes_[un.child_first + edge_child];
    const Node& cn = nodes_[c];
    std::uint64_t target = cn.depth < plen ? cn.depth : plen;
    if (matched < target)
      matched += tm.lcp_vs(q, qoff + matched, leaf_order_[cn.leaf_lo] + matched, target - matched);
    if (matched == cn.depth) {
      u = c;
      clo = 0;
      chi = -1;
      continue;
    }
    return finish(u, edge_child, edge_child, matched);
  }
}

Locus SampledSuffixTree::locus_from_leaf_range(const TextModel& tm, std::uint32_t lo,
                                               std::uint32_t hi, std::uint64_t matched_len) const {
  assert(lo < hi);
  std::uint32_t v = (hi - lo == 1) ? leaf_node_[lo] : lca(lo, hi - 1);
  const Node& vn = nodes_[v];
  if (vn.depth == matched_len) return Locus{v, 0, -1, matched_len};
  if (vn.depth > matched_len) {
    assert(v != 0);
    return Locus{vn.parent, static_cast<std::int32_t>(vn.slot), static_cast<std::int32_t>(vn.slot),
                 matched_len};
  }
  unsigned len = static_cast<unsigned>(matched_len - vn.depth);
  assert(len < tm.meta_width());
  std::uint64_t part = prefix_bits(tm.packed(), leaf_order_[lo] + vn.depth, len, tm.bits());
  auto [clo, chi] = child_range_for_partial(tm, v, part, len);
  assert(clo <= chi);
  return Locus{v, clo, chi, matched_len};
}

std::uint32_t SampledSuffixTree::lca(std::uint32_t rank1, std::uint32_t rank2) const {
  std::uint32_t a = euler_first_[leaf_node_[rank1]];
  std::uint32_t b = euler_first_[leaf_node_[rank2]];
  if (a > b) std::swap(a, b);
  unsigned k = (a == b) ? 0 : (std::bit_width<std::uint64_t>(b - a + 1) - 1);
  std::uint32_t p1 = rmq_[k][a];
  std::uint32_t p2 = rmq_[k][b + 1 - (1u << k)];
  std::uint32_t n1 = euler_nodes_[p1], n2 = euler_nodes_[p2];
  return nodes_[n1].level <= nodes_[n2].level ? n1 : n2;
}

void SampledSuffixTree::build_euler_rmq() {
  euler_nodes_.clear();
  euler_first_.assign(nodes_.size(), 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;  // (node, next child)
  euler_nodes_.push_back(0);
  euler_first_[0] = 0;
  stack.push_back({0, 0});
  while (!stack.empty()) {
    auto& [u, ci] = stack.back();
    const Node& un = nodes_[u];
    if (ci < un.child_count) {
      std::uint32_t c = child_nodes_[un.child_first + ci];
      ++ci;
      euler_first_[c] = static_cast<std::uint32_t>(euler_nodes_.size());
      euler_nodes_.push_back(c);
      stack.push_back({c, 0});
    } else {
      stack.pop_back();
      if (!stack.empty()) euler_nodes_.push_back(stack.back().first);
    }
  }

  std::size_t e = euler_nodes_.size();
  unsigned levels = e <= 1 ? 1 : std::bit_width<std::uint64_t>(e - 1) + 1;
  rmq_.assign(levels, {});
  rmq_[0].resize(e);
  std::iota(rmq_[0].begin(), rmq_[0].end(), 0u);
  auto lvl = [&](std::uint32_t pos) { return nodes_[euler_nodes_[pos]].level; };
  for (unsigned k = 1; k < levels; ++k) {
    std::size_t span = 1ull << k;
    if (span > e) break;
    rmq_[k].resize(e - span + 1);
    for (std::size_t i = 0; i + span <= e; ++i) {
      std::uint32_t a = rmq_[k - 1][i], b = rmq_[k - 1][i + span / 2];
      rmq_[k][i] = lvl(a) <= lvl(b) ? a : b;
    }
  }
}

SampledSuffixTree SampledSuffixTree::build(const TextModel& tm) {
  SampledSuffixTree T;
  const auto& sel = tm.selected();
  const std::size_t t = sel.size();
  const Pos n = tm.n();
  const unsigned m = tm.meta_width();
  const std::uint32_t s = tm.s();
  const std::uint32_t W = (s + m - 1) / m;

  // lexicographic names for all length-s windows at selected positions,
  // viewed as W-tuples of meta-symbols
  std::vector<std::uint64_t> metas(t * W);
  for (std::size_t k = 0; k < t; ++k)
    for (std::uint32_t j = 0; j < W; ++j)
      metas[k * W + j] = tm.meta_at(sel[k] + static_cast<Pos>(j) * m);
  std::vector<std::uint64_t> uniq(metas);
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<std::uint32_t> mrank(t * W);
  for (std::size_t i = 0; i < metas.size(); ++i)
    mrank[i] = static_cast<std::uint32_t>(
        std::lower_bound(uniq.begin(), uniq.end(), metas[i]) - uniq.begin());

  std::vector<std::uint32_t> order(t), tmp(t);
  std::iota(order.begin(), order.end(), 0u);
  std::vector<std::uint32_t> cnt(uniq.size() + 1);
  for (std::uint32_t j = W; j-- > 0;) {  // LSD radix over the tuple
    std::fill(cnt.begin(), cnt.end(), 0u);
    for (std::uint32_t idx : order) cnt[mrank[static_cast<std::size_t>(idx) * W + j]]++;
    std::uint32_t sum = 0;
    for (auto& c : cnt) {
      std::uint32_t v = c;
      c = sum;
      sum += v;
    }
    for (std::uint32_t idx : order) tmp[cnt[mrank[static_cast<std::size_t>(idx) * W + j]]++] = idx;
    order.swap(tmp);
  }
  std::vector<std::uint32_t> name(t);
  std::uint32_t cur = 0;
  for (std::size_t k = 0; k < t; ++k) {
    if (k > 0) {
      const std::uint32_t *a = &mrank[static_cast<std::size_t>(order[k - 1]) * W],
                          *b = &mrank[static_cast<std::size_t>(order[k]) * W];
      if (!std::equal(a, a + W, b)) ++cur;
    }
    name[order[k]] = cur;
  }

  // concatenated name texts, one per residue, '$' = 1 after each, final 0
  std::vector<std::uint32_t> tbar;
  std::vector<std::uint64_t> tbar_sel;
  tbar.reserve(t + tm.cover().residues().size() + 1);
  tbar_sel.reserve(tbar.capacity());
  for (std::uint32_t a : tm.cover().residues()) {
    for (Pos p = a; p < n; p += s) {
      std::uint64_t si = tm.selected_index(p);
      tbar.push_back(name[si] + 2);
      tbar_sel.push_back(si);
    }
    tbar.push_back(1);
    tbar_sel.push_back(kNoPos);
  }
  tbar.push_back(0);
  tbar_sel.push_back(kNoPos);

  auto sa = suffix_array_int(tbar, cur + 3);
  auto lcp = lcp_array_int(tbar, sa);

  T.leaf_order_.reserve(t);
  std::vector<std::uint64_t> lcp_names(t, 0);
  std::uint64_t pending = ~0ull;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    pending = std::min<std::uint64_t>(pending, lcp[i]);
    std::uint64_t si = tbar_sel[sa[i]];
    if (si == kNoPos) continue;
    if (!T.leaf_order_.empty()) lcp_names[T.leaf_order_.size()] = pending;
    T.leaf_order_.push_back(sel[si]);
    pending = ~0ull;
  }
  assert(T.leaf_order_.size() == t);

  // refine name-level LCPs to symbol precision, then truncate to metas
  std::vector<std::uint64_t> lcp_meta(t, 0);
  const std::uint64_t wm = static_cast<std::uint64_t>(W) * m;
  for (std::size_t k = 1; k < t; ++k) {
    std::uint64_t l = lcp_names[k];
    Pos a = T.leaf_order_[k - 1] + l * s, b = T.leaf_order_[k] + l * s;
    assert(a <= n && b <= n);
    lcp_meta[k] = (l * s + tm.word_lcp(a, b, wm)) / m;
  }

  // trie from sorted leaves + adjacent LCPs
  struct BNode {
    std::uint64_t depth_meta;
    std::int32_t parent;
    std::int32_t leaf_rank;
    std::vector<std::int32_t> ch;
  };
  std::vector<BNode> bn;
  bn.reserve(2 * t + 1);
  bn.push_back({0, -1, -1, {}});
  auto leaf_depth_meta = [&](Pos p) { return (n - p) / m + 1; };
  std::vector<std::int32_t> stack;
  stack.push_back(0);
  bn.push_back({leaf_depth_meta(T.leaf_order_[0]), 0, 0, {}});
  bn[0].ch.push_back(1);
  stack.push_back(1);
  for (std::size_t k = 1; k < t; ++k) {
    std::uint64_t l = lcp_meta[k];
    std::int32_t v = -1;
    while (bn[stack.back()].depth_meta > l) {
      v = stack.back();
      stack.pop_back();
    }
    std::int32_t u = stack.back();
    if (bn[u].depth_meta < l) {
      std::int32_t w = static_cast<std::int32_t>(bn.size());
      bn.push_back({l, u, -1, {v}});
      bn[u].ch.back() = w;
      bn[v].parent = w;
      stack.push_back(w);
      u = w;
    }
    std::int32_t leaf = static_cast<std::int32_t>(bn.size());
    bn.push_back({leaf_depth_meta(T.leaf_order_[k]), u, static_cast<std::int32_t>(k), {}});
    bn[u].ch.push_back(leaf);
    stack.push_back(leaf);
  }

  // renumber in preorder; children keep their sorted order
  std::vector<std::uint32_t> newid(bn.size(), 0);
  T.nodes_.resize(bn.size());
  T.leaf_node_.resize(t);
  {
    std::vector<std::pair<std::int32_t, std::uint32_t>> st;  // (build id, next child)
    std::uint32_t next = 0;
    newid[0] = next++;
    st.push_back({0, 0});
    T.nodes_[0] = Node{0, 0, 0, 0, 0, 0, 0, 0};
    while (!st.empty()) {
      auto& [b, ci] = st.back();
      if (ci < bn[b].ch.size()) {
        std::int32_t c = bn[b].ch[ci];
        std::uint32_t slot = ci++;
        std::uint32_t id = next++;
        newid[c] = id;
        Node& nd = T.nodes_[id];
        nd.parent = newid[b];
        nd.slot = slot;
        nd.level = T.nodes_[newid[b]].level + 1;
        nd.depth = bn[c].depth_meta * m;
        nd.child_first = 0;
        nd.child_count = 0;
        if (bn[c].leaf_rank >= 0) {
          nd.leaf_lo = nd.leaf_hi = static_cast<std::uint32_t>(bn[c].leaf_rank);
          T.leaf_node_[bn[c].leaf_rank] = id;
        } else {
          nd.leaf_lo = ~0u;
          nd.leaf_hi = 0;
        }
        st.push_back({c, 0});
      } else {
        st.pop_back();
      }
    }
    for (std::size_t b2 = 0; b2 < bn.size(); ++b2)
      T.nodes_[newid[b2]].child_count = static_cast<std::uint32_t>(bn[b2].ch.size());
  }

  // leaf spans (children have larger preorder ids than their parents)
  for (std::uint32_t id = static_cast<std::uint32_t>(T.nodes_.size()); id-- > 1;) {
    Node& nd = T.nodes_[id];
    Node& pp = T.nodes_[nd.parent];
    pp.leaf_lo = std::min(pp.leaf_lo, nd.leaf_lo);
    pp.leaf_hi = std::max(pp.leaf_hi, nd.leaf_hi);
  }

  // CSR children + keys
  std::uint32_t off = 0;
  for (auto& nd : T.nodes_) {
    nd.child_first = off;
    off += nd.child_count;
  }
  T.child_nodes_.assign(off, 0);
  T.child_keys_.assign(off, 0);
  for (std::uint32_t id = 1; id < T.nodes_.size(); ++id) {
    const Node& nd = T.nodes_[id];
    const Node& pp = T.nodes_[nd.parent];
    T.child_nodes_[pp.child_first + nd.slot] = id;
    T.child_keys_[pp.child_first + nd.slot] = tm.meta_at(T.leaf_order_[nd.leaf_lo] + pp.depth);
  }
#ifndef NDEBUG
  for (const auto& nd : T.nodes_)
    for (std::uint32_t c = 1; c < nd.child_count; ++c)
      assert(T.child_keys_[nd.child_first + c - 1] < T.child_keys_[nd.child_first + c]);
#endif

  T.rank_of_selected_.resize(t);
  for (std::uint32_t rank = 0; rank < t; ++rank)
    T.rank_of_selected_[tm.selected_index(T.leaf_order_[rank])] = rank;

  T.build_euler_rmq();
  return T;
}

SampledSuffixTree rebuild_sst_from_sections(const TextModel& tm,
                                            std::vector<SampledSuffixTree::Node> nodes,
                                            std::vector<std::uint64_t> child_keys,
                                            std::vector<Pos> leaf_order) {
  // nodes carry parent, depth, leaf bounds and child_count; everything
  // else is derived here
  SampledSuffixTree T;
  T.nodes_ = std::move(nodes);
  T.child_keys_ = std::move(child_keys);
  T.leaf_order_ = std::move(leaf_order);

  std::uint32_t off = 0;
  for (auto& nd : T.nodes_) {
    nd.child_first = off;
    off += nd.child_count;
  }
  T.child_nodes_.assign(off, 0);
  std::vector<std::uint32_t> next_slot(T.nodes_.size(), 0);
  T.nodes_[0].level = 0;
  T.nodes_[0].slot = 0;
  T.leaf_node_.resize(T.leaf_order_.size());
  for (std::uint32_t id = 1; id < T.nodes_.size(); ++id) {
    auto& nd = T.nodes_[id];
    nd.slot = next_slot[nd.parent]++;
    nd.level = T.nodes_[nd.parent].level + 1;
    T.child_nodes_[T.nodes_[nd.parent].child_first + nd.slot] = id;
    if (nd.child_count == 0) T.leaf_node_[nd.leaf_lo] = id;
  }
  T.rank_of_selected_.resize(T.leaf_order_.size());
  for (std::uint32_t rank = 0; rank < T.leaf_order_.size(); ++rank)
    T.rank_of_selected_[tm.selected_index(T.leaf_order_[rank])] = rank;
  T.build_euler_rmq();
  return T;
}

}  // namespace dcx
