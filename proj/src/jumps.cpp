#include "dcx/jumps.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

namespace dcx {

namespace {

constexpr std::uint32_t kNone = ShortJumpTables::kNone;

inline std::uint64_t edge_key(std::uint32_t node, Symbol c) {
  return (static_cast<std::uint64_t>(node) << 32) | c;
}

}  // namespace

JumpResult jump_binary(const TextModel& tm, const SampledSuffixTree& sst, const LcpEngine& lcp,
                       Pos f1, std::uint32_t shift, std::uint64_t target_len,
                       QueryCounters* counters) {
  const Pos n = tm.n();
  const Pos fp = f1 + shift;
  const std::uint32_t t = static_cast<std::uint32_t>(sst.leaf_count());
  assert(target_len >= 1 && fp + target_len <= n);
  if (counters) counters->binary_jumps++;

  auto eval = [&](std::uint32_t rank) {
    if (counters) counters->lcp_evals++;
    std::uint64_t l = lcp.lcp_shifted(f1, shift, sst.leaf_position(rank));
    return l < target_len ? l : target_len;
  };

  std::uint64_t best_len = 0;
  std::uint32_t best_rank = 0;
  auto consider = [&](std::uint32_t rank, std::uint64_t l) {
    if (l > best_len || (l == best_len && rank < best_rank)) {
      best_len = l;
      best_rank = rank;
    }
  };

  // insertion-point search; the max-LCP suffix neighbours the insertion
  // point, so evaluating the final pair completes the argmax
  std::uint32_t lo = 0, hi = t;
  bool full_seen = false;
  while (lo < hi) {
    std::uint32_t mid = lo + (hi - lo) / 2;
    std::uint64_t l = eval(mid);
    consider(mid, l);
    if (l == target_len) {
      full_seen = true;
      break;
    }
    Pos lp = sst.leaf_position(mid);
    bool leaf_smaller = lp + l >= n || tm.symbol_at(lp + l) < tm.symbol_at(fp + l);
    if (leaf_smaller)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (!full_seen) {
    if (lo > 0) consider(lo - 1, eval(lo - 1));
    if (lo < t) consider(lo, eval(lo));
  }

  if (best_len == 0) return JumpResult{sst.root_locus(), 0, target_len == 0};

  // extremes of the block of suffixes sharing best_len symbols
  auto shares = [&](std::uint32_t rank) {
    if (counters) counters->lcp_evals++;
    std::uint64_t l = lcp.lcp_shifted(f1, shift, sst.leaf_position(rank));
    return l >= best_len;
  };
  std::uint32_t a = 0, b = best_rank;
  while (a < b) {
    std::uint32_t mid = a + (b - a) / 2;
    if (shares(mid))
      b = mid;
    else
      a = mid + 1;
  }
  std::uint32_t e1 = a;
  a = best_rank;
  b = t - 1;
  while (a < b) {
    std::uint32_t mid = a + (b - a + 1) / 2;
    if (shares(mid))
      a = mid;
    else
      b = mid - 1;
  }
  std::uint32_t e2 = a;

  Locus locus = sst.locus_from_leaf_range(tm, e1, e2 + 1, best_len);
  return JumpResult{locus, best_len, best_len == target_len};
}

// ---------------------------------------------------------------------
// ShortJumpTables

std::uint32_t ShortJumpTables::child(std::uint32_t name, Symbol c) const {
  std::uint64_t key = edge_key(name, c);
  auto it = std::lower_bound(edge_keys_.begin(), edge_keys_.end(), key);
  if (it == edge_keys_.end() || *it != key) return kNone;
  return edge_child_[it - edge_keys_.begin()];
}

std::vector<Symbol> ShortJumpTables::string_of(std::uint32_t name) const {
  std::vector<Symbol> s;
  while (name != 0) {
    s.push_back(sym_[name]);
    name = parent_[name];
  }
  std::reverse(s.begin(), s.end());
  return s;
}

void ShortJumpTables::index_edges() {
  edge_keys_.clear();
  edge_child_.clear();
  edge_keys_.reserve(parent_.size() - 1);
  edge_child_.reserve(parent_.size() - 1);
  std::vector<std::pair<std::uint64_t, std::uint32_t>> edges;
  edges.reserve(parent_.size() - 1);
  for (std::uint32_t id = 1; id < parent_.size(); ++id)
    edges.push_back({edge_key(parent_[id], sym_[id]), id});
  std::sort(edges.begin(), edges.end());
  for (auto& [k, c] : edges) {
    edge_keys_.push_back(k);
    edge_child_.push_back(c);
  }
}

namespace {

struct LocusOut {
  std::uint32_t node;
  std::int32_t child_lo, child_hi;
};

// Loci of every prefix length of T[pos..pos+len) in the sampled trie,
// exactly as descend would report them. The walk cannot fail because
// the traced string prefixes a sampled suffix.
template <typename Emit>
void trace_loci(const TextModel& tm, const SampledSuffixTree& sst, Pos pos, std::uint64_t len,
                Emit&& emit) {
  const unsigned m = tm.meta_width();
  const unsigned bits = tm.bits();
  const PackedSymbols& q = tm.packed();
  std::uint32_t u = sst.root();
  std::uint64_t matched = 0;
  while (matched < len) {
    const auto& un = sst.node(u);
    std::uint64_t pl_end = std::min<std::uint64_t>(un.depth + m, len);
    std::int32_t clo = 0, chi = -1;
    std::uint32_t cnode = kNone;
    for (std::uint64_t ell = un.depth + 1; ell <= pl_end; ++ell) {
      unsigned l = static_cast<unsigned>(ell - un.depth);
      std::uint64_t w = q.window(pos + un.depth);
      std::uint64_t part = l * bits >= 64 ? w : w >> (64 - l * bits);
      auto [l3, h3] = sst.child_range_for_partial(tm, u, part, l);
      assert(l3 <= h3);
      clo = l3;
      chi = h3;
      cnode = l3 == h3 ? sst.child_node(un.child_first + l3) : kNone;
      if (cnode != kNone && sst.node(cnode).depth == ell)
        emit(ell, LocusOut{cnode, 0, -1});
      else
        emit(ell, LocusOut{u, clo, chi});
    }
    matched = pl_end;
    if (matched >= len) break;
    // full chunk consumed: a single child remains
    assert(clo == chi && cnode != kNone);
    const auto& cn = sst.node(cnode);
    if (cn.depth == matched) {
      u = cnode;
      continue;
    }
    std::uint64_t edge_end = std::min<std::uint64_t>(cn.depth, len);
    for (std::uint64_t ell = matched + 1; ell <= edge_end; ++ell) {
      if (ell == cn.depth)
        emit(ell, LocusOut{cnode, 0, -1});
      else
        emit(ell, LocusOut{u, clo, clo});
    }
    matched = edge_end;
    if (matched == cn.depth) u = cnode;
  }
}

}  // namespace

ShortJumpTables ShortJumpTables::build(const TextModel& tm, const SampledSuffixTree& sst,
                                       std::uint32_t period, std::uint32_t max_len) {
  if (period < 1) throw ConfigError("x0 period must be >= 1");
  if (max_len < 4 * tm.r() + 4) throw ConfigError("x0 max length must be >= 4r+4");

  ShortJumpTables T;
  T.period_ = period;
  T.max_len_ = max_len;
  const std::uint32_t trims = 4 * tm.r() + 3;
  const Pos n = tm.n();

  // transient trie in insertion order
  std::vector<std::uint32_t> bparent{kNone}, bdepth{0};
  std::vector<Symbol> bsym{0};
  std::vector<std::uint8_t> bx0{0};
  std::vector<std::uint32_t> btrim1{kNone};
  std::unordered_map<std::uint64_t, std::uint32_t> edges;
  edges.reserve(1 << 16);

  auto insert_path = [&](Pos start, std::uint64_t len, bool mark_x0,
                         std::vector<std::uint32_t>& path) {
    path.clear();
    std::uint32_t node = 0;
    for (std::uint64_t d = 0; d < len; ++d) {
      Symbol c = tm.symbol_at(start + d);
      auto [it, fresh] = edges.try_emplace(edge_key(node, c),
                                           static_cast<std::uint32_t>(bparent.size()));
      if (fresh) {
        bparent.push_back(node);
        bsym.push_back(c);
        bdepth.push_back(static_cast<std::uint32_t>(d + 1));
        bx0.push_back(0);
        btrim1.push_back(kNone);
      }
      node = it->second;
      if (mark_x0) bx0[node] = 1;
      path.push_back(node);
    }
  };

  std::vector<Pos> samples;
  for (std::uint32_t rank = 0; rank < sst.leaf_count(); rank += period)
    samples.push_back(sst.leaf_position(rank));

  std::vector<std::uint32_t> prev_path, cur_path;
  for (Pos pos : samples) {
    std::uint64_t l0 = std::min<std::uint64_t>(max_len, n - pos);
    insert_path(pos, l0, true, prev_path);
    for (std::uint32_t j = 1; j <= trims && j < l0; ++j) {
      insert_path(pos + j, l0 - j, false, cur_path);
      // pairing consecutive trims defines the single-symbol trim links
      for (std::uint64_t d = 2; d <= prev_path.size(); ++d)
        btrim1[prev_path[d - 1]] = cur_path[d - 2];
      prev_path.swap(cur_path);
    }
  }

  // preorder renumbering with children in symbol order; names become
  // lexicographic ranks over X
  std::vector<std::pair<std::uint64_t, std::uint32_t>> sorted_edges;
  sorted_edges.reserve(bparent.size() - 1);
  for (std::uint32_t id = 1; id < bparent.size(); ++id)
    sorted_edges.push_back({edge_key(bparent[id], bsym[id]), id});
  std::sort(sorted_edges.begin(), sorted_edges.end());
  std::vector<std::uint32_t> cfirst(bparent.size() + 1, 0);
  for (auto& [k, c] : sorted_edges) cfirst[(k >> 32) + 1]++;
  for (std::size_t i = 1; i < cfirst.size(); ++i) cfirst[i] += cfirst[i - 1];

  std::vector<std::uint32_t> newid(bparent.size(), kNone);
  std::size_t cnt = bparent.size();
  T.parent_.resize(cnt);
  T.sym_.resize(cnt);
  T.depth_.resize(cnt);
  T.x0_index_.assign(cnt, kNone);
  T.trim1_.assign(cnt, kNone);
  T.x0_ref_.assign(cnt, kNone);
  {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> st;  // (build id, next edge)
    std::uint32_t next = 0;
    newid[0] = next++;
    T.parent_[0] = kNone;
    T.sym_[0] = 0;
    T.depth_[0] = 0;
    st.push_back({0, cfirst[0]});
    while (!st.empty()) {
      auto& [b, ei] = st.back();
      if (ei < cfirst[b + 1]) {
        std::uint32_t c = sorted_edges[ei].second;
        ++ei;
        std::uint32_t id = next++;
        newid[c] = id;
        T.parent_[id] = newid[b];
        T.sym_[id] = bsym[c];
        T.depth_[id] = bdepth[c];
        st.push_back({c, cfirst[c]});
      } else {
        st.pop_back();
      }
    }
  }
  std::uint32_t n_x0 = 0;
  for (std::uint32_t id = 0; id < cnt; ++id)
    if (bx0[id]) ++n_x0;
  T.x0_loci_.resize(n_x0);
  std::uint32_t next_x0 = 0;
  // second pass in NAME order for deterministic x0 ids
  {
    std::vector<std::uint32_t> byname(cnt);
    for (std::uint32_t b = 0; b < cnt; ++b) byname[newid[b]] = b;
    for (std::uint32_t name = 1; name < cnt; ++name) {
      std::uint32_t b = byname[name];
      if (btrim1[b] != kNone) T.trim1_[name] = newid[btrim1[b]];
      if (bx0[b]) T.x0_index_[name] = next_x0++;
    }
  }
  for (std::uint32_t name = 1; name < cnt; ++name)
    T.x0_ref_[name] =
        T.x0_index_[name] != kNone ? name : T.x0_ref_[T.parent_[name]];
  T.index_edges();

  // loci of all X0 strings, via one traced descent per sample
  std::vector<char> have(n_x0, 0);
  for (Pos pos : samples) {
    std::uint64_t l0 = std::min<std::uint64_t>(max_len, n - pos);
    // walk the renumbered trie alongside the trace to know the names
    std::uint32_t node = 0;
    std::uint64_t walked = 0;
    trace_loci(tm, sst, pos, l0, [&](std::uint64_t ell, LocusOut l) {
      while (walked < ell) {
        node = T.child(node, tm.symbol_at(pos + walked));
        assert(node != kNone);
        ++walked;
      }
      std::uint32_t xi = T.x0_index_[node];
      assert(xi != kNone);
      if (!have[xi]) {
        have[xi] = 1;
        T.x0_loci_[xi] = LocusLite{l.node, l.child_lo, l.child_hi};
      }
    });
  }
  return T;
}

std::uint32_t ShortJumpTables::walk(const std::vector<Symbol>& q, std::uint64_t from_off,
                                    std::uint32_t node, std::uint64_t node_depth,
                                    std::uint64_t q_end) const {
  while (from_off + node_depth < q_end) {
    std::uint32_t c = child(node, q[from_off + node_depth]);
    if (c == kNone) break;
    node = c;
    ++node_depth;
  }
  return node;
}

std::vector<ShortJumpTables::PrefixInfo> ShortJumpTables::find_x0_prefixes(
    const TextModel& tm, const std::vector<Symbol>& q) const {
  const std::uint32_t trims = 4 * tm.r() + 3;
  assert(q.size() <= max_len_);
  std::vector<PrefixInfo> out(trims + 1);

  auto finish = [&](std::uint32_t i, std::uint32_t walked) {
    std::uint32_t ref = x0_ref_[walked];
    out[i] = ref == kNone ? PrefixInfo{kNone, 0} : PrefixInfo{ref, depth_[ref]};
  };

  finish(0, walk(q, 0, 0, 0, q.size()));
  std::uint32_t prev_x0 = out[0].name;
  for (std::uint32_t i = 1; i <= trims && i < q.size(); ++i) {
    std::uint32_t start = 0;
    std::uint64_t start_depth = 0;
    if (prev_x0 != kNone && depth_[prev_x0] >= 2) {
      std::uint32_t v = trim1_[prev_x0];
      if (v != kNone) {  // the trimmed string stays in X
        start = v;
        start_depth = depth_[v];
      }
    }
    std::uint32_t walked = walk(q, i, start, start_depth, q.size());
    finish(i, walked);
    prev_x0 = out[i].name;
  }
  return out;
}

JumpResult ShortJumpTables::jump_short(const TextModel& tm, const SampledSuffixTree& sst,
                                       const PackedSymbols& packed_q,
                                       const std::vector<Symbol>& q, std::uint32_t i,
                                       const PrefixInfo& pi, QueryCounters* counters) const {
  const Pos n = tm.n();
  const std::uint64_t qlen = q.size();
  const std::uint64_t rest = qlen - i;
  if (counters) counters->short_jumps++;

  Locus lv = pi.name == kNone ? sst.root_locus() : x0_locus(pi.name);
  assert(lv.matched == pi.len);
  if (pi.len == rest) return JumpResult{lv, rest, true};

  // one-symbol extension: the surviving leaf interval holds no X0
  // sample, so it is narrow
  Locus ext = sst.descend(tm, packed_q, i, i + pi.len + 1, lv);
  if (ext.matched <= pi.len) return JumpResult{lv, pi.len, false};
  auto [lo, hi] = sst.locus_leaves(ext);
  std::uint64_t width = static_cast<std::uint64_t>(hi) - lo + 1;
  if (counters && width > counters->restricted_leaves_max)
    counters->restricted_leaves_max = width;

  auto lcp_from = [&](std::uint32_t rank, std::uint64_t base) {
    return base + tm.lcp_vs(packed_q, i + base, sst.leaf_position(rank) + base, rest - base);
  };
  std::uint64_t llcp = lcp_from(lo, pi.len + 1);
  std::uint64_t rlcp = lo == hi ? llcp : lcp_from(hi, pi.len + 1);
  std::uint64_t best_len = std::max(llcp, rlcp);
  std::uint32_t best_rank = llcp >= rlcp ? lo : hi;
  std::uint32_t a = lo, b = hi;
  while (b - a > 1 && best_len < rest) {
    std::uint32_t mid = a + (b - a) / 2;
    std::uint64_t ml = lcp_from(mid, std::min(llcp, rlcp));
    if (ml > best_len || (ml == best_len && mid < best_rank)) {
      best_len = ml;
      best_rank = mid;
    }
    if (ml == rest) break;
    Pos lp = sst.leaf_position(mid);
    bool leaf_smaller = lp + ml >= n || tm.symbol_at(lp + ml) < q[i + ml];
    if (leaf_smaller) {
      a = mid;
      llcp = ml;
    } else {
      b = mid;
      rlcp = ml;
    }
  }

  // extremes of the best block inside [lo, hi]
  auto shares = [&](std::uint32_t rank) {
    return tm.lcp_vs(packed_q, i, sst.leaf_position(rank), best_len) == best_len;
  };
  std::uint32_t e1lo = lo, e1hi = best_rank;
  while (e1lo < e1hi) {
    std::uint32_t mid = e1lo + (e1hi - e1lo) / 2;
    if (shares(mid))
      e1hi = mid;
    else
      e1lo = mid + 1;
  }
  std::uint32_t e2lo = best_rank, e2hi = hi;
  while (e2lo < e2hi) {
    std::uint32_t mid = e2lo + (e2hi - e2lo + 1) / 2;
    if (shares(mid))
      e2lo = mid;
    else
      e2hi = mid - 1;
  }
  Locus locus = sst.locus_from_leaf_range(tm, e1lo, e2lo + 1, best_len);
  return JumpResult{locus, best_len, best_len == rest};
}

ShortJumpTables ShortJumpTables::rebuild(std::uint32_t period, std::uint32_t max_len,
                                         std::vector<std::uint32_t> parent,
                                         std::vector<std::uint32_t> sym,
                                         std::vector<std::uint32_t> depth,
                                         std::vector<std::uint32_t> trim1,
                                         std::vector<std::uint32_t> x0_index,
                                         std::vector<LocusLite> x0_loci) {
  ShortJumpTables T;
  T.period_ = period;
  T.max_len_ = max_len;
  T.parent_ = std::move(parent);
  T.sym_ = std::move(sym);
  T.depth_ = std::move(depth);
  T.trim1_ = std::move(trim1);
  T.x0_index_ = std::move(x0_index);
  T.x0_loci_ = std::move(x0_loci);
  std::size_t cnt = T.parent_.size();
  T.x0_ref_.assign(cnt, kNone);
  for (std::uint32_t name = 1; name < cnt; ++name)
    T.x0_ref_[name] =
        T.x0_index_[name] != kNone ? name : T.x0_ref_[T.parent_[name]];
  T.index_edges();
  return T;
}

}  // namespace dcx
