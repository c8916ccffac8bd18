#include "dcx/fastreport.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace dcx {

namespace {

unsigned height_of(unsigned width, unsigned level) { return width - level; }

}  // namespace

FastReport::FastReport(const std::vector<std::uint32_t>& xs, const std::vector<std::uint64_t>& ys,
                       unsigned width, Params params)
    : width_(width), params_(params) {
  assert(xs.size() == ys.size());
  assert(width >= 1 && width <= 63);
  if (params_.group < 1) params_.group = 1;

  // d_k = ceil(width^(k*eps)), strictly increasing, capped with d_K = width
  dk_.push_back(1);
  unsigned K = static_cast<unsigned>(std::ceil(1.0 / params_.epsilon));
  for (unsigned k = 1; k < K; ++k) {
    auto d = static_cast<unsigned>(
        std::ceil(std::pow(static_cast<double>(width), params_.epsilon * k)));
    d = std::max(d, dk_.back() + 1);
    if (d >= width) break;
    dk_.push_back(d);
  }
  if (dk_.back() != width && width > 1) dk_.push_back(width);
  if (width == 1) dk_ = {1};

  root_x_ = xs;
  std::uint64_t t = xs.size();
  block_ = std::max<std::uint32_t>(1, t <= 1 ? 1 : std::bit_width(t - 1));

  // materialize the non-empty bit-split tree; pos_in_root is transient
  nodes_.emplace_back();
  nodes_[0].level = 0;
  nodes_[0].parent = kNone;
  nodes_[0].y = ys;
  std::vector<std::vector<std::uint32_t>> pos_in_root(1);
  pos_in_root[0].resize(t);
  for (std::uint64_t i = 0; i < t; ++i) pos_in_root[0][i] = static_cast<std::uint32_t>(i);

  for (std::uint32_t id = 0; id < nodes_.size(); ++id) {
    if (nodes_[id].level == width_ || nodes_[id].y.empty()) continue;
    unsigned bit = width_ - 1 - nodes_[id].level;
    std::vector<std::uint64_t> cy[2];
    std::vector<std::uint32_t> cp[2];
    for (std::size_t i = 0; i < nodes_[id].y.size(); ++i) {
      int side = (nodes_[id].y[i] >> bit) & 1;
      cy[side].push_back(nodes_[id].y[i]);
      cp[side].push_back(pos_in_root[id][i]);
    }
    for (int side = 0; side < 2; ++side) {
      if (cy[side].empty()) continue;
      std::uint32_t cid = static_cast<std::uint32_t>(nodes_.size());
      nodes_[id].child[side] = cid;
      nodes_.emplace_back();
      nodes_[cid].level = nodes_[id].level + 1;
      nodes_[cid].is_right = side == 1;
      nodes_[cid].parent = id;
      nodes_[cid].y = std::move(cy[side]);
      pos_in_root.push_back(std::move(cp[side]));
    }
  }

  auto is_dk = [&](std::uint32_t id, unsigned k) {
    return id == 0 || height_of(width_, nodes_[id].level) % dk_[k] == 0;
  };

  for (std::uint32_t id = 1; id < nodes_.size(); ++id) {
    Node& nd = nodes_[id];
    std::uint64_t cnt = nd.y.size();

    // grouped argmin/argmax + sparse RMQ for three-sided queries
    std::uint32_t g = params_.group;
    std::uint64_t groups = (cnt + g - 1) / g;
    nd.group_best.resize(groups);
    for (std::uint64_t gi = 0; gi < groups; ++gi) {
      std::uint64_t lo = gi * g, hi = std::min<std::uint64_t>(lo + g, cnt);
      std::uint64_t best = lo;
      for (std::uint64_t i = lo + 1; i < hi; ++i)
        if (!better(nd, best, i)) best = i;
      nd.group_best[gi] = static_cast<std::uint32_t>(best);
    }
    unsigned lv = groups <= 1 ? 1 : std::bit_width(groups - 1) + 1;
    nd.rmq.assign(lv, {});
    nd.rmq[0] = nd.group_best;
    for (unsigned k = 1; k < lv; ++k) {
      std::uint64_t span = 1ull << k;
      if (span > groups) break;
      nd.rmq[k].resize(groups - span + 1);
      for (std::uint64_t i = 0; i + span <= groups; ++i) {
        std::uint32_t a = nd.rmq[k - 1][i], b = nd.rmq[k - 1][i + span / 2];
        nd.rmq[k][i] = better(nd, a, b) ? a : b;
      }
    }

    // sampled x-coordinates for predecessor searches
    for (std::uint64_t i = 0; i < cnt; i += block_)
      nd.samp_x.push_back(root_x_[pos_in_root[id][i]]);

    // UP/C to the d_{k+1}-ancestor, where k is the node's largest class
    unsigned kcls = 0;
    for (unsigned k = 0; k + 1 < dk_.size(); ++k)
      if (height_of(width_, nd.level) % dk_[k] == 0) kcls = k;
    std::uint32_t anc = nd.parent;
    while (!is_dk(anc, std::min<unsigned>(kcls + 1, static_cast<unsigned>(dk_.size() - 1))))
      anc = nodes_[anc].parent;
    nd.up_target = anc;
    nd.chunk_bits = dk_[std::min<unsigned>(kcls + 1, static_cast<unsigned>(dk_.size() - 1))];
    std::uint64_t chunk = nd.chunk_bits >= 63 ? ~0ull : (1ull << nd.chunk_bits);

    const auto& anc_pos = pos_in_root[anc];
    std::uint64_t anc_cnt = anc_pos.size();
    std::uint64_t nchunks = (anc_cnt + chunk - 1) / chunk;
    if (nchunks == 0) nchunks = 1;
    BitVector c(cnt + nchunks);
    nd.up.resize(cnt);
    std::uint64_t ci = 0, bitpos = 0;
    for (std::uint64_t i = 0; i < cnt; ++i) {
      // position of this element inside the ancestor sequence
      std::uint64_t ap = std::lower_bound(anc_pos.begin(), anc_pos.end(), pos_in_root[id][i]) -
                         anc_pos.begin();
      std::uint64_t target_chunk = ap / chunk;
      while (ci < target_chunk) {
        ++bitpos;  // chunk terminator (0)
        ++ci;
      }
      c.set(bitpos++);
      nd.up[i] = static_cast<std::uint32_t>(ap % chunk);
    }
    // remaining terminators stay 0
    bitpos += nchunks - ci;
    assert(bitpos == cnt + nchunks);
    (void)bitpos;
    c.finalize();
    nd.c = std::move(c);
  }
}

std::uint64_t FastReport::translate(std::uint32_t id, std::uint64_t pos) const {
  while (id != 0) {
    const Node& nd = nodes_[id];
    std::uint64_t one_pos = nd.c.select1(pos);
    std::uint64_t chunk_idx = one_pos - pos;
    std::uint64_t chunk = nd.chunk_bits >= 63 ? ~0ull : (1ull << nd.chunk_bits);
    pos = chunk_idx * chunk + nd.up[pos];
    id = nd.up_target;
  }
  return pos;
}

std::uint32_t FastReport::hops_to_root(std::uint32_t id) const {
  std::uint32_t hops = 0;
  while (id != 0) {
    id = nodes_[id].up_target;
    ++hops;
  }
  return hops;
}

std::uint64_t FastReport::best_in_range(const Node& nd, std::uint64_t p1, std::uint64_t p2) const {
  std::uint32_t g = params_.group;
  std::uint64_t g1 = p1 / g, g2 = p2 / g;
  std::uint64_t best = p1;
  if (g1 == g2) {
    for (std::uint64_t i = p1 + 1; i <= p2; ++i)
      if (!better(nd, best, i)) best = i;
    return best;
  }
  for (std::uint64_t i = p1; i < (g1 + 1) * g; ++i)
    if (!better(nd, best, i)) best = i;
  for (std::uint64_t i = g2 * g; i <= p2; ++i)
    if (!better(nd, best, i)) best = i;
  if (g1 + 1 <= g2 - 1) {
    std::uint64_t lo = g1 + 1, cntg = g2 - 1 - g1;  // full groups [g1+1, g2-1]
    unsigned k = cntg == 1 ? 0 : std::bit_width(cntg) - 1;
    std::uint32_t a = nd.rmq[k][lo];
    std::uint32_t b = nd.rmq[k][g2 - (1ull << k)];
    std::uint32_t cand = better(nd, a, b) ? a : b;
    if (!better(nd, best, cand)) best = cand;
  }
  return best;
}

std::vector<std::uint64_t> FastReport::three_sided(std::uint32_t id, std::uint64_t p1,
                                                   std::uint64_t p2, std::uint64_t bound) const {
  std::vector<std::uint64_t> out;
  const Node& nd = nodes_[id];
  if (nd.y.empty()) return out;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> stack{{p1, p2}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    if (a > b || b >= nd.y.size()) continue;
    std::uint64_t m = best_in_range(nd, a, b);
    bool in = nd.is_right ? nd.y[m] <= bound : nd.y[m] >= bound;
    if (!in) continue;
    out.push_back(m);
    if (m > a) stack.push_back({a, m - 1});
    if (m < b) stack.push_back({m + 1, b});
  }
  return out;
}

std::int64_t FastReport::x_pred(std::uint32_t id, std::uint32_t bound) const {
  const Node& nd = nodes_[id];
  if (nd.y.empty()) return -1;
  // block of the last sample <= bound, then binary search inside it
  std::uint64_t nb = nd.samp_x.size();
  std::uint64_t blk = std::upper_bound(nd.samp_x.begin(), nd.samp_x.end(), bound) -
                      nd.samp_x.begin();
  if (blk == 0) return -1;
  std::uint64_t lo = (blk - 1) * block_;
  std::uint64_t hi = std::min<std::uint64_t>(blk * block_, nd.y.size()) - 1;
  (void)nb;
  while (lo < hi) {  // last position with x <= bound
    std::uint64_t mid = (lo + hi + 1) / 2;
    if (x_of(id, mid) <= bound)
      lo = mid;
    else
      hi = mid - 1;
  }
  return static_cast<std::int64_t>(lo);
}

std::int64_t FastReport::x_succ(std::uint32_t id, std::uint32_t bound) const {
  const Node& nd = nodes_[id];
  std::int64_t p = x_pred(id, bound);
  if (p >= 0 && x_of(id, static_cast<std::uint64_t>(p)) == bound) return p;
  std::int64_t nxt = p + 1;
  return nxt < static_cast<std::int64_t>(nd.y.size()) ? nxt
                                                      : static_cast<std::int64_t>(nd.y.size());
}

void FastReport::report(std::uint32_t xlo, std::uint32_t xhi, std::uint64_t ylo, std::uint64_t yhi,
                        const std::function<void(std::uint32_t, std::uint64_t)>& emit) const {
  if (nodes_.empty() || nodes_[0].y.empty() || xlo > xhi || ylo > yhi) return;
  std::uint64_t ymax = width_ >= 63 ? ~0ull : (1ull << width_) - 1;
  if (ylo > ymax) return;
  if (yhi > ymax) yhi = ymax;

  auto emit_at = [&](std::uint32_t id, std::uint64_t pos) {
    std::uint64_t rp = translate(id, pos);
    emit(root_x_[rp], nodes_[0].y[rp]);
  };
  auto three_sided_emit = [&](std::uint32_t id, std::uint64_t bound) {
    std::int64_t p1 = x_succ(id, xlo), p2 = x_pred(id, xhi);
    if (p1 >= static_cast<std::int64_t>(nodes_[id].y.size()) || p2 < 0 || p1 > p2) return;
    for (std::uint64_t pos : three_sided(id, p1, p2, bound)) emit_at(id, pos);
  };

  // walk to the lowest common ancestor of ylo and yhi in the bit tree
  std::uint32_t v = 0;
  unsigned level = 0;
  while (level < width_) {
    unsigned bit = width_ - 1 - level;
    int b1 = (ylo >> bit) & 1, b2 = (yhi >> bit) & 1;
    if (b1 != b2) break;
    std::uint32_t c = nodes_[v].child[b1];
    if (c == kNone) return;  // no stored y shares this prefix
    v = c;
    ++level;
  }
  if (level == width_) {
    // ylo == yhi: every element of v matches the y constraint
    std::int64_t p1 = x_succ(v, xlo), p2 = x_pred(v, xhi);
    for (std::int64_t p = p1; p <= p2 && p < static_cast<std::int64_t>(nodes_[v].y.size()); ++p)
      emit_at(v, static_cast<std::uint64_t>(p));
    return;
  }
  std::uint32_t vl = nodes_[v].child[0], vr = nodes_[v].child[1];
  if (vl != kNone) three_sided_emit(vl, ylo);  // left side: y >= ylo
  if (vr != kNone) three_sided_emit(vr, yhi);  // right side: y <= yhi
}

}  // namespace dcx
