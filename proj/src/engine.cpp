#include "dcx/engine.hpp"

#include <algorithm>
#include <cassert>

namespace dcx {

Index Index::build(std::vector<Symbol> text, std::uint32_t sigma, IndexConfig cfg) {
  Index ix;
  ix.text_ = std::move(text);
  ix.sigma_ = sigma;
  ix.tm_ = std::make_unique<TextModel>(ix.text_, sigma, cfg.r);
  cfg.r = ix.tm_->r();  // echo the resolved scale
  if (cfg.x0_max_len == 0)
    cfg.x0_max_len = std::max<std::uint32_t>(256, 8 * (4 * ix.tm_->r() + 4));
  ix.cfg_ = cfg;
  ix.small_ = std::make_unique<SmallPatternIndex>(SmallPatternIndex::build(*ix.tm_));
  if (!ix.tm_->tiny()) {
    ix.sst_ = std::make_unique<SampledSuffixTree>(SampledSuffixTree::build(*ix.tm_));
    ix.lcp_ = std::make_unique<LcpEngine>(*ix.tm_, *ix.sst_);
    ix.points_ = std::make_unique<PointSets>(
        PointSets::build(*ix.tm_, *ix.sst_, cfg.fast_report, cfg.fast_params));
    ix.jumps_ = std::make_unique<ShortJumpTables>(
        ShortJumpTables::build(*ix.tm_, *ix.sst_, cfg.x0_period, cfg.x0_max_len));
  }
  return ix;
}

Index Index::assemble(std::vector<Symbol> text, std::uint32_t sigma, IndexConfig cfg,
                      std::unique_ptr<TextModel> tm, std::unique_ptr<SampledSuffixTree> sst,
                      std::unique_ptr<PointSets> points, std::unique_ptr<ShortJumpTables> jumps,
                      std::unique_ptr<SmallPatternIndex> small) {
  Index ix;
  ix.text_ = std::move(text);
  ix.sigma_ = sigma;
  ix.cfg_ = cfg;
  ix.tm_ = std::move(tm);
  ix.sst_ = std::move(sst);
  ix.points_ = std::move(points);
  ix.jumps_ = std::move(jumps);
  ix.small_ = std::move(small);
  if (ix.sst_) ix.lcp_ = std::make_unique<LcpEngine>(*ix.tm_, *ix.sst_);
  return ix;
}

std::vector<Pos> Index::scan_fallback(const std::vector<Symbol>& q) const {
  // tiny texts only: patterns longer than the small-pattern limit
  std::vector<Pos> out;
  const auto& t = text_;
  if (q.size() > t.size()) return out;
  for (Pos f = 0; f + q.size() <= t.size(); ++f) {
    Pos k = 0;
    while (k < q.size() && t[f + k] == q[k]) ++k;
    if (k == q.size()) out.push_back(f);
  }
  return out;
}

template <typename EmitRange, typename EmitPoint>
std::uint64_t Index::run_query(const std::vector<Symbol>& q, QueryCounters* counters,
                               JumpMode mode, EmitRange&& emit_zero,
                               EmitPoint&& emit_point) const {
  const TextModel& tm = *tm_;
  const SampledSuffixTree& sst = *sst_;
  const std::uint64_t qlen = q.size();
  const unsigned m = tm.meta_width();
  const std::uint32_t max_gap = tm.max_gap();

  PackedSymbols pq = tm.pack_query(q);
  auto run_descend = [&](std::uint64_t qoff, Locus start) {
    std::uint64_t consumed = 0;
    Locus l = sst.descend(tm, pq, qoff, qlen, start, &consumed);
    if (counters) counters->meta_steps += (consumed + m - 1) / m;
    return l;
  };

  bool use_short = mode == JumpMode::ForceShort ||
                   (mode == JumpMode::Auto && qlen <= jumps_->max_len());
  if (mode == JumpMode::ForceBinary || mode == JumpMode::FreshDescend) use_short = false;
  std::vector<ShortJumpTables::PrefixInfo> pis;
  if (use_short) pis = jumps_->find_x0_prefixes(tm, q);

  std::vector<Locus> loci(max_gap);
  std::vector<std::uint64_t> q_abs(max_gap, 0);

  loci[0] = run_descend(0, sst.root_locus());
  q_abs[0] = loci[0].matched;

  std::uint64_t total = 0;
  if (q_abs[0] == qlen) {
    auto [lo, hi] = sst.locus_leaves(loci[0]);
    total += static_cast<std::uint64_t>(hi) - lo + 1;
    emit_zero(lo, hi);
  }

  std::uint32_t imax = static_cast<std::uint32_t>(
      std::min<std::uint64_t>(max_gap - 1, qlen - 1));
  for (std::uint32_t i = 1; i <= imax; ++i) {
    if (use_short) {
      JumpResult jr = jumps_->jump_short(tm, sst, pq, q, i, pis[i], counters);
      loci[i] = jr.locus;
      q_abs[i] = i + jr.lcp_len;
    } else {
      std::uint32_t t = 0;
      for (std::uint32_t j = 1; j < i; ++j)
        if (q_abs[j] > q_abs[t]) t = j;
      if (mode == JumpMode::FreshDescend || q_abs[t] <= i) {
        loci[i] = run_descend(i, sst.root_locus());
        q_abs[i] = i + loci[i].matched;
      } else {
        Pos f1 = sst.leaf_position(sst.locus_witness(loci[t]));
        JumpResult jr =
            jump_binary(tm, sst, *lcp_, f1, i - t, q_abs[t] - i, counters);
        if (jr.full && q_abs[t] < qlen) {
          loci[i] = run_descend(i, jr.locus);
          q_abs[i] = i + loci[i].matched;
        } else {
          loci[i] = jr.locus;
          q_abs[i] = i + jr.lcp_len;
        }
      }
    }
    if (q_abs[i] != qlen) continue;
    // every sampled suffix below the locus extends an i-occurrence iff
    // the i preceding symbols match the reversed pattern prefix
    if (counters) counters->range_queries++;
    auto [lo, hi] = sst.locus_leaves(loci[i]);
    std::uint64_t pref = PointSets::pack_rev_prefix(q, i, tm.sigma());
    total += emit_point(i, pref, lo, hi);
  }
  return total;
}

std::uint64_t Index::count(const std::vector<Symbol>& q, QueryCounters* counters,
                           JumpMode mode) const {
  for (Symbol c : q)
    if (c >= sigma_) return 0;
  if (q.empty() || q.size() > text_.size()) return 0;
  if (q.size() <= small_->p()) return small_->count(q);
  if (tm_->tiny()) return scan_fallback(q).size();
  return run_query(
      q, counters, mode, [](std::uint32_t, std::uint32_t) {},
      [&](std::uint32_t i, std::uint64_t pref, std::uint32_t lo, std::uint32_t hi) {
        return points_->count(i, pref, lo, hi);
      });
}

std::vector<Pos> Index::locate(const std::vector<Symbol>& q, QueryCounters* counters,
                               JumpMode mode) const {
  std::vector<Pos> out;
  for (Symbol c : q)
    if (c >= sigma_) return out;
  if (q.empty() || q.size() > text_.size()) return out;
  if (q.size() <= small_->p()) return small_->locate(q);
  if (tm_->tiny()) return scan_fallback(q);
  run_query(
      q, counters, mode,
      [&](std::uint32_t lo, std::uint32_t hi) {
        for (std::uint32_t k = lo; k <= hi; ++k) out.push_back(sst_->leaf_position(k));
      },
      [&](std::uint32_t i, std::uint64_t pref, std::uint32_t lo, std::uint32_t hi) {
        std::uint64_t emitted = 0;
        points_->report(i, pref, lo, hi, [&](const RangePoint& p) {
          out.push_back(sst_->leaf_position(p.ind) - i);
          ++emitted;
        });
        return emitted;
      });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dcx
