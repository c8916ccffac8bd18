#include "dcx/ranges.hpp"

#include <algorithm>
#include <cassert>

namespace dcx {

PointSets PointSets::build(const TextModel& tm, const SampledSuffixTree& sst, bool fast_report,
                           FastReport::Params params) {
  PointSets ps;
  ps.sigma_ = tm.sigma();
  std::uint32_t r = tm.r();
  const std::uint32_t lens[4] = {r, 2 * r, 2 * r + 1, 4 * r + 2};
  ps.classes_.resize(4);
  for (int k = 0; k < 4; ++k) {
    Class& c = ps.classes_[k];
    c.run_len = lens[k];
    bool ok = checked_pow(tm.sigma(), lens[k], c.rev_universe);
    assert(ok);
    (void)ok;
    c.width = ceil_log2(c.rev_universe);
  }

  const auto& sel = tm.selected();
  const auto& run = tm.run_len_before();
  // ranks ascend with the class arrays sorted by ind afterwards
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> pts(ps.classes_.size());
  for (std::size_t k = 0; k < sel.size(); ++k) {
    std::uint32_t L = run[k];
    if (L == 0) continue;  // predecessor position is selected: no point
    std::size_t ci = 0;
    while (ps.classes_[ci].run_len != L) ++ci;
    Pos p = sel[k];
    std::uint64_t rev = 0;
    for (std::uint32_t j = 1; j <= L; ++j) rev = rev * tm.sigma() + tm.symbol_at(p - j);
    pts[ci].push_back({sst.rank_of(tm, p), rev});
  }
  for (std::size_t ci = 0; ci < ps.classes_.size(); ++ci) {
    auto& c = ps.classes_[ci];
    std::sort(pts[ci].begin(), pts[ci].end());
    c.ind.reserve(pts[ci].size());
    c.rev.reserve(pts[ci].size());
    for (auto& [ind, rev] : pts[ci]) {
      c.ind.push_back(ind);
      c.rev.push_back(rev);
    }
    c.wt = WaveletTree(c.rev, c.width);
  }
  if (fast_report) ps.attach_fast_report(params);
  return ps;
}

void PointSets::attach_fast_report(FastReport::Params params) {
  fast_report_ = true;
  for (auto& c : classes_)
    if (!c.fast) c.fast.emplace(c.ind, c.rev, c.width, params);
}

std::size_t PointSets::total_points() const {
  std::size_t s = 0;
  for (const auto& c : classes_) s += c.ind.size();
  return s;
}

std::uint64_t PointSets::pack_rev_prefix(const std::vector<Symbol>& q, std::uint32_t i,
                                         std::uint32_t sigma) {
  // most significant digit is the symbol immediately before the
  // selected position, i.e. q[i-1]
  std::uint64_t v = 0;
  for (std::uint32_t j = 0; j < i; ++j) v = v * sigma + q[i - 1 - j];
  return v;
}

void PointSets::class_query(const Class& c, std::uint32_t i, std::uint64_t rev_prefix,
                            std::uint32_t ind_lo, std::uint32_t ind_hi, std::uint64_t& ylo,
                            std::uint64_t& yhi, std::uint64_t& a, std::uint64_t& b) const {
  std::uint64_t mult = c.rev_universe;
  for (std::uint32_t j = 0; j < i; ++j) mult /= sigma_;  // sigma^(L-i)
  ylo = rev_prefix * mult;
  yhi = ylo + mult - 1;
  a = std::lower_bound(c.ind.begin(), c.ind.end(), ind_lo) - c.ind.begin();
  b = std::upper_bound(c.ind.begin(), c.ind.end(), ind_hi) - c.ind.begin();
}

std::uint64_t PointSets::count(std::uint32_t i, std::uint64_t rev_prefix, std::uint32_t ind_lo,
                               std::uint32_t ind_hi) const {
  assert(i >= 1);
  std::uint64_t total = 0;
  for (const auto& c : classes_) {
    if (c.run_len < i || ind_lo > ind_hi) continue;
    std::uint64_t ylo, yhi, a, b;
    class_query(c, i, rev_prefix, ind_lo, ind_hi, ylo, yhi, a, b);
    total += c.wt.count(a, b, ylo, yhi);
  }
  return total;
}

void PointSets::report_wavelet(std::uint32_t i, std::uint64_t rev_prefix, std::uint32_t ind_lo,
                               std::uint32_t ind_hi,
                               const std::function<void(const RangePoint&)>& emit) const {
  for (const auto& c : classes_) {
    if (c.run_len < i || ind_lo > ind_hi) continue;
    std::uint64_t ylo, yhi, a, b;
    class_query(c, i, rev_prefix, ind_lo, ind_hi, ylo, yhi, a, b);
    c.wt.report(a, b, ylo, yhi, [&](std::uint64_t pos, std::uint64_t val) {
      emit(RangePoint{c.run_len, c.ind[pos], val});
    });
  }
}

void PointSets::report(std::uint32_t i, std::uint64_t rev_prefix, std::uint32_t ind_lo,
                       std::uint32_t ind_hi,
                       const std::function<void(const RangePoint&)>& emit) const {
  if (!fast_report_) {
    report_wavelet(i, rev_prefix, ind_lo, ind_hi, emit);
    return;
  }
  for (const auto& c : classes_) {
    if (c.run_len < i || ind_lo > ind_hi) continue;
    std::uint64_t ylo, yhi, a, b;
    class_query(c, i, rev_prefix, ind_lo, ind_hi, ylo, yhi, a, b);
    (void)a;
    (void)b;
    c.fast->report(ind_lo, ind_hi, ylo, yhi, [&](std::uint32_t x, std::uint64_t y) {
      emit(RangePoint{c.run_len, x, y});
    });
  }
}

PointSets rebuild_points_from_sections(std::uint32_t sigma, std::vector<PointSets::Class> classes,
                                       bool fast, FastReport::Params params) {
  PointSets ps;
  ps.sigma_ = sigma;
  ps.classes_ = std::move(classes);
  if (fast) ps.attach_fast_report(params);
  return ps;
}

}  // namespace dcx
