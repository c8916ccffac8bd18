#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "dcx/oracle.hpp"
#include "dcx/ranges.hpp"
#include "helpers.hpp"

using namespace dcx;
using namespace dcx::testing;

namespace {

struct Built {
  std::vector<Symbol> text;
  TextModel tm;
  SampledSuffixTree sst;
  PointSets ps;
  Built(std::vector<Symbol> t, std::uint32_t sigma, bool fast,
        std::optional<std::uint32_t> r = std::nullopt)
      : text(std::move(t)),
        tm(text, sigma, r),
        sst(SampledSuffixTree::build(tm)),
        ps(PointSets::build(tm, sst, fast)) {}
};

using Triple = std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>;

std::multiset<Triple> scan_query(const Built& b, std::uint32_t i, std::uint64_t rev_prefix,
                                 std::uint32_t ind_lo, std::uint32_t ind_hi) {
  std::multiset<Triple> out;
  for (const auto& c : b.ps.classes()) {
    if (c.run_len < i) continue;
    std::uint64_t mult = c.rev_universe;
    for (std::uint32_t j = 0; j < i; ++j) mult /= b.tm.sigma();
    for (std::size_t k = 0; k < c.ind.size(); ++k)
      if (c.ind[k] >= ind_lo && c.ind[k] <= ind_hi && c.rev[k] / mult == rev_prefix)
        out.insert({c.run_len, c.ind[k], c.rev[k]});
  }
  return out;
}

}  // namespace

TEST_CASE("bitvector rank and select agree with a scan") {
  std::mt19937_64 rng(40);
  for (std::uint64_t n : {1ull, 63ull, 64ull, 65ull, 777ull}) {
    BitVector bv(n);
    std::vector<bool> ref(n);
    for (std::uint64_t i = 0; i < n; ++i)
      if (rng() % 3 == 0) {
        bv.set(i);
        ref[i] = true;
      }
    bv.finalize();
    std::uint64_t ones = 0, zeros = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      REQUIRE(bv.rank1(i) == ones);
      REQUIRE(bv.rank0(i) == zeros);
      if (ref[i]) {
        REQUIRE(bv.select1(ones) == i);
        ++ones;
      } else {
        REQUIRE(bv.select0(zeros) == i);
        ++zeros;
      }
    }
    REQUIRE(bv.rank1(n) == ones);
  }
}

TEST_CASE("wavelet tree: access reconstructs the sequence, count/report vs scan") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 20; ++rep) {
    std::size_t n = 1 + rng() % 400;
    unsigned width = 1 + rng() % 16;
    std::vector<std::uint64_t> vals(n);
    for (auto& v : vals) v = rng() & ((1ull << width) - 1);
    WaveletTree wt(vals, width);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(wt.access(i) == vals[i]);
    for (int q = 0; q < 150; ++q) {
      std::uint64_t a = rng() % (n + 1), b = rng() % (n + 1);
      if (a > b) std::swap(a, b);
      std::uint64_t y1 = rng() & ((1ull << width) - 1), y2 = rng() & ((1ull << width) - 1);
      if (y1 > y2) std::swap(y1, y2);
      std::uint64_t want = 0;
      std::multiset<std::pair<std::uint64_t, std::uint64_t>> wantset;
      for (std::uint64_t i = a; i < b; ++i)
        if (vals[i] >= y1 && vals[i] <= y2) {
          ++want;
          wantset.insert({i, vals[i]});
        }
      REQUIRE(wt.count(a, b, y1, y2) == want);
      std::multiset<std::pair<std::uint64_t, std::uint64_t>> got;
      wt.report(a, b, y1, y2, [&](std::uint64_t p, std::uint64_t v) { got.insert({p, v}); });
      REQUIRE(got == wantset);
    }
  }
}

TEST_CASE("point sets: one point per positive run, classes recount") {
  std::mt19937_64 rng(42);
  for (std::uint32_t sigma : {2u, 4u, 16u}) {
    auto text = random_text(rng, 3000, sigma);
    Built b(std::move(text), sigma, false);
    std::size_t want = 0;
    for (std::uint32_t rl : b.tm.run_len_before()) want += rl > 0 ? 1 : 0;
    CHECK(b.ps.total_points() == want);
    for (const auto& c : b.ps.classes()) {
      for (std::size_t k = 0; k < c.ind.size(); ++k) {
        if (k) CHECK(c.ind[k - 1] < c.ind[k]);
        Pos p = b.sst.leaf_position(c.ind[k]);
        std::uint64_t si = b.tm.selected_index(p);
        CHECK(b.tm.run_len_before()[si] == c.run_len);
        // rev digits: most significant is the symbol nearest p
        std::uint64_t rev = 0;
        for (std::uint32_t j = 1; j <= c.run_len; ++j) rev = rev * sigma + b.text[p - j];
        CHECK(c.rev[k] == rev);
      }
    }
  }
}

TEST_CASE("count and report match the linear scan on random rectangles") {
  std::mt19937_64 rng(43);
  for (std::uint32_t sigma : {2u, 4u, 64u}) {
    auto text = sigma == 4 ? repetitive_text(rng, 4000, sigma) : random_text(rng, 4000, sigma);
    Built b(std::move(text), sigma, false);
    std::uint32_t t = static_cast<std::uint32_t>(b.sst.leaf_count());
    std::uint32_t maxi = 4 * b.tm.r() + 2;
    for (int q = 0; q < 3000; ++q) {
      std::uint32_t i = 1 + rng() % maxi;
      std::uint32_t lo = rng() % t, hi = rng() % t;
      if (lo > hi) std::swap(lo, hi);
      if (q % 17 == 0) hi = lo ? lo - 1 : 0;  // empty index range now and then
      auto pat = random_text(rng, i, sigma);
      if (q % 2) pat = sample_pattern(rng, b.text, i);
      std::uint64_t pref = PointSets::pack_rev_prefix(pat, i, sigma);
      auto want = scan_query(b, i, pref, lo, hi);
      CHECK(b.ps.count(i, pref, lo, hi) == want.size());
      std::multiset<Triple> got;
      b.ps.report(i, pref, lo, hi,
                  [&](const RangePoint& p) { got.insert({p.run_len, p.ind, p.rev}); });
      CHECK(got == want);
    }
    // i == L exactly: degenerate one-value rev interval
    for (const auto& c : b.ps.classes()) {
      if (c.ind.empty()) continue;
      std::uint32_t i = c.run_len;
      if (i > maxi) continue;
      Pos p = b.sst.leaf_position(c.ind[0]);
      std::vector<Symbol> pat(b.text.begin() + (p - i), b.text.begin() + p);
      std::uint64_t pref = PointSets::pack_rev_prefix(pat, i, sigma);
      auto want = scan_query(b, i, pref, 0, t - 1);
      CHECK(b.ps.count(i, pref, 0, t - 1) == want.size());
      CHECK(want.size() >= 1);
    }
  }
}

TEST_CASE("fast report equals the wavelet path on fuzz rectangles") {
  std::mt19937_64 rng(44);
  for (std::uint32_t sigma : {2u, 4u, 16u}) {
    auto text = sigma == 4 ? repetitive_text(rng, 3500, sigma) : random_text(rng, 3500, sigma);
    Built b(std::move(text), sigma, true);
    std::uint32_t t = static_cast<std::uint32_t>(b.sst.leaf_count());
    std::uint32_t maxi = 4 * b.tm.r() + 2;
    for (int q = 0; q < 4000; ++q) {
      std::uint32_t i = 1 + rng() % maxi;
      std::uint32_t lo = rng() % t, hi = rng() % t;
      if (lo > hi) std::swap(lo, hi);
      auto pat = q % 2 ? sample_pattern(rng, b.text, i) : random_text(rng, i, sigma);
      std::uint64_t pref = PointSets::pack_rev_prefix(pat, i, sigma);
      std::multiset<Triple> viaw, viaf;
      b.ps.report_wavelet(i, pref, lo, hi,
                          [&](const RangePoint& p) { viaw.insert({p.run_len, p.ind, p.rev}); });
      b.ps.report(i, pref, lo, hi,
                  [&](const RangePoint& p) { viaf.insert({p.run_len, p.ind, p.rev}); });
      REQUIRE(viaw == viaf);
      REQUIRE(b.ps.count(i, pref, lo, hi) == viaf.size());
    }
  }
}

TEST_CASE("fast report structure: translation round trip and three-sided exactness") {
  std::mt19937_64 rng(45);
  std::size_t n = 600;
  unsigned width = 12;
  std::vector<std::uint32_t> xs(n);
  std::vector<std::uint64_t> ys(n);
  std::uint32_t x = 0;
  for (std::size_t i = 0; i < n; ++i) {
    x += 1 + rng() % 5;  // strictly increasing, sparse x universe
    xs[i] = x;
    ys[i] = rng() & ((1ull << width) - 1);
  }
  FastReport fr(xs, ys, width, {4, 1.0 / 3.0});

  // every stored point walks back to its own root slot
  for (std::uint32_t id = 0; id < fr.node_count(); ++id) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t p = 0; p < fr.node_size(id); ++p) {
      std::uint64_t rp = fr.translate(id, p);
      CHECK(ys[rp] == fr.node_value(id, p));
      CHECK(seen.insert(rp).second);
    }
    if (id) CHECK(fr.hops_to_root(id) <= 3);  // ceil(1/epsilon)
  }

  // three-sided per node vs scan
  for (std::uint32_t id = 1; id < fr.node_count(); ++id) {
    std::uint64_t cnt = fr.node_size(id);
    if (cnt == 0) continue;
    for (int q = 0; q < 30; ++q) {
      std::uint64_t p1 = rng() % cnt, p2 = rng() % cnt;
      if (p1 > p2) std::swap(p1, p2);
      std::uint64_t bound = rng() & ((1ull << width) - 1);
      auto got = fr.three_sided(id, p1, p2, bound);
      std::set<std::uint64_t> gotset(got.begin(), got.end());
      CHECK(gotset.size() == got.size());
      for (std::uint64_t p = p1; p <= p2; ++p) {
        bool in = fr.node_is_right(id) ? fr.node_value(id, p) <= bound
                                       : fr.node_value(id, p) >= bound;
        CHECK(gotset.count(p) == (in ? 1u : 0u));
      }
    }
  }

  // rectangle queries vs scan, including single-point and disjoint cases
  for (int q = 0; q < 4000; ++q) {
    std::uint32_t x1 = rng() % (x + 3), x2 = rng() % (x + 3);
    if (x1 > x2) std::swap(x1, x2);
    std::uint64_t y1 = rng() & ((1ull << width) - 1), y2 = rng() & ((1ull << width) - 1);
    if (y1 > y2) std::swap(y1, y2);
    std::multiset<std::pair<std::uint32_t, std::uint64_t>> want, got;
    for (std::size_t i = 0; i < n; ++i)
      if (xs[i] >= x1 && xs[i] <= x2 && ys[i] >= y1 && ys[i] <= y2) want.insert({xs[i], ys[i]});
    fr.report(x1, x2, y1, y2,
              [&](std::uint32_t px, std::uint64_t py) { got.insert({px, py}); });
    REQUIRE(got == want);
  }
  FastReport single(std::vector<std::uint32_t>{5}, std::vector<std::uint64_t>{9}, 4, {});
  int hits = 0;
  single.report(0, 10, 0, 15, [&](std::uint32_t, std::uint64_t) { ++hits; });
  CHECK(hits == 1);
  single.report(6, 10, 0, 15, [&](std::uint32_t, std::uint64_t) { ++hits; });
  CHECK(hits == 1);
}
