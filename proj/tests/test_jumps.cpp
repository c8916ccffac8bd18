#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dcx/jumps.hpp"
#include "dcx/oracle.hpp"
#include "helpers.hpp"

using namespace dcx;
using namespace dcx::testing;

namespace {

struct Built {
  std::vector<Symbol> text;
  TextModel tm;
  SampledSuffixTree sst;
  LcpEngine lcp;
  Built(std::vector<Symbol> t, std::uint32_t sigma,
        std::optional<std::uint32_t> r = std::nullopt)
      : text(std::move(t)), tm(text, sigma, r), sst(SampledSuffixTree::build(tm)), lcp(tm, sst) {}
};

bool same_locus(const Locus& a, const Locus& b) {
  return a.node == b.node && a.child_lo == b.child_lo && a.child_hi == b.child_hi &&
         a.matched == b.matched;
}

// brute-force LCP(Q[i..], X0) over the materialized sample-prefix sets
std::uint64_t brute_x0_lcp(const Built& b, const std::vector<Symbol>& q, std::uint32_t i,
                           std::uint32_t period, std::uint32_t max_len) {
  std::uint64_t best = 0;
  for (std::uint32_t rank = 0; rank < b.sst.leaf_count(); rank += period) {
    Pos pos = b.sst.leaf_position(rank);
    std::uint64_t cap = std::min<std::uint64_t>(max_len, b.tm.n() - pos);
    std::uint64_t l = std::min(oracle::naive_lcp_pattern(b.text, q, i, pos), cap);
    best = std::max(best, l);
  }
  return best;
}

}  // namespace

TEST_CASE("jump_binary agrees with a fresh descend on text-witnessed targets") {
  std::mt19937_64 rng(61);
  for (std::uint32_t sigma : {2u, 4u, 16u}) {
    for (int rep = 0; rep < 3; ++rep) {
      auto text = rep == 1 ? repetitive_text(rng, 2600, sigma) : random_text(rng, 2600, sigma);
      Built b(std::move(text), sigma);
      std::uint32_t t = static_cast<std::uint32_t>(b.sst.leaf_count());
      unsigned budget_one = 3 * ceil_log2(t) + 2;
      QueryCounters qc;
      for (int it = 0; it < 600; ++it) {
        Pos f1 = b.tm.selected()[rng() % b.tm.selected().size()];
        std::uint32_t shift = rng() % (b.tm.max_gap() + 1);
        if (f1 + shift >= b.tm.n()) continue;
        std::uint64_t maxlen = b.tm.n() - (f1 + shift);
        std::uint64_t tl = 1 + rng() % std::min<std::uint64_t>(maxlen, 300);
        std::uint64_t before = qc.lcp_evals;
        JumpResult jr = jump_binary(b.tm, b.sst, b.lcp, f1, shift, tl, &qc);
        CHECK(qc.lcp_evals - before <= budget_one);
        std::vector<Symbol> target(b.text.begin() + f1 + shift, b.text.begin() + f1 + shift + tl);
        auto pq = b.tm.pack_query(target);
        Locus d = b.sst.descend(b.tm, pq, 0, target.size(), b.sst.root_locus());
        CHECK(jr.lcp_len == d.matched);
        CHECK(jr.full == (d.matched == tl));
        if (jr.lcp_len > 0) CHECK(same_locus(jr.locus, Locus{d.node, d.child_lo, d.child_hi, d.matched}));
      }
    }
  }
}

TEST_CASE("short tables: X0 loci match descend, trim links trim one symbol") {
  std::mt19937_64 rng(62);
  for (std::uint32_t period : {1u, 8u}) {
    auto text = random_text(rng, 1500, 4);
    Built b(std::move(text), 4);
    auto tabs = ShortJumpTables::build(b.tm, b.sst, period, 64);
    std::uint32_t checked = 0;
    for (std::uint32_t name = 1; name < tabs.name_count(); ++name) {
      auto s = tabs.string_of(name);
      REQUIRE(s.size() == tabs.depth(name));
      if (tabs.is_x0(name)) {
        auto pq = b.tm.pack_query(s);
        Locus d = b.sst.descend(b.tm, pq, 0, s.size(), b.sst.root_locus());
        REQUIRE(d.matched == s.size());
        Locus stored = tabs.x0_locus(name);
        REQUIRE(same_locus(stored, d));
        ++checked;
      }
      if (tabs.trim1(name) != ShortJumpTables::kNone) {
        auto ts = tabs.string_of(tabs.trim1(name));
        REQUIRE(ts == std::vector<Symbol>(s.begin() + 1, s.end()));
      }
    }
    CHECK(checked > 0);
    // names are ranks in sorted order of X
    for (std::uint32_t name = 2; name < tabs.name_count(); ++name) {
      auto a = tabs.string_of(name - 1), c = tabs.string_of(name);
      CHECK(std::lexicographical_compare(a.begin(), a.end(), c.begin(), c.end()));
    }
  }
  // period beyond the leaf count: degenerate but valid tables
  auto text = random_text(rng, 600, 4);
  Built b2(std::move(text), 4);
  auto tabs = ShortJumpTables::build(b2.tm, b2.sst, 1u << 20, 64);
  CHECK(tabs.name_count() > 1);
}

TEST_CASE("find_x0_prefixes matches the brute-force X0 LCP for every shift") {
  std::mt19937_64 rng(63);
  for (std::uint32_t sigma : {2u, 4u}) {
    for (std::uint32_t period : {1u, 8u, 64u}) {
      auto text = sigma == 2 ? repetitive_text(rng, 2200, sigma) : random_text(rng, 2200, sigma);
      Built b(std::move(text), sigma);
      std::uint32_t lambda = std::max<std::uint32_t>(96, 8 * (4 * b.tm.r() + 4));
      auto tabs = ShortJumpTables::build(b.tm, b.sst, period, lambda);
      for (int it = 0; it < 300; ++it) {
        std::size_t len = 4 * b.tm.r() + 4 + rng() % (lambda - 4 * b.tm.r() - 4);
        auto q = it % 2 ? sample_pattern(rng, b.text, len) : random_text(rng, len, sigma);
        auto pis = tabs.find_x0_prefixes(b.tm, q);
        for (std::uint32_t i = 0; i < pis.size() && i < q.size(); ++i) {
          std::uint64_t want = brute_x0_lcp(b, q, i, period, lambda);
          REQUIRE(pis[i].len == want);
          if (pis[i].name != ShortJumpTables::kNone) {
            auto s = tabs.string_of(pis[i].name);
            REQUIRE(s.size() == want);
            REQUIRE(std::equal(s.begin(), s.end(), q.begin() + i));
          }
        }
      }
    }
  }
}

TEST_CASE("three-way agreement: jump_short, jump_binary composition, fresh descend") {
  std::mt19937_64 rng(64);
  for (std::uint32_t sigma : {2u, 4u, 16u}) {
    for (std::uint32_t period : {1u, 8u, 64u}) {
      auto text = sigma == 4 ? repetitive_text(rng, 3000, sigma) : random_text(rng, 3000, sigma);
      Built b(std::move(text), sigma);
      std::uint32_t p = 4 * b.tm.r() + 3;
      for (std::uint32_t lambda : {p + 1, 256u}) {
        auto tabs = ShortJumpTables::build(b.tm, b.sst, period, lambda);
        QueryCounters qc;
        for (int it = 0; it < 250; ++it) {
          std::size_t len = p + 1 + rng() % (lambda - p);
          auto q = it % 2 ? sample_pattern(rng, b.text, len) : random_text(rng, len, sigma);
          auto pq = b.tm.pack_query(q);
          auto pis = tabs.find_x0_prefixes(b.tm, q);
          Locus d0 = b.sst.descend(b.tm, pq, 0, q.size(), b.sst.root_locus());
          for (std::uint32_t i = 1; i <= p && i < q.size(); ++i) {
            // fresh descend of Q[i..]
            Locus d = b.sst.descend(b.tm, pq, i, q.size(), b.sst.root_locus());
            // dictionary-accelerated short jump
            JumpResult s = tabs.jump_short(b.tm, b.sst, pq, q, i, pis[i], &qc);
            REQUIRE(s.lcp_len == d.matched);
            REQUIRE(same_locus(s.locus, d));
            REQUIRE(s.full == (d.matched == q.size() - i));
            // binary jump from the strongest available witness (i = 0)
            Locus composed;
            if (d0.matched <= i) {
              composed = d;  // no witness covers the shift: engine re-descends
            } else {
              Pos f1 = b.sst.leaf_position(b.sst.locus_witness(d0));
              JumpResult jb = jump_binary(b.tm, b.sst, b.lcp, f1, i, d0.matched - i, &qc);
              composed = jb.locus;
              if (jb.full && d0.matched < q.size())
                composed = b.sst.descend(b.tm, pq, i, q.size(), jb.locus);
            }
            REQUIRE(composed.matched == d.matched);
            REQUIRE(same_locus(composed, d));
          }
        }
        CHECK(qc.restricted_leaves_max <= static_cast<std::uint64_t>(period) *
                                              (6 * b.tm.r() + 4));
      }
    }
  }
}
