#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dcx/oracle.hpp"
#include "dcx/smallpat.hpp"
#include "helpers.hpp"

using namespace dcx;
using namespace dcx::testing;

namespace {

void check_all_patterns_exhaustive(const std::vector<Symbol>& text, std::uint32_t sigma,
                                   std::optional<std::uint32_t> r = std::nullopt) {
  TextModel tm(text, sigma, r);
  auto sp = SmallPatternIndex::build(tm);
  std::vector<Symbol> q;
  // enumerate sigma^j patterns for every j <= p (sigma kept small here)
  for (std::uint32_t j = 1; j <= sp.p(); ++j) {
    std::uint64_t total = 1;
    for (std::uint32_t k = 0; k < j; ++k) total *= sigma;
    if (total > 70000) break;
    for (std::uint64_t code = 0; code < total; ++code) {
      q.assign(j, 0);
      std::uint64_t c = code;
      for (std::uint32_t k = 0; k < j; ++k) {
        q[k] = static_cast<Symbol>(c % sigma);
        c /= sigma;
      }
      auto want = oracle::naive_search(text, q);
      REQUIRE(sp.count(q) == want.size());
      REQUIRE(sp.locate(q) == want);
    }
  }
}

}  // namespace

TEST_CASE("all-a text counts single symbols everywhere") {
  std::vector<Symbol> text(4, 0);
  TextModel tm(text, 2, 1u);
  auto sp = SmallPatternIndex::build(tm);
  CHECK(sp.count({0}) == 4);
  CHECK(sp.count({1}) == 0);
  CHECK(sp.locate({0}) == std::vector<Pos>{0, 1, 2, 3});
}

TEST_CASE("exhaustive equality with the oracle on binary texts") {
  std::mt19937_64 rng(51);
  check_all_patterns_exhaustive(random_text(rng, 500, 2), 2, 1u);
  check_all_patterns_exhaustive(repetitive_text(rng, 700, 2), 2, 1u);
  check_all_patterns_exhaustive(random_text(rng, 2000, 2), 2);  // default r
  check_all_patterns_exhaustive(std::vector<Symbol>(300, 1), 2, 1u);
}

TEST_CASE("direct-address and associative modes answer identically") {
  std::mt19937_64 rng(52);
  auto text = random_text(rng, 1500, 2);
  TextModel tm_small(text, 2, 1u);  // sigma^(2p) = 2^14: direct
  auto sp = SmallPatternIndex::build(tm_small);
  CHECK(sp.direct());
  auto big = random_text(rng, 1500, 16);
  TextModel tm_big(big, 16, 1u);  // 16^14: associative
  auto sp2 = SmallPatternIndex::build(tm_big);
  CHECK(!sp2.direct());
  for (int it = 0; it < 2000; ++it) {
    std::size_t len = 1 + rng() % sp2.p();
    auto q = it % 2 ? sample_pattern(rng, big, len) : random_text(rng, len, 16);
    auto want = oracle::naive_search(big, q);
    REQUIRE(sp2.count(q) == want.size());
    REQUIRE(sp2.locate(q) == want);
  }
}

TEST_CASE("randomized equality across alphabets, boundary occurrences included") {
  std::mt19937_64 rng(53);
  for (std::uint32_t sigma : {4u, 64u}) {
    for (int rep = 0; rep < 3; ++rep) {
      std::size_t n = 300 + rng() % 3000;
      auto text = rep % 2 ? repetitive_text(rng, n, sigma) : random_text(rng, n, sigma);
      TextModel tm(text, sigma);
      auto sp = SmallPatternIndex::build(tm);
      for (int it = 0; it < 1200; ++it) {
        std::size_t len = 1 + rng() % sp.p();
        std::vector<Symbol> q;
        switch (it % 4) {
          case 0: q = random_text(rng, len, sigma); break;
          case 1: q = sample_pattern(rng, text, len); break;
          case 2:  // straddle a block boundary on purpose
          default: {
            Pos f = (1 + rng() % ((n - len) / sp.p())) * sp.p() - std::min<Pos>(len / 2, len - 1);
            q.assign(text.begin() + f, text.begin() + f + len);
            break;
          }
        }
        auto want = oracle::naive_search(text, q);
        REQUIRE(sp.count(q) == want.size());
        auto got = sp.locate(q);
        REQUIRE(got == want);
        // no duplicates by construction
        REQUIRE(std::adjacent_find(got.begin(), got.end()) == got.end());
      }
    }
  }
}

TEST_CASE("patterns ending past n are filtered") {
  std::vector<Symbol> text{0, 1, 0, 1, 1};
  TextModel tm(text, 2, 1u);
  auto sp = SmallPatternIndex::build(tm);
  CHECK(sp.count({1, 1}) == 1);
  CHECK(sp.locate({1, 1}) == std::vector<Pos>{3});
  CHECK(sp.count({1, 1, 0}) == 0);
}

TEST_CASE("rebuild from serialized sections answers identically") {
  std::mt19937_64 rng(54);
  auto text = random_text(rng, 800, 4);
  TextModel tm(text, 4);
  auto sp = SmallPatternIndex::build(tm);
  auto sp2 = SmallPatternIndex::rebuild(tm, sp.block_of(), sp.rep_block());
  for (int it = 0; it < 500; ++it) {
    std::size_t len = 1 + rng() % sp.p();
    auto q = it % 2 ? sample_pattern(rng, text, len) : random_text(rng, len, 4);
    REQUIRE(sp.count(q) == sp2.count(q));
    REQUIRE(sp.locate(q) == sp2.locate(q));
  }
}
