#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <thread>

#include "dcx/engine.hpp"
#include "dcx/oracle.hpp"
#include "helpers.hpp"

using namespace dcx;
using namespace dcx::testing;

namespace {

std::vector<Symbol> make_pattern(std::mt19937_64& rng, const std::vector<Symbol>& text,
                                 std::uint32_t sigma, std::size_t maxlen) {
  std::size_t len = 1 + rng() % maxlen;
  return rng() % 2 ? sample_pattern(rng, text, len) : random_text(rng, len, sigma);
}

}  // namespace

TEST_CASE("count and locate match the oracle in every jump mode") {
  std::mt19937_64 rng(71);
  for (std::uint32_t sigma : {2u, 4u, 16u, 64u}) {
    for (int rep = 0; rep < 2; ++rep) {
      std::size_t n = 1000 + rng() % 7000;
      auto text = rep ? repetitive_text(rng, n, sigma) : random_text(rng, n, sigma);
      auto ix = Index::build(text, sigma);
      for (int it = 0; it < 400; ++it) {
        auto q = make_pattern(rng, text, sigma, 200);
        auto want = oracle::naive_search(text, q);
        REQUIRE(oracle::quadratic_count(text, q) == want.size());
        for (auto mode : {Index::JumpMode::Auto, Index::JumpMode::ForceBinary,
                          Index::JumpMode::ForceShort, Index::JumpMode::FreshDescend}) {
          if (mode == Index::JumpMode::ForceShort && q.size() > ix.x0_max_len()) continue;
          REQUIRE(ix.count(q, nullptr, mode) == want.size());
          auto got = ix.locate(q, nullptr, mode);
          REQUIRE(got == want);
        }
      }
    }
  }
}

TEST_CASE("whole text matches only itself") {
  std::mt19937_64 rng(72);
  auto text = random_text(rng, 2500, 4);
  auto ix = Index::build(text, 4);
  CHECK(ix.count(text) == 1);
  CHECK(ix.locate(text) == std::vector<Pos>{0});
}

TEST_CASE("counter bounds hold on a fuzz corpus") {
  std::mt19937_64 rng(73);
  for (std::uint32_t sigma : {2u, 16u}) {
    auto text = random_text(rng, 6000, sigma);
    auto ix = Index::build(text, sigma);
    const auto& tm = ix.text_model();
    std::uint64_t t = ix.sst().leaf_count();
    std::uint32_t r = tm.r();
    for (int it = 0; it < 300; ++it) {
      auto q = make_pattern(rng, text, sigma, 400);
      if (q.size() <= ix.small_pattern_limit()) continue;
      QueryCounters qc;
      ix.count(q, &qc);
      std::uint64_t budget = (q.size() + tm.meta_width() - 1) / tm.meta_width() + 4 * r + 3;
      CHECK(qc.meta_steps <= budget);
      if (q.size() > ix.x0_max_len())
        CHECK(qc.lcp_evals <= 3ull * (4 * r + 3) * ceil_log2(t));
      CHECK(qc.restricted_leaves_max <=
            static_cast<std::uint64_t>(ix.config().x0_period) * (6 * r + 4));
    }
  }
}

TEST_CASE("tiny texts answer through the small index and scanning") {
  std::mt19937_64 rng(74);
  for (std::size_t n : {1ull, 3ull, 9ull, 30ull}) {
    auto text = random_text(rng, n, 4);
    auto ix = Index::build(text, 4);
    CHECK(ix.tiny());
    for (int it = 0; it < 300; ++it) {
      auto q = make_pattern(rng, text, 4, std::max<std::size_t>(2 * n, 4));
      auto want = oracle::naive_search(text, q);
      CHECK(ix.count(q) == want.size());
      CHECK(ix.locate(q) == want);
    }
  }
}

TEST_CASE("out-of-alphabet and oversized patterns answer zero") {
  std::mt19937_64 rng(75);
  auto text = random_text(rng, 2000, 4);
  auto ix = Index::build(text, 4);
  CHECK(ix.count({1, 2, 9}) == 0);
  CHECK(ix.locate({9}).empty());
  auto longq = random_text(rng, 3000, 4);
  CHECK(ix.count(longq) == 0);
  CHECK(ix.count({}) == 0);
}

TEST_CASE("locate emits no duplicates and count always equals its size") {
  std::mt19937_64 rng(76);
  auto text = repetitive_text(rng, 8000, 2);
  auto ix = Index::build(text, 2);
  for (int it = 0; it < 300; ++it) {
    auto q = make_pattern(rng, text, 2, 120);
    auto got = ix.locate(q);
    CHECK(std::adjacent_find(got.begin(), got.end()) == got.end());
    CHECK(ix.count(q) == got.size());
    // partition: each hit is classified by its leftmost selected offset
    if (q.size() > ix.small_pattern_limit())
      for (Pos f : got) {
        std::uint32_t i = 0;
        while (!ix.text_model().is_selected(f + i)) ++i;
        CHECK(i <= 4 * ix.text_model().r() + 2);
      }
  }
}

TEST_CASE("wide alphabets (sym16 range) answer correctly") {
  std::mt19937_64 rng(78);
  // sigma = 1000 keeps r = 1 feasible; sigma = 3000 forces the tiny route
  for (std::uint32_t sigma : {1000u, 3000u}) {
    auto text = random_text(rng, 3000, sigma);
    auto ix = Index::build(text, sigma);
    CHECK(ix.tiny() == (sigma == 3000));
    for (int it = 0; it < 250; ++it) {
      auto q = make_pattern(rng, text, sigma, 40);
      auto want = oracle::naive_search(text, q);
      REQUIRE(ix.count(q) == want.size());
      REQUIRE(ix.locate(q) == want);
    }
  }
}

TEST_CASE("concurrent readers see identical answers") {
  std::mt19937_64 rng(77);
  auto text = random_text(rng, 5000, 4);
  auto ix = Index::build(text, 4);
  std::vector<std::vector<Symbol>> qs;
  std::vector<std::uint64_t> want;
  for (int i = 0; i < 64; ++i) {
    qs.push_back(make_pattern(rng, text, 4, 100));
    want.push_back(ix.count(qs.back()));
  }
  std::vector<std::thread> pool;
  std::vector<int> bad(3, 0);
  for (int w = 0; w < 3; ++w)
    pool.emplace_back([&, w] {
      QueryCounters qc;  // caller-local scratch
      for (std::size_t k = 0; k < qs.size(); ++k)
        if (ix.count(qs[k], &qc) != want[k]) bad[w]++;
    });
  for (auto& th : pool) th.join();
  CHECK(bad == std::vector<int>(3, 0));
}
