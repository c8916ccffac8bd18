#include "dcx/lcp.hpp"

#include <cassert>

namespace dcx {

std::uint64_t LcpEngine::lcp_shifted(Pos f1, std::uint32_t i, Pos f2) const {
  const TextModel& tm = *tm_;
  const Pos n = tm.n();
  Pos a = f1 + i;
  assert(tm.is_selected(f1) && tm.is_selected(f2) && a <= n);
  if (a == f2) return n - a;

  std::uint64_t delta = tm.cover().h(a % tm.s(), f2 % tm.s());
  std::uint64_t l1 = tm.word_lcp(a, f2, delta);
  if (l1 < delta) return l1;

  Pos x = a + delta, y = f2 + delta;
  // matching the full gap means neither suffix ended inside it
  assert(x <= n && y <= n);
  if (x == n || y == n) return delta;  // one shifted suffix is empty

  assert(tm.is_selected(x) && tm.is_selected(y));
  std::uint32_t rx = sst_->rank_of(tm, x), ry = sst_->rank_of(tm, y);
  if (rx == ry) return delta + (n - x);
  std::uint64_t d = sst_->node(sst_->lca(rx, ry)).depth;
  return delta + d + tm.word_lcp(x + d, y + d, tm.meta_width());
}

}  // namespace dcx
