#ifndef DCX_ORACLE_HPP
#define DCX_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "dcx/common.hpp"

// Brute-force reference implementations. Deliberately simple and
// independent of the index code paths, so that agreement is evidence.

namespace dcx::oracle {

// all start positions of pattern q in text, ascending
inline std::vector<Pos> naive_search(const std::vector<Symbol>& text,
                                     const std::vector<Symbol>& q) {
  std::vector<Pos> out;
  if (q.empty() || q.size() > text.size()) return out;
  for (Pos f = 0; f + q.size() <= text.size(); ++f) {
    Pos k = 0;
    while (k < q.size() && text[f + k] == q[k]) ++k;
    if (k == q.size()) out.push_back(f);
  }
  return out;
}

// a second, independently written matcher used to cross-check the first
inline std::uint64_t quadratic_count(const std::vector<Symbol>& text,
                                     const std::vector<Symbol>& q) {
  std::uint64_t c = 0;
  for (std::size_t f = 0; f < text.size(); ++f) {
    if (f + q.size() > text.size()) break;
    bool hit = !q.empty();
    for (std::size_t k = 0; k < q.size(); ++k)
      if (text[f + k] != q[k]) {
        hit = false;
        break;
      }
    c += hit ? 1 : 0;
  }
  return c;
}

// symbol-by-symbol LCP with the sentinel rule (positions past the end
// compare as a symbol smaller than every real one)
inline std::uint64_t naive_lcp(const std::vector<Symbol>& text, Pos p1, Pos p2) {
  std::uint64_t k = 0;
  while (p1 + k < text.size() && p2 + k < text.size() && text[p1 + k] == text[p2 + k]) ++k;
  if (p1 == p2) return text.size() - (p1 < text.size() ? p1 : text.size());
  return k;
}

// LCP of pattern q against the suffix at position p
inline std::uint64_t naive_lcp_pattern(const std::vector<Symbol>& text,
                                       const std::vector<Symbol>& q, std::size_t qoff, Pos p) {
  std::uint64_t k = 0;
  while (qoff + k < q.size() && p + k < text.size() && text[p + k] == q[qoff + k]) ++k;
  return k;
}

// true iff suffix at p1 precedes suffix at p2 (sentinel rule: a proper
// prefix sorts first)
inline bool suffix_less(const std::vector<Symbol>& text, Pos p1, Pos p2) {
  std::uint64_t k = naive_lcp(text, p1, p2);
  if (p1 == p2) return false;
  bool e1 = p1 + k >= text.size(), e2 = p2 + k >= text.size();
  if (e1) return !e2 || p1 > p2;  // both exhausted cannot happen for p1 != p2
  if (e2) return false;
  return text[p1 + k] < text[p2 + k];
}

// comparison sort of the given suffix positions
inline std::vector<Pos> naive_suffix_sort(const std::vector<Symbol>& text,
                                          std::vector<Pos> positions) {
  std::sort(positions.begin(), positions.end(),
            [&](Pos a, Pos b) { return suffix_less(text, a, b); });
  return positions;
}

}  // namespace dcx::oracle

#endif  // DCX_ORACLE_HPP
