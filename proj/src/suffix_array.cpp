#include "dcx/suffix_array.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace dcx {

namespace {

constexpr std::uint32_t kEmpty = 0xFFFFFFFFu;

void fill_buckets(const std::uint32_t* s, std::size_t n, std::uint32_t K,
                  std::vector<std::uint32_t>& bkt, bool ends) {
  std::fill(bkt.begin(), bkt.end(), 0);
  for (std::size_t i = 0; i < n; ++i) bkt[s[i]]++;
  std::uint32_t sum = 0;
  for (std::uint32_t c = 0; c < K; ++c) {
    sum += bkt[c];
    bkt[c] = ends ? sum : sum - bkt[c];
  }
}

void induce(const std::uint32_t* s, std::uint32_t* sa, const std::vector<bool>& stype,
            std::size_t n, std::uint32_t K, std::vector<std::uint32_t>& bkt) {
  fill_buckets(s, n, K, bkt, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t j = sa[i];
    if (j != kEmpty && j > 0 && !stype[j - 1]) sa[bkt[s[j - 1]]++] = j - 1;
  }
  fill_buckets(s, n, K, bkt, true);
  for (std::size_t i = n; i-- > 0;) {
    std::uint32_t j = sa[i];
    if (j != kEmpty && j > 0 && stype[j - 1]) sa[--bkt[s[j - 1]]] = j - 1;
  }
}

void sais(const std::uint32_t* s, std::uint32_t* sa, std::size_t n, std::uint32_t K) {
  if (n == 1) {
    sa[0] = 0;
    return;
  }
  std::vector<bool> stype(n);
  stype[n - 1] = true;
  for (std::size_t i = n - 1; i-- > 0;)
    stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
  auto is_lms = [&](std::size_t i) { return i > 0 && stype[i] && !stype[i - 1]; };

  std::vector<std::uint32_t> bkt(K);
  std::fill(sa, sa + n, kEmpty);
  fill_buckets(s, n, K, bkt, true);
  for (std::size_t i = 1; i < n; ++i)
    if (is_lms(i)) sa[--bkt[s[i]]] = static_cast<std::uint32_t>(i);
  induce(s, sa, stype, n, K, bkt);

  // name the LMS substrings in sorted order
  std::vector<std::uint32_t> sorted_lms;
  for (std::size_t i = 0; i < n; ++i)
    if (sa[i] != kEmpty && is_lms(sa[i])) sorted_lms.push_back(sa[i]);
  std::vector<std::uint32_t> name(n, kEmpty);
  std::uint32_t cur = 0, prev = kEmpty;
  for (std::uint32_t p : sorted_lms) {
    if (prev != kEmpty) {
      bool same = true;
      for (std::size_t d = 0;; ++d) {
        if (s[prev + d] != s[p + d] || stype[prev + d] != stype[p + d]) {
          same = false;
          break;
        }
        bool lp = d > 0 && is_lms(prev + d), lq = d > 0 && is_lms(p + d);
        if (lp || lq) {
          same = lp && lq;
          break;
        }
      }
      if (!same) ++cur;
    }
    name[p] = cur;
    prev = p;
  }

  std::vector<std::uint32_t> s1, lms_pos;
  for (std::size_t i = 1; i < n; ++i)
    if (is_lms(i)) {
      s1.push_back(name[i]);
      lms_pos.push_back(static_cast<std::uint32_t>(i));
    }
  std::vector<std::uint32_t> sa1(s1.size());
  if (cur + 1 < s1.size()) {
    sais(s1.data(), sa1.data(), s1.size(), cur + 1);
  } else {
    for (std::size_t i = 0; i < s1.size(); ++i) sa1[s1[i]] = static_cast<std::uint32_t>(i);
  }

  std::fill(sa, sa + n, kEmpty);
  fill_buckets(s, n, K, bkt, true);
  for (std::size_t i = s1.size(); i-- > 0;) {
    std::uint32_t p = lms_pos[sa1[i]];
    sa[--bkt[s[p]]] = p;
  }
  induce(s, sa, stype, n, K, bkt);
}

}  // namespace

std::vector<std::uint32_t> suffix_array_int(const std::vector<std::uint32_t>& s,
                                            std::uint32_t alphabet_size) {
  if (s.empty()) return {};
  if (s.back() != 0) throw std::invalid_argument("input must end with sentinel 0");
  std::vector<std::uint32_t> sa(s.size());
  sais(s.data(), sa.data(), s.size(), alphabet_size);
  return sa;
}

std::vector<std::uint32_t> lcp_array_int(const std::vector<std::uint32_t>& s,
                                         const std::vector<std::uint32_t>& sa) {
  std::size_t n = s.size();
  std::vector<std::uint32_t> rank(n), lcp(n, 0);
  for (std::size_t k = 0; k < n; ++k) rank[sa[k]] = static_cast<std::uint32_t>(k);
  std::uint32_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    std::size_t j = sa[rank[i] - 1];
    while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
    lcp[rank[i]] = h;
    if (h) --h;
  }
  return lcp;
}

}  // namespace dcx
