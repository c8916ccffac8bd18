#include "dcx/smallpat.hpp"

#include <algorithm>
#include <cassert>

namespace dcx {

namespace {

// symbol sequence as a byte string (2 bytes per symbol above 255)
std::string key_of(const std::uint32_t* sym, std::size_t len, bool wide) {
  std::string k;
  k.reserve(len * (wide ? 2 : 1));
  for (std::size_t i = 0; i < len; ++i) {
    k.push_back(static_cast<char>(sym[i] & 0xFF));
    if (wide) k.push_back(static_cast<char>((sym[i] >> 8) & 0xFF));
  }
  return k;
}

}  // namespace

SmallPatternIndex SmallPatternIndex::build(const TextModel& tm) {
  SmallPatternIndex sp;
  sp.p_ = 4 * tm.r() + 3;
  sp.n_ = tm.n();
  sp.sigma_ = tm.sigma();
  std::uint64_t universe;
  sp.direct_ =
      checked_pow(tm.sigma(), 2 * sp.p_, universe) && universe <= (1ull << 22);

  // deduplicate block contents (blocks are sentinel-padded at the end)
  const std::uint32_t nb = static_cast<std::uint32_t>((sp.n_ + sp.p_ - 1) / sp.p_);
  sp.block_of_.resize(nb);
  const bool wide = tm.sigma() > 256;
  std::vector<std::uint32_t> buf(2 * sp.p_);
  auto read_block = [&](std::uint32_t i) {
    for (std::uint32_t o = 0; o < 2 * sp.p_; ++o) {
      Pos pos = static_cast<Pos>(i) * sp.p_ + o;
      buf[o] = pos < sp.n_ ? tm.symbol_at(pos) + 1 : 0;  // shifted, 0 = sentinel
    }
  };
  std::unordered_map<std::string, std::uint32_t> ids;
  for (std::uint32_t i = 0; i < nb; ++i) {
    read_block(i);
    auto [it, fresh] = ids.try_emplace(key_of(buf.data(), buf.size(), wide),
                                       static_cast<std::uint32_t>(sp.rep_block_.size()));
    if (fresh) {
      sp.rep_block_.push_back(i);
      sp.postings_.emplace_back();
    }
    sp.block_of_[i] = it->second;
    sp.postings_[it->second].push_back(i);
  }

  sp.build_tables(tm);
  return sp;
}

void SmallPatternIndex::build_tables(const TextModel& tm) {
  const bool wide = sigma_ > 256;
  if (direct_) {
    count_direct_.resize(p_ + 1);
    pairs_direct_.resize(p_ + 1);
    std::uint64_t u = 1;
    for (std::uint32_t j = 1; j <= p_; ++j) {
      u *= sigma_;
      count_direct_[j].assign(u, 0);
      pairs_direct_[j].resize(u);
    }
  } else {
    count_assoc_.resize(p_ + 1);
    pairs_assoc_.resize(p_ + 1);
  }

  std::vector<std::uint32_t> buf(2 * p_);
  for (std::uint32_t id = 0; id < rep_block_.size(); ++id) {
    Pos base = static_cast<Pos>(rep_block_[id]) * p_;
    std::uint32_t real = 0;  // real symbols in this block
    for (std::uint32_t o = 0; o < 2 * p_; ++o) {
      if (base + o >= n_) break;
      buf[o] = tm.symbol_at(base + o);
      ++real;
    }
    std::uint64_t blocks = postings_[id].size();
    for (std::uint16_t off = 0; off < p_; ++off) {
      std::uint64_t packed = 0;
      for (std::uint32_t j = 1; j <= p_; ++j) {
        if (off + j > real) break;  // runs into the sentinel padding
        if (direct_) {
          packed = packed * sigma_ + buf[off + j - 1];
          count_direct_[j][packed] += blocks;
          pairs_direct_[j][packed].push_back({id, off});
        } else {
          std::string k = key_of(buf.data() + off, j, wide);
          count_assoc_[j][k] += blocks;
          pairs_assoc_[j][k].push_back({id, off});
        }
      }
    }
  }
}

const std::vector<SmallPatternIndex::Pair>* SmallPatternIndex::find_pairs(
    const std::vector<Symbol>& q) const {
  std::uint32_t j = static_cast<std::uint32_t>(q.size());
  if (direct_) {
    std::uint64_t packed = 0;
    for (Symbol c : q) packed = packed * sigma_ + c;
    const auto& v = pairs_direct_[j][packed];
    return v.empty() ? nullptr : &v;
  }
  const bool wide = sigma_ > 256;
  auto it = pairs_assoc_[j].find(key_of(q.data(), q.size(), wide));
  return it == pairs_assoc_[j].end() ? nullptr : &it->second;
}

std::uint64_t SmallPatternIndex::count(const std::vector<Symbol>& q) const {
  assert(!q.empty() && q.size() <= p_);
  for (Symbol c : q)
    if (c >= sigma_) return 0;
  std::uint32_t j = static_cast<std::uint32_t>(q.size());
  if (direct_) {
    std::uint64_t packed = 0;
    for (Symbol c : q) packed = packed * sigma_ + c;
    return count_direct_[j][packed];
  }
  const bool wide = sigma_ > 256;
  auto it = count_assoc_[j].find(key_of(q.data(), q.size(), wide));
  return it == count_assoc_[j].end() ? 0 : it->second;
}

std::vector<Pos> SmallPatternIndex::locate(const std::vector<Symbol>& q) const {
  std::vector<Pos> out;
  for (Symbol c : q)
    if (c >= sigma_) return out;
  const auto* pairs = find_pairs(q);
  if (!pairs) return out;
  for (const Pair& pr : *pairs)
    for (std::uint32_t b : postings_[pr.alpha]) {
      Pos f = static_cast<Pos>(b) * p_ + pr.offset;
      if (f + q.size() <= n_) out.push_back(f);
    }
  std::sort(out.begin(), out.end());
  return out;
}

SmallPatternIndex SmallPatternIndex::rebuild(const TextModel& tm,
                                             std::vector<std::uint32_t> block_of,
                                             std::vector<std::uint32_t> rep_block) {
  SmallPatternIndex sp;
  sp.p_ = 4 * tm.r() + 3;
  sp.n_ = tm.n();
  sp.sigma_ = tm.sigma();
  std::uint64_t universe;
  sp.direct_ =
      checked_pow(tm.sigma(), 2 * sp.p_, universe) && universe <= (1ull << 22);
  sp.block_of_ = std::move(block_of);
  sp.rep_block_ = std::move(rep_block);
  sp.postings_.resize(sp.rep_block_.size());
  for (std::uint32_t i = 0; i < sp.block_of_.size(); ++i)
    sp.postings_[sp.block_of_[i]].push_back(i);
  sp.build_tables(tm);
  return sp;
}

}  // namespace dcx
