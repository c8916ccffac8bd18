#include "dcx/textmodel.hpp"

#include <cmath>
#include <string>

namespace dcx {

namespace {

// largest r >= 1 whose reverse-run packing sigma^(4r+2) still fits a word,
// or 0 when even r = 1 does not fit
std::uint32_t max_feasible_r(std::uint32_t sigma) {
  std::uint32_t r = 0;
  for (std::uint32_t c = 1; c < 32; ++c) {
    std::uint64_t v;
    if (!checked_pow(sigma, 4 * c + 2, v) || v > (1ull << 63)) break;
    r = c;
  }
  return r;
}

std::uint32_t default_r(Pos n, std::uint32_t sigma) {
  double lg = std::log2(static_cast<double>(n ? n : 1)) / std::log2(static_cast<double>(sigma));
  auto r = static_cast<std::uint32_t>(std::lround(std::sqrt(lg > 0 ? lg : 0)));
  return r < 1 ? 1 : r;
}

DifferenceCover make_cover(Pos n, std::uint32_t sigma,
                           std::optional<std::uint32_t> r_override) {
  std::uint32_t cap = max_feasible_r(sigma);
  if (r_override) {
    if (*r_override == 0) throw ConfigError("r must be >= 1");
    if (*r_override > cap)
      throw ConfigError("r=" + std::to_string(*r_override) +
                        " makes reverse sub-blocks overflow a machine word");
    return DifferenceCover(*r_override);
  }
  // cap == 0 (alphabet too large for any run packing) forces the tiny
  // route below; the placeholder cover only sets the block geometry
  if (cap == 0) return DifferenceCover(1);
  std::uint32_t r = default_r(n, sigma);
  return DifferenceCover(r > cap ? cap : r);
}

}  // namespace

TextModel::TextModel(const std::vector<Symbol>& codes, std::uint32_t sigma,
                     std::optional<std::uint32_t> r_override)
    : dc_(make_cover(codes.size(), sigma, r_override)) {
  if (sigma < 2) throw ConfigError("alphabet size must be >= 2");
  if (codes.empty()) throw InputError("empty text");
  n_ = codes.size();
  sigma_ = sigma;
  tiny_ = n_ < s() || max_feasible_r(sigma_) == 0;

  bits_ = std::bit_width(sigma_);  // stored codes are in [1, sigma]
  packed_ = PackedSymbols(bits_, n_);
  for (Pos i = 0; i < n_; ++i) {
    if (codes[i] >= sigma_)
      throw InputError("symbol code " + std::to_string(codes[i]) + " at offset " +
                       std::to_string(i) + " is outside the alphabet");
    packed_.set(i, codes[i] + 1ull);
  }

  // m = clamp(floor(log_sigma n), 1, symbols per word)
  unsigned m = 0;
  for (std::uint64_t v = 1; v <= n_ / sigma_; ++m) v *= sigma_;
  unsigned mmax = 64 / bits_;
  m_ = m < 1 ? 1 : (m > mmax ? mmax : m);

  resid_rank_.assign(s(), -1);
  const auto& res = dc_.residues();
  residues_per_block_ = static_cast<std::uint32_t>(res.size());
  for (std::uint32_t k = 0; k < res.size(); ++k) resid_rank_[res[k]] = static_cast<std::int32_t>(k);

  for (Pos block = 0; block * s() < n_; ++block)
    for (std::uint32_t a : res) {
      Pos p = block * s() + a;
      if (p < n_) selected_.push_back(p);
    }
  run_len_.resize(selected_.size());
  for (std::size_t k = 0; k < selected_.size(); ++k)
    run_len_[k] = k == 0 ? 0 : static_cast<std::uint32_t>(selected_[k] - selected_[k - 1] - 1);
}

PackedSymbols TextModel::pack_query(const std::vector<Symbol>& codes) const {
  PackedSymbols q(bits_, codes.size());
  for (std::size_t i = 0; i < codes.size(); ++i) q.set(i, codes[i] + 1ull);
  return q;
}

}  // namespace dcx
