#ifndef DCX_TESTS_HELPERS_HPP
#define DCX_TESTS_HELPERS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dcx/common.hpp"

namespace dcx::testing {

inline std::vector<Symbol> random_text(std::mt19937_64& rng, std::size_t n, std::uint32_t sigma) {
  std::uniform_int_distribution<std::uint32_t> d(0, sigma - 1);
  std::vector<Symbol> t(n);
  for (auto& c : t) c = d(rng);
  return t;
}

// text with long repeats: random seed block tiled with mutations
inline std::vector<Symbol> repetitive_text(std::mt19937_64& rng, std::size_t n,
                                           std::uint32_t sigma) {
  std::uniform_int_distribution<std::uint32_t> d(0, sigma - 1);
  std::size_t block = 1 + rng() % 24;
  std::vector<Symbol> seed(block);
  for (auto& c : seed) c = d(rng);
  std::vector<Symbol> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = seed[i % block];
  std::size_t mutations = n / 16 + 1;
  for (std::size_t k = 0; k < mutations; ++k) t[rng() % n] = d(rng);
  return t;
}

inline std::vector<Symbol> sample_pattern(std::mt19937_64& rng, const std::vector<Symbol>& text,
                                          std::size_t len) {
  if (len > text.size()) len = text.size();
  std::size_t f = text.size() == len ? 0 : rng() % (text.size() - len + 1);
  return {text.begin() + f, text.begin() + f + len};
}

inline std::vector<Symbol> from_string(const std::string& s) {
  std::vector<Symbol> v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) v[i] = static_cast<unsigned char>(s[i]);
  return v;
}

}  // namespace dcx::testing

#endif
