#ifndef DCX_SUFFIX_ARRAY_HPP
#define DCX_SUFFIX_ARRAY_HPP

#include <cstdint>
#include <vector>

namespace dcx {

// Suffix array by induced sorting (SA-IS) over an integer alphabet.
// The input must end with symbol 0 occurring there and nowhere else.
std::vector<std::uint32_t> suffix_array_int(const std::vector<std::uint32_t>& s,
                                            std::uint32_t alphabet_size);

// Kasai LCP array: lcp[k] = |LCP(s[sa[k-1]..], s[sa[k]..])|, lcp[0] = 0.
std::vector<std::uint32_t> lcp_array_int(const std::vector<std::uint32_t>& s,
                                         const std::vector<std::uint32_t>& sa);

}  // namespace dcx

#endif  // DCX_SUFFIX_ARRAY_HPP
