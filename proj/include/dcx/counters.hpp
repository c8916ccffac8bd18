#ifndef DCX_COUNTERS_HPP
#define DCX_COUNTERS_HPP

#include <cstdint>

namespace dcx {

// Per-query operation counters, owned by the caller's session.
struct QueryCounters {
  std::uint64_t meta_steps = 0;        // chunk-granular descent advances
  std::uint64_t lcp_evals = 0;         // lcp_shifted calls in binary jumps
  std::uint64_t binary_jumps = 0;
  std::uint64_t short_jumps = 0;
  std::uint64_t restricted_leaves_max = 0;  // widest jump_short interval
  std::uint64_t range_queries = 0;

  void reset() { *this = QueryCounters{}; }
};

}  // namespace dcx

#endif  // DCX_COUNTERS_HPP
