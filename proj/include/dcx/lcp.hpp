#ifndef DCX_LCP_HPP
#define DCX_LCP_HPP

#include "dcx/sst.hpp"
#include "dcx/textmodel.hpp"

namespace dcx {

// Constant-time LCP between a shifted selected suffix and a selected
// suffix: align both onto the cover with one h()-shift, compare the
// gap with packed words, and finish with an LCA plus one chunk of
// word refinement.
class LcpEngine {
 public:
  LcpEngine(const TextModel& tm, const SampledSuffixTree& sst) : tm_(&tm), sst_(&sst) {}

  // |LCP(T[f1+i..], T[f2..])| with f1, f2 selected, 0 <= i <= 4r+3
  std::uint64_t lcp_shifted(Pos f1, std::uint32_t i, Pos f2) const;

 private:
  const TextModel* tm_;
  const SampledSuffixTree* sst_;
};

}  // namespace dcx

#endif  // DCX_LCP_HPP
