#ifndef DCX_RANGES_HPP
#define DCX_RANGES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dcx/fastreport.hpp"
#include "dcx/sst.hpp"
#include "dcx/textmodel.hpp"
#include "dcx/wavelet.hpp"

namespace dcx {

struct RangePoint {
  std::uint32_t run_len;  // class L
  std::uint32_t ind;      // suffix rank
  std::uint64_t rev;      // reversed run, base-sigma, most significant first
};

// The (ind, rev) point structures: one wavelet tree per sub-block run
// length L in {r, 2r, 2r+1, 4r+2}, plus an optional fast-report range
// tree per class.
class PointSets {
 public:
  struct Class {
    std::uint32_t run_len = 0;
    unsigned width = 0;                 // bits of the rev universe sigma^L
    std::uint64_t rev_universe = 0;     // sigma^L
    std::vector<std::uint32_t> ind;     // ascending
    std::vector<std::uint64_t> rev;     // parallel to ind
    WaveletTree wt;
    std::optional<FastReport> fast;
  };

  static PointSets build(const TextModel& tm, const SampledSuffixTree& sst, bool fast_report,
                         FastReport::Params params = {});

  const std::vector<Class>& classes() const { return classes_; }
  std::uint32_t sigma() const { return sigma_; }
  std::size_t total_points() const;

  // i-occurrence queries: rev must start with the reversed i-symbol
  // pattern prefix; classes with L >= i participate
  std::uint64_t count(std::uint32_t i, std::uint64_t rev_prefix, std::uint32_t ind_lo,
                      std::uint32_t ind_hi) const;
  void report(std::uint32_t i, std::uint64_t rev_prefix, std::uint32_t ind_lo,
              std::uint32_t ind_hi, const std::function<void(const RangePoint&)>& emit) const;

  // wavelet-only path, used to cross-check the fast-report path
  void report_wavelet(std::uint32_t i, std::uint64_t rev_prefix, std::uint32_t ind_lo,
                      std::uint32_t ind_hi,
                      const std::function<void(const RangePoint&)>& emit) const;

  void attach_fast_report(FastReport::Params params);
  bool has_fast_report() const { return fast_report_; }

  static std::uint64_t pack_rev_prefix(const std::vector<Symbol>& q, std::uint32_t i,
                                       std::uint32_t sigma);

  friend PointSets rebuild_points_from_sections(std::uint32_t sigma, std::vector<Class> classes,
                                                bool fast, FastReport::Params params);

 private:
  std::uint32_t sigma_ = 0;
  bool fast_report_ = false;
  std::vector<Class> classes_;

  void class_query(const Class& c, std::uint32_t i, std::uint64_t rev_prefix,
                   std::uint32_t ind_lo, std::uint32_t ind_hi, std::uint64_t& ylo,
                   std::uint64_t& yhi, std::uint64_t& a, std::uint64_t& b) const;
};

PointSets rebuild_points_from_sections(std::uint32_t sigma, std::vector<PointSets::Class> classes,
                                       bool fast, FastReport::Params params);

}  // namespace dcx

#endif  // DCX_RANGES_HPP
