#ifndef DCX_ENGINE_HPP
#define DCX_ENGINE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dcx/counters.hpp"
#include "dcx/jumps.hpp"
#include "dcx/lcp.hpp"
#include "dcx/ranges.hpp"
#include "dcx/smallpat.hpp"
#include "dcx/sst.hpp"
#include "dcx/textmodel.hpp"

namespace dcx {

struct IndexConfig {
  std::optional<std::uint32_t> r;
  std::uint32_t x0_period = 64;
  std::uint32_t x0_max_len = 0;  // 0: max(256, 8*(4r+4))
  bool fast_report = false;
  FastReport::Params fast_params;
};

struct IndexStats {
  std::vector<std::pair<std::string, std::uint64_t>> section_bits;
  std::uint64_t total_bits = 0;
  std::uint64_t n = 0;
  std::uint32_t sigma = 0, r = 0, s = 0, meta_width = 0;
  std::uint64_t selected = 0;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> class_points;
  std::uint32_t x0_period = 0, x0_max_len = 0;
  std::uint64_t x_names = 0, x0_names = 0;
  bool tiny = false, fast_report = false;
};

// The assembled index: all sub-structures over one TextModel.
class Index {
 public:
  // how long patterns route their suffix jumps; Auto follows |Q| vs the
  // x0 table limit, the others exist for equivalence testing
  enum class JumpMode { Auto, ForceBinary, ForceShort, FreshDescend };

  static Index build(std::vector<Symbol> text, std::uint32_t sigma, IndexConfig cfg = {});

  std::uint64_t count(const std::vector<Symbol>& q, QueryCounters* counters = nullptr,
                      JumpMode mode = JumpMode::Auto) const;
  std::vector<Pos> locate(const std::vector<Symbol>& q, QueryCounters* counters = nullptr,
                          JumpMode mode = JumpMode::Auto) const;

  IndexStats stats() const;  // defined with the serializer

  const std::vector<Symbol>& text() const { return text_; }
  const TextModel& text_model() const { return *tm_; }
  const IndexConfig& config() const { return cfg_; }
  bool tiny() const { return tm_->tiny(); }
  std::uint32_t small_pattern_limit() const { return small_->p(); }
  std::uint32_t x0_max_len() const { return tiny() ? 0 : jumps_->max_len(); }

  const SampledSuffixTree& sst() const { return *sst_; }
  const SmallPatternIndex& small_index() const { return *small_; }
  const PointSets& points() const { return *points_; }
  const ShortJumpTables& jump_tables() const { return *jumps_; }

  // used by the serializer
  static Index assemble(std::vector<Symbol> text, std::uint32_t sigma, IndexConfig cfg,
                        std::unique_ptr<TextModel> tm, std::unique_ptr<SampledSuffixTree> sst,
                        std::unique_ptr<PointSets> points, std::unique_ptr<ShortJumpTables> jumps,
                        std::unique_ptr<SmallPatternIndex> small);

 private:
  std::vector<Symbol> text_;
  std::uint32_t sigma_ = 0;
  IndexConfig cfg_;
  std::unique_ptr<TextModel> tm_;
  std::unique_ptr<SampledSuffixTree> sst_;
  std::unique_ptr<LcpEngine> lcp_;
  std::unique_ptr<PointSets> points_;
  std::unique_ptr<ShortJumpTables> jumps_;
  std::unique_ptr<SmallPatternIndex> small_;

  template <typename EmitRange, typename EmitPoint>
  std::uint64_t run_query(const std::vector<Symbol>& q, QueryCounters* counters, JumpMode mode,
                          EmitRange&& emit_zero, EmitPoint&& emit_point) const;
  std::vector<Pos> scan_fallback(const std::vector<Symbol>& q) const;
};

}  // namespace dcx

#endif  // DCX_ENGINE_HPP
