#ifndef DCX_FASTREPORT_HPP
#define DCX_FASTREPORT_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "dcx/bitvector.hpp"

namespace dcx {

// Range tree over the bits of the y-coordinates, with per-node grouped
// range-minima for three-sided reporting, UP/C translation sequences
// linking each node to a coarser ancestor, and sampled predecessor
// arrays over the x-coordinates.
//
// Points are given x-sorted; x values are arbitrary (suffix ranks),
// y values live in [0, 2^width).
class FastReport {
 public:
  struct Params {
    std::uint32_t group = 4;  // g: elements per minima group
    double epsilon = 1.0 / 3.0;
  };

  FastReport() = default;
  FastReport(const std::vector<std::uint32_t>& xs, const std::vector<std::uint64_t>& ys,
             unsigned width, Params params);

  // all points in [xlo,xhi] x [ylo,yhi]; emit(x, y)
  void report(std::uint32_t xlo, std::uint32_t xhi, std::uint64_t ylo, std::uint64_t yhi,
              const std::function<void(std::uint32_t, std::uint64_t)>& emit) const;

  // introspection for the equivalence and round-trip tests
  std::size_t node_count() const { return nodes_.size(); }
  std::uint64_t node_size(std::uint32_t id) const { return nodes_[id].y.size(); }
  unsigned node_level(std::uint32_t id) const { return nodes_[id].level; }
  std::uint64_t node_value(std::uint32_t id, std::uint64_t pos) const { return nodes_[id].y[pos]; }
  // follows UP/C links to the root; returns the root position
  std::uint64_t translate(std::uint32_t id, std::uint64_t pos) const;
  std::uint32_t hops_to_root(std::uint32_t id) const;
  // positions within node id in [p1,p2] with y <= bound (right-child
  // nodes) or y >= bound (left-child nodes)
  std::vector<std::uint64_t> three_sided(std::uint32_t id, std::uint64_t p1, std::uint64_t p2,
                                         std::uint64_t bound) const;
  bool node_is_right(std::uint32_t id) const { return nodes_[id].is_right; }

  const Params& params() const { return params_; }

 private:
  struct Node {
    unsigned level = 0;  // bits consumed above this node
    bool is_right = false;
    std::uint32_t parent = 0;
    std::uint32_t child[2] = {kNone, kNone};
    std::vector<std::uint64_t> y;          // full y values, x-sorted
    std::vector<std::uint32_t> samp_x;     // every block-th x value
    std::vector<std::uint32_t> group_best; // per-group argmin (right) / argmax (left)
    std::vector<std::vector<std::uint32_t>> rmq;  // sparse table over groups
    // translation to the up-target ancestor
    std::uint32_t up_target = kNone;
    unsigned chunk_bits = 0;
    std::vector<std::uint32_t> up;
    BitVector c;
  };
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

  unsigned width_ = 0;
  Params params_;
  std::uint32_t block_ = 1;  // predecessor sampling interval
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> root_x_;
  std::vector<unsigned> dk_;  // d_0 < d_1 < ... < d_K = width

  bool better(const Node& nd, std::uint64_t a, std::uint64_t b) const {
    return nd.is_right ? nd.y[a] <= nd.y[b] : nd.y[a] >= nd.y[b];
  }
  std::uint64_t best_in_range(const Node& nd, std::uint64_t p1, std::uint64_t p2) const;
  std::uint32_t x_of(std::uint32_t id, std::uint64_t pos) const {
    return root_x_[translate(id, pos)];
  }
  // largest position with x <= bound, or -1; smallest with x >= bound, or size
  std::int64_t x_pred(std::uint32_t id, std::uint32_t bound) const;
  std::int64_t x_succ(std::uint32_t id, std::uint32_t bound) const;
};

}  // namespace dcx

#endif  // DCX_FASTREPORT_HPP
