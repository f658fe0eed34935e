#ifndef DISKOP_BLOCKS_HPP
#define DISKOP_BLOCKS_HPP

#include <memory>
#include <vector>

namespace diskop {

using AxisList = std::vector<int>;

/// Axis partitions of R^d: coarse blocks carry one scale and one radius each,
/// fine blocks bound the support of orthogonal parts. Fine refines coarse.
class BlockStructure {
 public:
  /// Throws DomainError when the partitions are not partitions of {0..d-1}
  /// or the fine one does not refine the coarse one.
  BlockStructure(int dimension, std::vector<AxisList> coarse, std::vector<AxisList> fine);

  /// Single coarse block and single fine block covering R^d.
  static std::shared_ptr<const BlockStructure> spherical(int dimension);
  /// One coarse and one fine block per axis.
  static std::shared_ptr<const BlockStructure> axial(int dimension);

  int dimension() const { return dimension_; }
  int coarse_count() const { return static_cast<int>(coarse_.size()); }
  int fine_count() const { return static_cast<int>(fine_.size()); }
  const AxisList& coarse(int k) const { return coarse_[k]; }
  const AxisList& fine(int k) const { return fine_[k]; }
  const std::vector<AxisList>& coarse_blocks() const { return coarse_; }
  const std::vector<AxisList>& fine_blocks() const { return fine_; }
  int coarse_of_axis(int axis) const { return coarse_of_axis_[axis]; }
  int fine_of_axis(int axis) const { return fine_of_axis_[axis]; }

  friend bool operator==(const BlockStructure& a, const BlockStructure& b) {
    return a.dimension_ == b.dimension_ && a.coarse_ == b.coarse_ && a.fine_ == b.fine_;
  }

 private:
  int dimension_;
  std::vector<AxisList> coarse_;
  std::vector<AxisList> fine_;
  std::vector<int> coarse_of_axis_;
  std::vector<int> fine_of_axis_;
};

using BlocksPtr = std::shared_ptr<const BlockStructure>;

inline bool same_blocks(const BlocksPtr& a, const BlocksPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Direct sum: axes of `second` are shifted past those of `first`.
BlocksPtr direct_sum(const BlockStructure& first, const BlockStructure& second);

}  // namespace diskop

#endif  // DISKOP_BLOCKS_HPP
