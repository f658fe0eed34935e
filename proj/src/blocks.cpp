#include "diskop/blocks.hpp"

#include "diskop/error.hpp"

#include <algorithm>
#include <string>

namespace diskop {

namespace {

std::vector<int> owner_table(int dimension, const std::vector<AxisList>& blocks, const char* what) {
  if (blocks.empty() && dimension > 0)
    throw DomainError(std::string(what) + " partition is empty");
  std::vector<int> owner(dimension, -1);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].empty()) throw DomainError(std::string(what) + " block " + std::to_string(k + 1) + " is empty");
    for (int axis : blocks[k]) {
      if (axis < 0 || axis >= dimension)
        throw DomainError(std::string(what) + " block references axis " + std::to_string(axis + 1) +
                          " outside dimension " + std::to_string(dimension));
      if (owner[axis] != -1)
        throw DomainError(std::string(what) + " blocks overlap at axis " + std::to_string(axis + 1));
      owner[axis] = static_cast<int>(k);
    }
  }
  for (int axis = 0; axis < dimension; ++axis)
    if (owner[axis] == -1)
      throw DomainError(std::string(what) + " blocks miss axis " + std::to_string(axis + 1));
  return owner;
}

}  // namespace

BlockStructure::BlockStructure(int dimension, std::vector<AxisList> coarse, std::vector<AxisList> fine)
    : dimension_(dimension), coarse_(std::move(coarse)), fine_(std::move(fine)) {
  if (dimension <= 0) throw DomainError("dimension must be positive");
  for (auto& b : coarse_) std::sort(b.begin(), b.end());
  for (auto& b : fine_) std::sort(b.begin(), b.end());
  coarse_of_axis_ = owner_table(dimension, coarse_, "coarse");
  fine_of_axis_ = owner_table(dimension, fine_, "fine");
  for (std::size_t k = 0; k < fine_.size(); ++k) {
    const int c = coarse_of_axis_[fine_[k].front()];
    for (int axis : fine_[k])
      if (coarse_of_axis_[axis] != c)
        throw DomainError("fine block " + std::to_string(k + 1) + " straddles coarse blocks");
  }
}

std::shared_ptr<const BlockStructure> BlockStructure::spherical(int dimension) {
  AxisList all(dimension);
  for (int i = 0; i < dimension; ++i) all[i] = i;
  return std::make_shared<const BlockStructure>(dimension, std::vector<AxisList>{all}, std::vector<AxisList>{all});
}

std::shared_ptr<const BlockStructure> BlockStructure::axial(int dimension) {
  std::vector<AxisList> blocks;
  for (int i = 0; i < dimension; ++i) blocks.push_back({i});
  return std::make_shared<const BlockStructure>(dimension, blocks, blocks);
}

BlocksPtr direct_sum(const BlockStructure& first, const BlockStructure& second) {
  const int shift = first.dimension();
  auto coarse = first.coarse_blocks();
  auto fine = first.fine_blocks();
  for (auto b : second.coarse_blocks()) {
    for (int& a : b) a += shift;
    coarse.push_back(std::move(b));
  }
  for (auto b : second.fine_blocks()) {
    for (int& a : b) a += shift;
    fine.push_back(std::move(b));
  }
  return std::make_shared<const BlockStructure>(shift + second.dimension(), coarse, fine);
}

}  // namespace diskop
