#ifndef DISKOP_GROUP_HPP
#define DISKOP_GROUP_HPP

#include "diskop/ball.hpp"

#include <string>
#include <vector>

namespace diskop {

/// A finite group with an orthogonal representation on R^d that permutes
/// coarse blocks among themselves and fine blocks among themselves.
template <class Scalar>
struct GroupRep {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table;  // table[g][h] = g*h
  std::vector<Mat<Scalar>> matrices;
  int identity = 0;
  std::vector<int> inverse;
  std::vector<std::vector<int>> coarse_perm;  // M(g) sends coarse block k onto coarse_perm[g][k]
  std::vector<std::vector<int>> fine_perm;

  int order() const { return static_cast<int>(labels.size()); }
  int multiply(int g, int h) const { return table[g][h]; }
};

/// Validates the table (closure, identity, inverses, exhaustive associativity),
/// that the matrices are orthogonal, form a homomorphism and permute blocks of
/// equal size. Throws DomainError naming the failed check.
template <class Scalar>
GroupRep<Scalar> make_group(const BlockStructure& blocks, std::vector<std::string> labels,
                            std::vector<std::vector<int>> table, std::vector<Mat<Scalar>> matrices,
                            const Tolerance<Scalar>& tol);

template <class Scalar>
GroupRep<Scalar> trivial_group(const BlockStructure& blocks);

/// Same abstract group acting by M_V(g) (+) M_W(g) on the direct sum.
template <class Scalar>
GroupRep<Scalar> product_group(const GroupRep<Scalar>& v, const GroupRep<Scalar>& w, const BlockStructure& sum,
                               const Tolerance<Scalar>& tol);

/// M(g) f M(g)^{-1}; scales follow the coarse block permutation of g.
template <class Scalar>
DilationMap<Scalar> conjugate(const GroupRep<Scalar>& rep, int g, const DilationMap<Scalar>& f);

/// M(g)(B).
template <class Scalar>
ProductBall<Scalar> act_on_ball(const GroupRep<Scalar>& rep, int g, const ProductBall<Scalar>& b);

/// Right cosets Hg, each listed with its least element first; cosets ordered
/// by that representative.
std::vector<std::vector<int>> right_cosets(const std::vector<std::vector<int>>& table, const std::vector<int>& subgroup);

bool is_subgroup(const std::vector<std::vector<int>>& table, const std::vector<int>& subset);

}  // namespace diskop

#endif  // DISKOP_GROUP_HPP
