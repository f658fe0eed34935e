#include "diskop/group.hpp"

#include "diskop/error.hpp"

#include <algorithm>
#include <set>

namespace diskop {

namespace {

void check_table(const std::vector<std::vector<int>>& table, int& identity, std::vector<int>& inverse) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw DomainError("group has no elements");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw DomainError("group table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw DomainError("group table is not closed");
  }
  identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = table[e][g] == g && table[g][e] == g;
    if (ok) identity = e;
  }
  if (identity < 0) throw DomainError("group table has no identity");
  inverse.assign(n, -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h)
      if (table[g][h] == identity && table[h][g] == identity) inverse[g] = h;
    if (inverse[g] < 0) throw DomainError("group element " + std::to_string(g + 1) + " has no inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw DomainError("group table is not associative at (" + std::to_string(a + 1) + "," +
                            std::to_string(b + 1) + "," + std::to_string(c + 1) + ")");
}

// Where m sends each block of `blocks`; throws if some block is not mapped onto
// a single block of equal size.
template <class Scalar>
std::vector<int> block_permutation(const Mat<Scalar>& m, const std::vector<AxisList>& blocks,
                                   const std::vector<int>& owner, const Tolerance<Scalar>& tol, const char* what) {
  std::vector<int> perm(blocks.size(), -1);
  std::vector<bool> hit(blocks.size(), false);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    std::set<int> targets;
    std::set<int> rows;
    for (int c : blocks[k])
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        if (!tol.is_zero(m(r, c))) {
          targets.insert(owner[r]);
          rows.insert(static_cast<int>(r));
        }
    if (targets.size() != 1)
      throw DomainError(std::string("group matrix does not map ") + what + " block " + std::to_string(k + 1) +
                        " onto a single block");
    const int t = *targets.begin();
    if (blocks[t].size() != blocks[k].size() || hit[t])
      throw DomainError(std::string("group matrix maps ") + what + " block " + std::to_string(k + 1) +
                        " onto an incompatible block");
    hit[t] = true;
    perm[k] = t;
  }
  return perm;
}

}  // namespace

template <class Scalar>
GroupRep<Scalar> make_group(const BlockStructure& blocks, std::vector<std::string> labels,
                            std::vector<std::vector<int>> table, std::vector<Mat<Scalar>> matrices,
                            const Tolerance<Scalar>& tol) {
  GroupRep<Scalar> rep;
  check_table(table, rep.identity, rep.inverse);
  const int n = static_cast<int>(table.size());
  if (static_cast<int>(labels.size()) != n) throw DomainError("group labels do not match table size");
  if (static_cast<int>(matrices.size()) != n) throw DomainError("group needs one matrix per element");
  const int d = blocks.dimension();
  std::vector<int> coarse_owner(d), fine_owner(d);
  for (int a = 0; a < d; ++a) {
    coarse_owner[a] = blocks.coarse_of_axis(a);
    fine_owner[a] = blocks.fine_of_axis(a);
  }
  for (int g = 0; g < n; ++g) {
    const auto& m = matrices[g];
    const std::string name = "group matrix '" + labels[g] + "'";
    if (m.rows() != d || m.cols() != d) throw DomainError(name + " has wrong size");
    if (!is_orthogonal(m, tol)) throw DomainError(name + " fails orthogonality M^T M = I");
    if constexpr (is_exact_v<Scalar>) {
      if (!is_signed_permutation(m)) throw DomainError(name + " must be a signed permutation in exact mode");
    }
    rep.coarse_perm.push_back(block_permutation(m, blocks.coarse_blocks(), coarse_owner, tol, "coarse"));
    rep.fine_perm.push_back(block_permutation(m, blocks.fine_blocks(), fine_owner, tol, "fine"));
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      const Mat<Scalar> prod = matrices[g] * matrices[h];
      if (!approx_equal(prod, matrices[table[g][h]], tol))
        throw DomainError("group matrices are not a homomorphism at (" + labels[g] + "," + labels[h] + ")");
    }
  rep.labels = std::move(labels);
  rep.table = std::move(table);
  rep.matrices = std::move(matrices);
  return rep;
}

template <class Scalar>
GroupRep<Scalar> trivial_group(const BlockStructure& blocks) {
  const int d = blocks.dimension();
  return make_group<Scalar>(blocks, {"e"}, {{0}}, {Mat<Scalar>::Identity(d, d)}, Tolerance<Scalar>{});
}

template <class Scalar>
GroupRep<Scalar> product_group(const GroupRep<Scalar>& v, const GroupRep<Scalar>& w, const BlockStructure& sum,
                               const Tolerance<Scalar>& tol) {
  if (v.table != w.table) throw DomainError("product spaces need the same group on both factors");
  std::vector<Mat<Scalar>> mats;
  for (int g = 0; g < v.order(); ++g) mats.push_back(direct_sum(v.matrices[g], w.matrices[g]));
  return make_group<Scalar>(sum, v.labels, v.table, std::move(mats), tol);
}

template <class Scalar>
DilationMap<Scalar> conjugate(const GroupRep<Scalar>& rep, int g, const DilationMap<Scalar>& f) {
  if (g == rep.identity) return f;
  const Mat<Scalar>& m = rep.matrices[g];
  DilationMap<Scalar> h;
  h.blocks = f.blocks;
  h.ortho = m * f.ortho * m.transpose();
  h.scales.resize(f.scales.size());
  for (std::size_t k = 0; k < f.scales.size(); ++k) h.scales[rep.coarse_perm[g][k]] = f.scales[k];
  h.translation = m * f.translation;
  return h;
}

template <class Scalar>
ProductBall<Scalar> act_on_ball(const GroupRep<Scalar>& rep, int g, const ProductBall<Scalar>& b) {
  if (g == rep.identity) return b;
  ProductBall<Scalar> out;
  out.blocks = b.blocks;
  out.center = rep.matrices[g] * b.center;
  out.radii.resize(b.radii.size());
  for (std::size_t k = 0; k < b.radii.size(); ++k) out.radii[rep.coarse_perm[g][k]] = b.radii[k];
  return out;
}

bool is_subgroup(const std::vector<std::vector<int>>& table, const std::vector<int>& subset) {
  if (subset.empty()) return false;
  std::set<int> s(subset.begin(), subset.end());
  const int n = static_cast<int>(table.size());
  for (int g : s)
    if (g < 0 || g >= n) return false;
  // A finite nonempty subset closed under multiplication is a subgroup.
  for (int a : s)
    for (int b : s)
      if (!s.count(table[a][b])) return false;
  return true;
}

std::vector<std::vector<int>> right_cosets(const std::vector<std::vector<int>>& table, const std::vector<int>& subgroup) {
  const int n = static_cast<int>(table.size());
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> cosets;
  for (int g = 0; g < n; ++g) {
    if (seen[g]) continue;
    std::vector<int> coset;
    for (int h : subgroup) coset.push_back(table[h][g]);
    std::sort(coset.begin(), coset.end());
    coset.erase(std::unique(coset.begin(), coset.end()), coset.end());
    for (int c : coset) seen[c] = true;
    cosets.push_back(std::move(coset));
  }
  return cosets;
}

#define DISKOP_INSTANTIATE(S)                                                                               \
  template GroupRep<S> make_group(const BlockStructure&, std::vector<std::string>, std::vector<std::vector<int>>, \
                                  std::vector<Mat<S>>, const Tolerance<S>&);                                 \
  template GroupRep<S> trivial_group(const BlockStructure&);                                                \
  template GroupRep<S> product_group(const GroupRep<S>&, const GroupRep<S>&, const BlockStructure&,         \
                                     const Tolerance<S>&);                                                  \
  template DilationMap<S> conjugate(const GroupRep<S>&, int, const DilationMap<S>&);                        \
  template ProductBall<S> act_on_ball(const GroupRep<S>&, int, const ProductBall<S>&);

DISKOP_INSTANTIATE(double)
DISKOP_INSTANTIATE(Rational)

}  // namespace diskop
