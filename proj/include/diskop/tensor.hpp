#ifndef DISKOP_TENSOR_HPP
#define DISKOP_TENSOR_HPP

#include "diskop/random.hpp"

namespace diskop {

enum class Factor { V, W };

// Products and projections on a product space V x W (V axes first).

template <class Scalar>
DilationMap<Scalar> product_map(const SpacePtr<Scalar>& vw, const DilationMap<Scalar>& f, const DilationMap<Scalar>& g);

template <class Scalar>
DilationMap<Scalar> project_map(const SpacePtr<Scalar>& vw, const DilationMap<Scalar>& h, Factor side);

template <class Scalar>
ProductBall<Scalar> product_ball(const SpacePtr<Scalar>& vw, const ProductBall<Scalar>& a, const ProductBall<Scalar>& b);

template <class Scalar>
ProductBall<Scalar> project_ball(const SpacePtr<Scalar>& vw, const ProductBall<Scalar>& b, Factor side);

/// pr_V / pr_W of a configuration on a product space.
template <class Scalar>
Config<Scalar> project(const Config<Scalar>& w, Factor side);

/// i_V(x) = (x_i x id_W) or i_W(y) = (id_V x y_j), on the product domain.
template <class Scalar>
Config<Scalar> embed(const SpacePtr<Scalar>& vw, const Config<Scalar>& x, const ProductBall<Scalar>& other_domain,
                     Factor side);

/// Image of p (x) q: component i*ar(q)+j is p_i x q_j.
template <class Scalar>
Config<Scalar> simple_tensor(const SpacePtr<Scalar>& vw, const Config<Scalar>& p, const Config<Scalar>& q);

/// The lexicographic swap m x n -> n x m: tau[i*n + j] = j*m + i.
Permutation tau(int m, int n);

// Trees in superposition.

struct TreeEdge {
  int child = -1;  // vertex index, or
  int input = -1;  // tree input label (0-based)
  bool is_input() const { return child < 0; }
};

template <class Scalar>
struct TreeVertex {
  int white = 0, black = 0;
  std::vector<int> xi;          // xi[i*black + j] = index into edges of the edge labelled (i, j)
  std::vector<TreeEdge> edges;  // In(v), ordered
  Config<Scalar> p;             // over B_V, arity white
  Config<Scalar> q;             // over B_W, arity black
  int inputs() const { return static_cast<int>(edges.size()); }
};

template <class Scalar>
struct SuperTree {
  SpacePtr<Scalar> space;  // the product space V x W
  ProductBall<Scalar> v_domain, w_domain;
  std::vector<TreeVertex<Scalar>> vertices;
  int root = -1;  // -1: the trivial tree with a single input and no vertex

  int arity() const;
  bool trivial() const { return root < 0; }
};

struct TreeReport {
  bool well_formed = false, reduced = false, proper = false, core = false;
  int height = 0;
  std::vector<std::string> problems;  // structural problems with their location
};

template <class Scalar>
TreeReport tree_validate(const SuperTree<Scalar>& t);

/// phi of the tensor element: corollas become simple tensors, grafting
/// becomes operad composition; component k of the result is tree input k.
template <class Scalar>
Config<Scalar> tree_evaluate(const SuperTree<Scalar>& t);

template <class Scalar>
bool interchange_equal(const SuperTree<Scalar>& a, const SuperTree<Scalar>& b);

enum class InterchangeOrder { WhiteFirst, BlackFirst };

/// Replaces the corolla at vertex v by p (x) id over id (x) q (WhiteFirst) or
/// by id (x) q over p (x) id (BlackFirst), rerouting every edge (i, j) to the
/// same subtree; input labels are kept so the value is unchanged.
template <class Scalar>
SuperTree<Scalar> interchange_move(const SuperTree<Scalar>& t, int v, InterchangeOrder order);

/// Isomorphism of trees in superposition: vertex v moves to vertex_perm[v],
/// its white label i to white_perms[v][i], black label j to black_perms[v][j],
/// and edge e to position edge_perms[v][e]. Decorations are transported.
template <class Scalar>
SuperTree<Scalar> relabel(const SuperTree<Scalar>& t, const Permutation& vertex_perm,
                          const std::vector<Permutation>& white_perms, const std::vector<Permutation>& black_perms,
                          const std::vector<Permutation>& edge_perms);

/// Corolla with decorations (p, q) and xi the lexicographic labelling;
/// inputs numbered in edge order.
template <class Scalar>
SuperTree<Scalar> corolla(const SpacePtr<Scalar>& vw, const Config<Scalar>& p, const Config<Scalar>& q);

/// (P (x) Q)(1) = P(1) x Q(1): (id, id) is the trivial tree, anything else a
/// one-input corolla.
template <class Scalar>
SuperTree<Scalar> unary_iso(const SpacePtr<Scalar>& vw, const Config<Scalar>& p, const Config<Scalar>& q);

template <class Scalar>
std::pair<Config<Scalar>, Config<Scalar>> unary_iso_inverse(const SuperTree<Scalar>& t);

struct TreeParams {
  int max_height = 3;
  int max_labels = 2;          // white and black label counts in [1, max_labels]
  double input_bias = 0.5;     // chance an edge is a tree input when height allows a child
  double stump_chance = 0.15;  // chance a child vertex has no inputs
};

/// Random tree whose decorations are random star elements of each factor.
template <class Scalar>
SuperTree<Scalar> random_tree(Rng& rng, const SpacePtr<Scalar>& vw, const ProductBall<Scalar>& v_domain,
                              const ProductBall<Scalar>& w_domain, const TreeParams& p = {});

}  // namespace diskop

#endif  // DISKOP_TENSOR_HPP
