#include "diskop/dilation.hpp"

#include "diskop/error.hpp"

namespace diskop {

template <class Scalar>
DilationMap<Scalar> DilationMap<Scalar>::identity(BlocksPtr blocks) {
  return scaling(std::move(blocks), Scalar(1));
}

template <class Scalar>
DilationMap<Scalar> DilationMap<Scalar>::scaling(BlocksPtr blocks, const Scalar& s) {
  const int d = blocks->dimension();
  const int k = blocks->coarse_count();
  DilationMap f;
  f.ortho = Mat<Scalar>::Identity(d, d);
  f.scales.assign(k, s);
  f.translation = Vec<Scalar>::Zero(d);
  f.blocks = std::move(blocks);
  return f;
}

template <class Scalar>
DilationMap<Scalar> DilationMap<Scalar>::dilation(BlocksPtr blocks, std::vector<Scalar> scales,
                                                  Vec<Scalar> translation) {
  if (static_cast<int>(scales.size()) != blocks->coarse_count())
    throw DomainError("expected " + std::to_string(blocks->coarse_count()) + " scales, got " +
                      std::to_string(scales.size()));
  if (translation.size() != blocks->dimension())
    throw DomainError("translation has wrong dimension");
  DilationMap f;
  f.ortho = Mat<Scalar>::Identity(blocks->dimension(), blocks->dimension());
  f.scales = std::move(scales);
  f.translation = std::move(translation);
  f.blocks = std::move(blocks);
  return f;
}

template <class Scalar>
Mat<Scalar> DilationMap<Scalar>::linear() const {
  Mat<Scalar> m = ortho;
  for (int c = 0; c < dimension(); ++c) m.col(c) *= axis_scale(c);
  return m;
}

template <class Scalar>
Vec<Scalar> DilationMap<Scalar>::apply(const Vec<Scalar>& v) const {
  Vec<Scalar> scaled(v.size());
  for (int a = 0; a < dimension(); ++a) scaled(a) = axis_scale(a) * v(a);
  return ortho * scaled + translation;
}

template <class Scalar>
DilationMap<Scalar> compose(const DilationMap<Scalar>& f, const DilationMap<Scalar>& g) {
  if (!same_blocks(f.blocks, g.blocks)) throw DomainError("compose: block structures differ");
  DilationMap<Scalar> h;
  h.blocks = f.blocks;
  h.ortho = f.ortho * g.ortho;
  h.scales.resize(f.scales.size());
  for (std::size_t k = 0; k < f.scales.size(); ++k) h.scales[k] = f.scales[k] * g.scales[k];
  h.translation = f.apply(g.translation);
  return h;
}

template <class Scalar>
DilationMap<Scalar> invert(const DilationMap<Scalar>& f) {
  DilationMap<Scalar> h;
  h.blocks = f.blocks;
  h.ortho = f.ortho.transpose();
  h.scales.resize(f.scales.size());
  for (std::size_t k = 0; k < f.scales.size(); ++k) h.scales[k] = Scalar(1) / f.scales[k];
  Vec<Scalar> back = h.ortho * f.translation;
  for (int a = 0; a < f.dimension(); ++a) back(a) = -(h.axis_scale(a) * back(a));
  h.translation = std::move(back);
  return h;
}

template <class Scalar>
DilationMap<Scalar> rescale_right(const DilationMap<Scalar>& f, const std::vector<Scalar>& factors) {
  if (factors.size() != f.scales.size()) throw DomainError("rescale_right: wrong number of factors");
  DilationMap<Scalar> h = f;
  for (std::size_t k = 0; k < factors.size(); ++k) h.scales[k] *= factors[k];
  return h;
}

template <class Scalar>
bool equal(const DilationMap<Scalar>& f, const DilationMap<Scalar>& g, const Tolerance<Scalar>& tol) {
  if (!same_blocks(f.blocks, g.blocks)) return false;
  for (std::size_t k = 0; k < f.scales.size(); ++k)
    if (!tol.eq(f.scales[k], g.scales[k])) return false;
  return approx_equal(f.translation, g.translation, tol) && approx_equal(f.ortho, g.ortho, tol);
}

template <class Scalar>
bool is_orthogonal(const Mat<Scalar>& m, const Tolerance<Scalar>& tol) {
  if (m.rows() != m.cols()) return false;
  const Mat<Scalar> gram = m.transpose() * m;
  return approx_equal(gram, Mat<Scalar>(Mat<Scalar>::Identity(m.rows(), m.cols())), tol);
}

template <class Scalar>
bool is_signed_permutation(const Mat<Scalar>& m) {
  if (m.rows() != m.cols()) return false;
  std::vector<int> hits(m.rows(), 0);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    int nonzero = 0;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (m(r, c) == 0) continue;
      if (m(r, c) != 1 && m(r, c) != -1) return false;
      ++nonzero;
      ++hits[c];
    }
    if (nonzero != 1) return false;
  }
  for (int h : hits)
    if (h != 1) return false;
  return true;
}

template <class Scalar>
std::vector<std::string> map_violations(const DilationMap<Scalar>& f, const Tolerance<Scalar>& tol) {
  std::vector<std::string> out;
  const int d = f.dimension();
  if (f.ortho.rows() != d || f.ortho.cols() != d) {
    out.push_back("orthogonal part is not " + std::to_string(d) + "x" + std::to_string(d));
    return out;
  }
  if (f.translation.size() != d) out.push_back("translation has wrong dimension");
  if (static_cast<int>(f.scales.size()) != f.blocks->coarse_count()) {
    out.push_back("wrong number of scales");
  } else {
    for (std::size_t k = 0; k < f.scales.size(); ++k)
      if (!(f.scales[k] > 0)) out.push_back("scale " + std::to_string(k + 1) + " is not positive");
  }
  if (!is_orthogonal(f.ortho, tol)) out.push_back("orthogonal part fails O^T O = I");
  if constexpr (is_exact_v<Scalar>) {
    if (!is_signed_permutation(f.ortho)) out.push_back("exact mode requires a signed permutation matrix");
  }
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      if (f.blocks->fine_of_axis(r) != f.blocks->fine_of_axis(c) && !tol.is_zero(f.ortho(r, c))) {
        out.push_back("orthogonal part mixes fine blocks at entry (" + std::to_string(r + 1) + "," +
                      std::to_string(c + 1) + ")");
        return out;
      }
  return out;
}

template <class Scalar>
Mat<Scalar> direct_sum(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  Mat<Scalar> m = Mat<Scalar>::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

#define DISKOP_INSTANTIATE(S)                                                                          \
  template struct DilationMap<S>;                                                                      \
  template DilationMap<S> compose(const DilationMap<S>&, const DilationMap<S>&);                       \
  template DilationMap<S> invert(const DilationMap<S>&);                                               \
  template DilationMap<S> rescale_right(const DilationMap<S>&, const std::vector<S>&);                 \
  template bool equal(const DilationMap<S>&, const DilationMap<S>&, const Tolerance<S>&);              \
  template bool is_orthogonal(const Mat<S>&, const Tolerance<S>&);                                     \
  template bool is_signed_permutation(const Mat<S>&);                                                  \
  template std::vector<std::string> map_violations(const DilationMap<S>&, const Tolerance<S>&);        \
  template Mat<S> direct_sum(const Mat<S>&, const Mat<S>&);

DISKOP_INSTANTIATE(double)
DISKOP_INSTANTIATE(Rational)

}  // namespace diskop
