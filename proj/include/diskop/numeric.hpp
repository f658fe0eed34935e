#ifndef DISKOP_NUMERIC_HPP
#define DISKOP_NUMERIC_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace diskop {

/// Exact scalar. Expression templates are off so Eigen sees a plain value type.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

enum class NumericMode { Exact, Float };

template <class Scalar>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr NumericMode mode = NumericMode::Float;
  static constexpr const char* name = "float";
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr NumericMode mode = NumericMode::Exact;
  static constexpr const char* name = "exact";
};

template <class Scalar>
inline constexpr bool is_exact_v = scalar_traits<Scalar>::exact;

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

/// Parses "p/q", an integer, or a decimal literal. Decimals are read exactly
/// in exact mode ("0.25" is 1/4, not the nearest binary fraction).
template <class Scalar>
Scalar parse_scalar(std::string_view text);

/// Canonical text: "p/q" or "p" for rationals, shortest round-trip for doubles.
std::string format_scalar(const Rational& v);
std::string format_scalar(double v);

/// Square root when it is representable in the scalar type.
std::optional<Rational> exact_sqrt(const Rational& v);
inline std::optional<double> exact_sqrt(double v) {
  if (v < 0) return std::nullopt;
  return std::sqrt(v);
}

/// Smallest convenient value s with s*s >= v. Exact when v is a perfect square.
Rational sqrt_upper(const Rational& v);
inline double sqrt_upper(double v) { return std::sqrt(v); }

template <class Scalar>
Scalar scalar_abs(const Scalar& v) {
  return v < 0 ? Scalar(-v) : v;
}

/// Symmetric comparison tolerance; zero in exact mode, 1e-9 by default in float mode.
template <class Scalar>
struct Tolerance {
  Scalar eps = is_exact_v<Scalar> ? Scalar(0) : Scalar(1e-9);

  bool le(const Scalar& a, const Scalar& b) const { return a <= b + eps; }
  bool ge(const Scalar& a, const Scalar& b) const { return le(b, a); }
  bool lt(const Scalar& a, const Scalar& b) const { return !le(b, a); }
  bool gt(const Scalar& a, const Scalar& b) const { return lt(b, a); }
  bool eq(const Scalar& a, const Scalar& b) const { return le(a, b) && le(b, a); }
  bool is_zero(const Scalar& a) const { return eq(a, Scalar(0)); }
};

template <class Scalar>
bool approx_equal(const Mat<Scalar>& a, const Mat<Scalar>& b, const Tolerance<Scalar>& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      if (!tol.eq(a(r, c), b(r, c))) return false;
  return true;
}

template <class Scalar>
bool approx_equal(const Vec<Scalar>& a, const Vec<Scalar>& b, const Tolerance<Scalar>& tol) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!tol.eq(a(i), b(i))) return false;
  return true;
}

}  // namespace diskop

#endif  // DISKOP_NUMERIC_HPP
