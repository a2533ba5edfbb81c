#ifndef RADO_RATIONAL_HPP
#define RADO_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rado {

// GMP rationals are kept canonical (lowest terms, positive denominator) by
// every operation. Expression templates are off so that `auto` and Eigen's
// own expression machinery see plain values.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using QMatrix = Matrix<Rational>;
using QVector = Vector<Rational>;
using Index = Eigen::Index;

/// Canonical text form: "p" for integers, "p/q" otherwise, in lowest terms.
std::string to_string(const Rational& q);

/// Parses an optionally signed integer or "p/q" with q != 0.
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view token);

/// Exact zero test over any dense expression.
template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != Scalar(0)) return false;
  return true;
}

/// Builds a rational matrix from integer rows; handy for literals in tests.
QMatrix make_matrix(std::initializer_list<std::initializer_list<Rational>> rows);

QMatrix identity(Index n);

/// Horizontal concatenation (A_1 A_2 ... A_k). All blocks must share a row count.
QMatrix hconcat(const std::vector<QMatrix>& blocks);

}  // namespace rado

#endif  // RADO_RATIONAL_HPP
