#ifndef RADO_LINALG_HPP
#define RADO_LINALG_HPP

// Exact linear algebra over any field scalar with exact comparisons
// (Rational in practice). Nothing here tolerates rounding: pivots are the
// first nonzero entry, not the largest.

#include "rado/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace rado {

template <typename Scalar>
struct RowEchelon {
  Matrix<Scalar> reduced;
  std::vector<Index> pivots;  // strictly increasing column indices

  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Reduced row echelon form. Pivot rule: scan columns left to right and take
/// the topmost remaining row with a nonzero entry.
template <typename Derived>
RowEchelon<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  RowEchelon<Scalar> out{m, {}};
  auto& r = out.reduced;
  Index row = 0;
  for (Index col = 0; col < r.cols() && row < r.rows(); ++col) {
    Index pick = row;
    while (pick < r.rows() && r(pick, col) == Scalar(0)) ++pick;
    if (pick == r.rows()) continue;
    if (pick != row) r.row(pick).swap(r.row(row));
    const Scalar inv = Scalar(1) / r(row, col);
    r.row(row) *= inv;
    for (Index i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, col) == Scalar(0)) continue;
      const Scalar f = r(i, col);
      r.row(i) -= f * r.row(row);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  return rref(m).rank();
}

/// Basis of {x : M x = 0}; one vector per non-pivot column f, with x_f = 1
/// and the other free coordinates 0.
template <typename Derived>
std::vector<Vector<typename Derived::Scalar>> nullspace_basis(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto e = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  std::vector<Vector<Scalar>> basis;
  for (Index f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Vector<Scalar> x = Vector<Scalar>::Zero(m.cols());
    x(f) = Scalar(1);
    for (Index i = 0; i < e.rank(); ++i) x(e.pivots[static_cast<std::size_t>(i)]) = -e.reduced(i, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Coefficients lambda with basis * lambda == v, where the basis vectors are
/// the columns of `basis`. Free coefficients are set to zero. Returns nullopt
/// when v is outside the column span; a basis with no columns spans only 0.
template <typename DerivedB, typename DerivedV>
std::optional<Vector<typename DerivedB::Scalar>> span_membership(const Eigen::MatrixBase<DerivedB>& basis,
                                                                 const Eigen::MatrixBase<DerivedV>& v) {
  using Scalar = typename DerivedB::Scalar;
  if (v.cols() != 1 || basis.rows() != v.rows())
    throw std::invalid_argument("span_membership: dimension mismatch");
  const Index n = basis.cols();
  Matrix<Scalar> augmented(basis.rows(), n + 1);
  augmented.leftCols(n) = basis;
  augmented.col(n) = v;
  const auto e = rref(augmented);
  if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
  Vector<Scalar> lambda = Vector<Scalar>::Zero(n);
  for (Index i = 0; i < e.rank(); ++i) lambda(e.pivots[static_cast<std::size_t>(i)]) = e.reduced(i, n);
  return lambda;
}

/// List-of-vectors form. All vectors must share v's dimension.
template <typename Scalar>
std::optional<Vector<Scalar>> span_membership(const std::vector<Vector<Scalar>>& basis, const Vector<Scalar>& v) {
  Matrix<Scalar> b(v.rows(), static_cast<Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].rows() != v.rows()) throw std::invalid_argument("span_membership: dimension mismatch");
    b.col(static_cast<Index>(j)) = basis[j];
  }
  return span_membership(b, v);
}

/// Rows spanning the annihilator of the column span of `spanning`, in RREF.
/// For any w of matching dimension: R * w == 0 iff w is in that span.
template <typename Derived>
Matrix<typename Derived::Scalar> residual_functionals(const Eigen::MatrixBase<Derived>& spanning) {
  using Scalar = typename Derived::Scalar;
  const Index u = spanning.rows();
  const auto annihilator = nullspace_basis(Matrix<Scalar>(spanning.transpose()));
  Matrix<Scalar> rows(static_cast<Index>(annihilator.size()), u);
  for (std::size_t i = 0; i < annihilator.size(); ++i) rows.row(static_cast<Index>(i)) = annihilator[i].transpose();
  auto e = rref(rows);
  return e.reduced.topRows(e.rank());
}

}  // namespace rado

#endif  // RADO_LINALG_HPP
