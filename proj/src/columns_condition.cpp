#include "rado/columns_condition.hpp"

#include "rado/linalg.hpp"

#include <bit>
#include <set>
#include <stdexcept>

namespace rado {

QVector column_sum(const QMatrix& a, ColumnMask mask) {
  QVector s = QVector::Zero(a.rows());
  for (; mask != 0; mask &= mask - 1) s += a.col(std::countr_zero(mask));
  return s;
}

QMatrix select_columns(const QMatrix& a, ColumnMask mask) {
  QMatrix out(a.rows(), std::popcount(mask));
  Index j = 0;
  for (; mask != 0; mask &= mask - 1) out.col(j++) = a.col(std::countr_zero(mask));
  return out;
}

const QMatrix& ResidualCache::functionals(ColumnMask subset) {
  auto it = cache_.find(subset);
  if (it == cache_.end()) it = cache_.emplace(subset, residual_functionals(select_columns(*columns_, subset))).first;
  return it->second;
}

namespace {

void require_shape(const QMatrix& a, const OrderedPartition& p) {
  if (a.cols() < 1 || a.cols() > kMaxColumns) throw std::invalid_argument("matrix needs 1..63 columns");
  if (p.columns() != a.cols()) throw std::invalid_argument("partition does not match the matrix columns");
}

}  // namespace

std::optional<ColumnsConditionCertificate> check_partition(const QMatrix& a, const OrderedPartition& p) {
  require_shape(a, p);
  ColumnsConditionCertificate cert{p, {}};
  cert.witnesses.resize(p.size());
  if (!is_zero(column_sum(a, p.mask(0)))) return std::nullopt;
  for (std::size_t t = 1; t < p.size(); ++t) {
    const ColumnMask earlier = p.prefix_mask(t);
    const auto lambda = span_membership(select_columns(a, earlier), column_sum(a, p.mask(t)));
    if (!lambda) return std::nullopt;
    Index j = 0;
    for (ColumnMask m = earlier; m != 0; m &= m - 1) cert.witnesses[t].push_back({std::countr_zero(m), (*lambda)(j++)});
  }
  return cert;
}

bool verify_certificate(const QMatrix& a, const ColumnsConditionCertificate& cert) {
  const auto& p = cert.partition;
  if (p.columns() != a.cols() || p.size() == 0) return false;
  if (cert.witnesses.size() != p.size() || !cert.witnesses[0].empty()) return false;
  if (!is_zero(column_sum(a, p.mask(0)))) return false;
  for (std::size_t t = 1; t < p.size(); ++t) {
    const ColumnMask earlier = p.prefix_mask(t);
    QVector combination = QVector::Zero(a.rows());
    std::set<int> used;
    for (const auto& w : cert.witnesses[t]) {
      if (w.column < 0 || w.column >= a.cols()) return false;
      if (!(earlier & (ColumnMask{1} << w.column))) return false;
      if (!used.insert(w.column).second) return false;
      combination += w.coeff * a.col(w.column);
    }
    if (column_sum(a, p.mask(t)) != combination) return false;
  }
  return true;
}

ColumnsConditionResult decide_columns_condition(const QMatrix& a, const SearchOptions& options) {
  if (a.cols() < 1 || a.cols() > kMaxColumns) throw std::invalid_argument("matrix needs 1..63 columns");
  const int v = static_cast<int>(a.cols());

  struct Tester {
    const QMatrix* a;
    ResidualCache residuals;
    bool operator()(std::span<const ColumnMask> blocks) {
      const QVector s = column_sum(*a, blocks.back());
      if (blocks.size() == 1) return is_zero(s);
      ColumnMask earlier = 0;
      for (std::size_t t = 0; t + 1 < blocks.size(); ++t) earlier |= blocks[t];
      return is_zero(residuals.functionals(earlier) * s);
    }
  };
  struct Finisher {
    const QMatrix* a;
    int v;
    std::optional<ColumnsConditionCertificate> operator()(std::span<const ColumnMask> blocks) const {
      return check_partition(*a, OrderedPartition::from_masks(blocks, v));
    }
  };

  auto outcome = search_ordered_partitions<ColumnsConditionCertificate>(v, Tester{&a, ResidualCache(a)},
                                                                       Finisher{&a, v}, options);
  return {outcome.status, std::move(outcome.result), outcome.steps};
}

QMatrix first_entries_from_certificate(const QMatrix& a, const ColumnsConditionCertificate& cert) {
  if (!verify_certificate(a, cert)) throw std::invalid_argument("certificate does not verify against the matrix");
  const auto& p = cert.partition;
  QMatrix g = QMatrix::Zero(a.cols(), static_cast<Index>(p.size()));
  for (std::size_t t = 0; t < p.size(); ++t) {
    for (int i : p[t]) g(i, static_cast<Index>(t)) = 1;
    for (const auto& w : cert.witnesses[t]) g(w.column, static_cast<Index>(t)) = -w.coeff;
  }
  return g;
}

bool is_first_entries_matrix(const QMatrix& g, bool unital) {
  std::map<Index, Rational> leading_by_column;
  for (Index i = 0; i < g.rows(); ++i) {
    Index j = 0;
    while (j < g.cols() && g(i, j) == 0) ++j;
    if (j == g.cols()) return false;
    const Rational& lead = g(i, j);
    if (lead <= 0 || (unital && lead != 1)) return false;
    auto [it, inserted] = leading_by_column.emplace(j, lead);
    if (!inserted && it->second != lead) return false;
  }
  return true;
}

std::optional<Rational> is_first_entries_sufficient(const QMatrix& a) {
  std::optional<Rational> common;
  for (Index i = 0; i < a.rows(); ++i) {
    Index j = 0;
    while (j < a.cols() && a(i, j) == 0) ++j;
    if (j == a.cols()) return std::nullopt;
    if (a(i, j) <= 0) return std::nullopt;
    if (!common) common = a(i, j);
    else if (*common != a(i, j)) return std::nullopt;
  }
  return common;
}

}  // namespace rado
