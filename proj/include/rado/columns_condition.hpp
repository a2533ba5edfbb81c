#ifndef RADO_COLUMNS_CONDITION_HPP
#define RADO_COLUMNS_CONDITION_HPP

// Rado's columns condition: a matrix A satisfies it when some ordered
// partition I_1, ..., I_m of its columns has the columns of I_1 summing to
// zero and, for every later block, the block's column sum lying in the span
// of all columns in earlier blocks.

#include "rado/partition.hpp"
#include "rado/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace rado {

struct Witness {
  int column;  // 0-based, in an earlier block
  Rational coeff;

  bool operator==(const Witness&) const = default;
};

struct ColumnsConditionCertificate {
  OrderedPartition partition;
  /// witnesses[t] expresses the sum of block t through columns of blocks
  /// 0..t-1; witnesses[0] is always empty.
  std::vector<std::vector<Witness>> witnesses;
};

/// Sum of the columns of `a` selected by `mask`.
QVector column_sum(const QMatrix& a, ColumnMask mask);

/// Submatrix made of the columns selected by `mask`, in increasing order.
QMatrix select_columns(const QMatrix& a, ColumnMask mask);

/// Memoised residual functionals of column subsets of one fixed matrix:
/// functionals(S) * w == 0 iff w lies in the span of the columns in S.
class ResidualCache {
 public:
  explicit ResidualCache(const QMatrix& columns) : columns_(&columns) {}
  const QMatrix& functionals(ColumnMask subset);

 private:
  const QMatrix* columns_;
  std::map<ColumnMask, QMatrix> cache_;
};

/// Certificate for A under P, or nullopt when P does not witness the condition.
std::optional<ColumnsConditionCertificate> check_partition(const QMatrix& a, const OrderedPartition& p);

/// Exact, search-independent check of every certificate clause against A.
bool verify_certificate(const QMatrix& a, const ColumnsConditionCertificate& cert);

struct ColumnsConditionResult {
  SearchStatus status;  // Found, Exhausted (condition fails), CapExceeded (undecided)
  std::optional<ColumnsConditionCertificate> certificate;
  std::uint64_t steps = 0;
};

/// First certificate in canonical partition order, if any.
ColumnsConditionResult decide_columns_condition(const QMatrix& a, const SearchOptions& options = {});

/// Unital first-entries matrix G (v x m) with A G = 0, built from a valid
/// certificate. Throws std::invalid_argument if the certificate fails.
QMatrix first_entries_from_certificate(const QMatrix& a, const ColumnsConditionCertificate& cert);

/// True when G has no zero row, positive leading entries, and leading entries
/// agree within each column (and all equal 1 when `unital`).
bool is_first_entries_matrix(const QMatrix& g, bool unital = false);

/// The common leading entry c > 0 when every row of A is nonzero and starts
/// with c; such a matrix is doubly image partition regular at a glance.
std::optional<Rational> is_first_entries_sufficient(const QMatrix& a);

}  // namespace rado

#endif  // RADO_COLUMNS_CONDITION_HPP
