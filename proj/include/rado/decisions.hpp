#ifndef RADO_DECISIONS_HPP
#define RADO_DECISIONS_HPP

// Decision procedures for partition regularity of rational matrices.
//
// kernel PR (KPR):        every finite colouring of N has a monochromatic x with A x = 0.
// multiply KPR:           monochromatic x_1..x_k (colours may differ) with sum A_t x_t = 0.
// doubly IPR:             monochromatic x with A x monochromatic.
// image PR (IPR):         some x in N^v with A x monochromatic.
//
// KPR is the columns condition. A tuple is multiply KPR iff
// (A_1 c_2 A_2 ... c_k A_k) satisfies it for some positive rationals c_t;
// A is doubly IPR iff (A -b I) does for some b > 0; A is IPR iff
// (A diag(e) -I) does for some positive e.

#include "rado/columns_condition.hpp"
#include "rado/feasibility.hpp"

#include <string>
#include <utility>
#include <vector>

namespace rado {

enum class Verdict { Yes, No, Undecided };

std::string to_string(Verdict v);

struct Decision {
  Verdict verdict = Verdict::No;
  std::vector<std::pair<std::string, Rational>> scalars;
  bool scalars_unique = true;
  std::optional<ColumnsConditionCertificate> certificate;
  /// The (scaled) matrix the certificate refers to.
  std::optional<QMatrix> assembled;
  std::uint64_t steps = 0;
};

Decision is_kpr(const QMatrix& a, const SearchOptions& options = {});

/// Generic scaled search: first partition in canonical order whose affine
/// system has a strictly positive solution.
Decision decide_scaled(const ScalingTemplate& t, const std::vector<std::string>& scalar_names,
                       const SearchOptions& options = {});

/// Columns of A_1 are fixed at 1; each later A_t shares one scalar c_t.
Decision multiply_kpr(const std::vector<QMatrix>& matrices, const SearchOptions& options = {});
Decision doubly_kpr(const QMatrix& a, const QMatrix& b, const SearchOptions& options = {});

/// Template for (A -b I_u): A fixed, identity columns under one scalar.
ScalingTemplate doubly_ipr_template(const QMatrix& a);
Decision doubly_ipr(const QMatrix& a, const SearchOptions& options = {});

/// Template for (A diag(e) -I_u): one scalar per column of A.
ScalingTemplate ipr_template(const QMatrix& a);
/// NO verdicts rely on the per-column scaling characterisation of image
/// partition regularity; YES verdicts are self-contained.
Decision is_ipr(const QMatrix& a, const SearchOptions& options = {});

/// First nonempty set of columns (0-based, increasing bitmask order) that
/// sums to the zero vector.
std::optional<std::vector<int>> zero_column_subset_exists(const QMatrix& a);

/// Integrality of b for integer doubly IPR matrices without zero-sum column
/// sets: if v+t lies in I_1 then row t of clause (1) reads
/// b = sum over j in I_1 of a_{t,j}.
struct IntegerBReport {
  Decision decision;
  std::optional<std::vector<int>> zero_subset;
  bool hypothesis_holds = false;  // no zero-sum column set
  std::optional<int> row;         // 0-based t with v+t in I_1
  std::optional<Rational> row_sum;
  bool b_is_positive_integer = false;
  bool identity_holds = false;    // for every t with v+t in I_1
};

/// Throws std::invalid_argument for non-integer matrices.
IntegerBReport integer_b_analysis(const QMatrix& a, const SearchOptions& options = {});

}  // namespace rado

#endif  // RADO_DECISIONS_HPP
