#ifndef RADO_FEASIBILITY_HPP
#define RADO_FEASIBILITY_HPP

// Columns condition for a matrix whose columns carry unknown positive scalars.
//
// Scaling a column by a nonzero scalar leaves the span of any column set
// unchanged, so for a fixed ordered partition the condition becomes affine in
// the scalars: clause (1) is linear in them directly, and clause (2) is a set
// of residual functionals of the *unscaled* earlier columns applied to the
// scaled block sum. Feasibility over strictly positive rationals is then
// decided exactly by Gaussian substitution followed by Fourier-Motzkin.

#include "rado/columns_condition.hpp"
#include "rado/partition.hpp"
#include "rado/rational.hpp"

#include <optional>
#include <set>
#include <span>
#include <variant>
#include <vector>

namespace rado {

inline constexpr int kFixedOne = -1;

struct ScalingTemplate {
  QMatrix columns;             // unscaled
  std::vector<int> group_of;   // variable id per column, or kFixedOne
  int variables = 0;

  /// Throws std::invalid_argument on inconsistent shape or unused variables.
  void validate() const;
  /// The scaled matrix for the given variable values.
  QMatrix assemble(const QVector& values) const;
};

/// coeffs . x + constant == 0
struct AffineEquality {
  QVector coeffs;
  Rational constant;
};

struct AffineSystem {
  int variables = 0;
  std::vector<AffineEquality> equalities;
  std::vector<bool> positive;  // which variables must be > 0
};

struct PositiveSolution {
  QVector values;
  /// False when the solution set is a continuum and `values` is one
  /// canonical pick from it.
  bool unique = true;
};

/// Farkas-style proof that a system has no solution with the required
/// variables strictly positive. With g(x) = C x + k the equality residuals:
/// weights >= 0 on the positive variables and multipliers on the equalities
/// satisfy weights + C^T multipliers == 0 and, either weights != 0 and
/// multipliers . k <= 0 (so 0 < sum weights_i x_i = multipliers . k <= 0),
/// or weights == 0 and multipliers . k != 0 (the equalities are inconsistent).
struct FarkasCertificate {
  QVector weights;      // one per variable; zero where not required positive
  QVector multipliers;  // one per equality
};

/// Affine system expressing that `blocks` (a prefix or all of an ordered
/// partition) witnesses the columns condition for the scaled matrix. Every
/// variable is marked positive.
AffineSystem build_system(const ScalingTemplate& t, std::span<const ColumnMask> blocks, ResidualCache& residuals);
AffineSystem build_system(const ScalingTemplate& t, const OrderedPartition& p);

std::variant<PositiveSolution, FarkasCertificate> solve_positive(const AffineSystem& s);
std::optional<PositiveSolution> feasible_positive(const AffineSystem& s);

/// Independent check of an infeasibility certificate against the system.
bool verify_farkas(const AffineSystem& s, const FarkasCertificate& cert);

/// Values of a single (sign-unconstrained, nonzero) variable for which one
/// partition witnesses the columns condition.
struct ScalarSet {
  enum class Kind { Empty, Point, Unconstrained };
  Kind kind = Kind::Empty;
  Rational value;  // meaningful for Point
};

/// Zero is excluded: a zero scalar changes the column spans, so the affine
/// reduction does not describe it. Throws for templates with > 1 variable.
ScalarSet enumerate_feasible_scalars(const ScalingTemplate& t, const OrderedPartition& p);

struct ScalarUnion {
  std::set<Rational> points;
  bool unconstrained = false;  // some partition works for every nonzero value
  bool complete = true;        // false when the partition cap cut enumeration short
};

/// Union of enumerate_feasible_scalars over every ordered partition.
ScalarUnion feasible_scalars_union(const ScalingTemplate& t, std::optional<std::uint64_t> cap = std::nullopt);

}  // namespace rado

#endif  // RADO_FEASIBILITY_HPP
