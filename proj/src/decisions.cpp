#include "rado/decisions.hpp"

#include <bit>
#include <stdexcept>

namespace rado {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "YES";
    case Verdict::No: return "NO";
    case Verdict::Undecided: return "UNDECIDED";
  }
  return "?";
}

namespace {

Verdict verdict_of(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return Verdict::Yes;
    case SearchStatus::Exhausted: return Verdict::No;
    case SearchStatus::CapExceeded: return Verdict::Undecided;
  }
  return Verdict::Undecided;
}

struct ScaledHit {
  PositiveSolution solution;
  QMatrix assembled;
  ColumnsConditionCertificate certificate;
};

}  // namespace

Decision is_kpr(const QMatrix& a, const SearchOptions& options) {
  auto r = decide_columns_condition(a, options);
  Decision d;
  d.verdict = verdict_of(r.status);
  d.steps = r.steps;
  if (r.certificate) {
    d.certificate = std::move(r.certificate);
    d.assembled = a;
  }
  return d;
}

Decision decide_scaled(const ScalingTemplate& t, const std::vector<std::string>& scalar_names,
                       const SearchOptions& options) {
  t.validate();
  if (static_cast<int>(scalar_names.size()) != t.variables) throw std::invalid_argument("one name per scalar");
  const int v = static_cast<int>(t.columns.cols());

  struct Tester {
    const ScalingTemplate* t;
    ResidualCache residuals;
    bool operator()(std::span<const ColumnMask> blocks) {
      return feasible_positive(build_system(*t, blocks, residuals)).has_value();
    }
  };
  struct Finisher {
    const ScalingTemplate* t;
    int v;
    std::optional<ScaledHit> operator()(std::span<const ColumnMask> blocks) const {
      ResidualCache residuals(t->columns);
      auto solution = feasible_positive(build_system(*t, blocks, residuals));
      if (!solution) return std::nullopt;
      QMatrix assembled = t->assemble(solution->values);
      auto cert = check_partition(assembled, OrderedPartition::from_masks(blocks, v));
      if (!cert) return std::nullopt;
      return ScaledHit{std::move(*solution), std::move(assembled), std::move(*cert)};
    }
  };

  auto outcome = search_ordered_partitions<ScaledHit>(v, Tester{&t, ResidualCache(t.columns)}, Finisher{&t, v}, options);
  Decision d;
  d.verdict = verdict_of(outcome.status);
  d.steps = outcome.steps;
  if (outcome.result) {
    for (int k = 0; k < t.variables; ++k)
      d.scalars.emplace_back(scalar_names[static_cast<std::size_t>(k)], outcome.result->solution.values(k));
    d.scalars_unique = outcome.result->solution.unique;
    d.certificate = std::move(outcome.result->certificate);
    d.assembled = std::move(outcome.result->assembled);
  }
  return d;
}

Decision multiply_kpr(const std::vector<QMatrix>& matrices, const SearchOptions& options) {
  if (matrices.size() < 2) throw std::invalid_argument("multiply_kpr needs at least two matrices");
  ScalingTemplate t;
  t.columns = hconcat(matrices);
  t.variables = static_cast<int>(matrices.size()) - 1;
  std::vector<std::string> names;
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    const int group = k == 0 ? kFixedOne : static_cast<int>(k) - 1;
    t.group_of.insert(t.group_of.end(), static_cast<std::size_t>(matrices[k].cols()), group);
    if (k > 0) names.push_back("c" + std::to_string(k + 1));
  }
  return decide_scaled(t, names, options);
}

Decision doubly_kpr(const QMatrix& a, const QMatrix& b, const SearchOptions& options) {
  return multiply_kpr({a, b}, options);
}

ScalingTemplate doubly_ipr_template(const QMatrix& a) {
  ScalingTemplate t;
  t.columns = hconcat({a, QMatrix(-identity(a.rows()))});
  t.variables = 1;
  t.group_of.assign(static_cast<std::size_t>(a.cols()), kFixedOne);
  t.group_of.insert(t.group_of.end(), static_cast<std::size_t>(a.rows()), 0);
  return t;
}

Decision doubly_ipr(const QMatrix& a, const SearchOptions& options) {
  return decide_scaled(doubly_ipr_template(a), {"b"}, options);
}

ScalingTemplate ipr_template(const QMatrix& a) {
  ScalingTemplate t;
  t.columns = hconcat({a, QMatrix(-identity(a.rows()))});
  t.variables = static_cast<int>(a.cols());
  for (Index j = 0; j < a.cols(); ++j) t.group_of.push_back(static_cast<int>(j));
  t.group_of.insert(t.group_of.end(), static_cast<std::size_t>(a.rows()), kFixedOne);
  return t;
}

Decision is_ipr(const QMatrix& a, const SearchOptions& options) {
  std::vector<std::string> names;
  for (Index j = 0; j < a.cols(); ++j) names.push_back("e" + std::to_string(j + 1));
  return decide_scaled(ipr_template(a), names, options);
}

std::optional<std::vector<int>> zero_column_subset_exists(const QMatrix& a) {
  if (a.cols() < 1 || a.cols() > kMaxColumns) throw std::invalid_argument("matrix needs 1..63 columns");
  const ColumnMask full = (ColumnMask{1} << a.cols()) - 1;
  for (ColumnMask s = 1; s <= full; ++s) {
    if (!is_zero(column_sum(a, s))) continue;
    std::vector<int> cols;
    for (ColumnMask m = s; m != 0; m &= m - 1) cols.push_back(std::countr_zero(m));
    return cols;
  }
  return std::nullopt;
}

IntegerBReport integer_b_analysis(const QMatrix& a, const SearchOptions& options) {
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (denominator(a(i, j)) != 1) throw std::invalid_argument("integer_b_analysis needs an integer matrix");

  IntegerBReport report;
  report.zero_subset = zero_column_subset_exists(a);
  report.hypothesis_holds = !report.zero_subset;
  report.decision = doubly_ipr(a, options);
  if (report.decision.verdict != Verdict::Yes) return report;

  const Rational& b = report.decision.scalars.front().second;
  report.b_is_positive_integer = b > 0 && denominator(b) == 1;

  const auto& first = report.decision.certificate->partition[0];
  const int v = static_cast<int>(a.cols());
  report.identity_holds = true;
  bool any_row = false;
  for (int col : first) {
    if (col < v) continue;
    const int t = col - v;
    Rational sum = 0;
    for (int j : first)
      if (j < v) sum += a(t, j);
    if (!report.row) {
      report.row = t;
      report.row_sum = sum;
    }
    any_row = true;
    if (sum != b) report.identity_holds = false;
  }
  if (!any_row) report.identity_holds = false;
  return report;
}

}  // namespace rado
