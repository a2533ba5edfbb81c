#include "rado/feasibility.hpp"

#include "rado/linalg.hpp"

#include <bit>
#include <map>
#include <stdexcept>

namespace rado {

void ScalingTemplate::validate() const {
  if (columns.cols() < 1) throw std::invalid_argument("scaling template needs columns");
  if (static_cast<Index>(group_of.size()) != columns.cols())
    throw std::invalid_argument("scaling template: one group entry per column");
  std::vector<bool> used(static_cast<std::size_t>(variables), false);
  for (int g : group_of) {
    if (g == kFixedOne) continue;
    if (g < 0 || g >= variables) throw std::invalid_argument("scaling template: variable id out of range");
    used[static_cast<std::size_t>(g)] = true;
  }
  for (bool u : used)
    if (!u) throw std::invalid_argument("scaling template: unused variable");
}

QMatrix ScalingTemplate::assemble(const QVector& values) const {
  if (values.size() != variables) throw std::invalid_argument("assemble: wrong number of values");
  QMatrix out = columns;
  for (Index j = 0; j < columns.cols(); ++j)
    if (group_of[static_cast<std::size_t>(j)] != kFixedOne) out.col(j) *= values(group_of[static_cast<std::size_t>(j)]);
  return out;
}

namespace {

// Adds sum_{i in block} (w . col_i) * scale_i == 0 for one functional w.
void add_equality(const ScalingTemplate& t, const RowVector<Rational>& w, ColumnMask block, AffineSystem& s) {
  AffineEquality eq{QVector::Zero(t.variables), Rational(0)};
  for (ColumnMask m = block; m != 0; m &= m - 1) {
    const int i = std::countr_zero(m);
    const Rational value = (w * t.columns.col(i)).value();
    const int g = t.group_of[static_cast<std::size_t>(i)];
    if (g == kFixedOne) eq.constant += value;
    else eq.coeffs(g) += value;
  }
  if (is_zero(eq.coeffs) && eq.constant == 0) return;
  s.equalities.push_back(std::move(eq));
}

}  // namespace

AffineSystem build_system(const ScalingTemplate& t, std::span<const ColumnMask> blocks, ResidualCache& residuals) {
  AffineSystem s;
  s.variables = t.variables;
  s.positive.assign(static_cast<std::size_t>(t.variables), true);
  if (blocks.empty()) return s;

  for (Index r = 0; r < t.columns.rows(); ++r) {
    RowVector<Rational> e = RowVector<Rational>::Zero(t.columns.rows());
    e(r) = 1;
    add_equality(t, e, blocks[0], s);
  }
  ColumnMask earlier = blocks[0];
  for (std::size_t b = 1; b < blocks.size(); ++b) {
    const QMatrix& functionals = residuals.functionals(earlier);
    for (Index r = 0; r < functionals.rows(); ++r) add_equality(t, functionals.row(r), blocks[b], s);
    earlier |= blocks[b];
  }
  return s;
}

AffineSystem build_system(const ScalingTemplate& t, const OrderedPartition& p) {
  t.validate();
  if (p.columns() != t.columns.cols()) throw std::invalid_argument("partition does not match the template");
  std::vector<ColumnMask> masks;
  for (std::size_t b = 0; b < p.size(); ++b) masks.push_back(p.mask(b));
  ResidualCache residuals(t.columns);
  return build_system(t, masks, residuals);
}

namespace {

// a . y + b > 0 (or >= 0) over the free variables y, together with the
// weights that derive it from the original constraints:
//   weights . x + multipliers . (C x + k)  ==  a . y + b   identically.
struct Inequality {
  QVector a;
  Rational b;
  bool strict = true;
  QVector weights;
  QVector multipliers;
};

FarkasCertificate certificate_from(const Inequality& ineq) { return {ineq.weights, ineq.multipliers}; }

// Puts an inequality in canonical scale (first nonzero |a_j| == 1) so that
// parallel constraints can be compared directly.
void normalise(Inequality& q) {
  for (Index j = 0; j < q.a.size(); ++j) {
    if (q.a(j) == 0) continue;
    const Rational f = abs(q.a(j));
    if (f != 1) {
      q.a /= f;
      q.b /= f;
      q.weights /= f;
      q.multipliers /= f;
    }
    return;
  }
}

bool tighter(const Inequality& x, const Inequality& y) {
  if (x.b != y.b) return x.b < y.b;
  return x.strict && !y.strict;
}

// Drops trivially true and dominated constraints. Returns a violated constant
// constraint if one is present.
std::optional<Inequality> prune(std::vector<Inequality>& system) {
  std::map<std::vector<Rational>, Inequality> best;
  for (auto& q : system) {
    if (is_zero(q.a)) {
      if (q.b < 0 || (q.b == 0 && q.strict)) return q;
      continue;
    }
    normalise(q);
    std::vector<Rational> key(q.a.data(), q.a.data() + q.a.size());
    auto it = best.find(key);
    if (it == best.end()) best.emplace(std::move(key), std::move(q));
    else if (tighter(q, it->second)) it->second = std::move(q);
  }
  system.clear();
  for (auto& [key, q] : best) system.push_back(std::move(q));
  return std::nullopt;
}

Inequality combine(const Inequality& lower, const Inequality& upper, Index j) {
  // lower has a_j > 0, upper has a_j < 0; eliminate y_j.
  const Rational wl = -upper.a(j);
  const Rational wu = lower.a(j);
  Inequality c;
  c.a = wl * lower.a + wu * upper.a;
  c.a(j) = 0;
  c.b = wl * lower.b + wu * upper.b;
  c.strict = lower.strict || upper.strict;
  c.weights = wl * lower.weights + wu * upper.weights;
  c.multipliers = wl * lower.multipliers + wu * upper.multipliers;
  return c;
}

Rational pick_value(const std::optional<Rational>& lo, bool lo_strict, const std::optional<Rational>& hi,
                    bool hi_strict) {
  const Rational one(1);
  const bool above_lo = !lo || (lo_strict ? one > *lo : one >= *lo);
  const bool below_hi = !hi || (hi_strict ? one < *hi : one <= *hi);
  if (above_lo && below_hi) return one;
  if (lo && hi) {
    if (*lo == *hi) return *lo;
    return (*lo + *hi) / 2;
  }
  if (lo) return *lo + 1;
  return *hi - 1;
}

}  // namespace

std::variant<PositiveSolution, FarkasCertificate> solve_positive(const AffineSystem& s) {
  const Index n = s.variables;
  const Index m = static_cast<Index>(s.equalities.size());
  if (static_cast<Index>(s.positive.size()) != n) throw std::invalid_argument("positivity flags do not match variables");

  // Gaussian elimination on [C | k | I_m], pivoting only inside C.
  QMatrix work(m, n + 1 + m);
  for (Index r = 0; r < m; ++r) {
    const auto& eq = s.equalities[static_cast<std::size_t>(r)];
    if (eq.coeffs.size() != n) throw std::invalid_argument("equality has the wrong number of coefficients");
    work.block(r, 0, 1, n) = eq.coeffs.transpose();
    work(r, n) = eq.constant;
  }
  work.rightCols(m).setZero();
  for (Index r = 0; r < m; ++r) work(r, n + 1 + r) = 1;

  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < n && row < m; ++col) {
    Index pick = row;
    while (pick < m && work(pick, col) == 0) ++pick;
    if (pick == m) continue;
    if (pick != row) work.row(pick).swap(work.row(row));
    work.row(row) /= Rational(work(row, col));
    for (Index i = 0; i < m; ++i) {
      if (i == row || work(i, col) == 0) continue;
      const Rational f = work(i, col);
      work.row(i) -= f * work.row(row);
    }
    pivots.push_back(col);
    ++row;
  }
  const Index rank = row;
  for (Index r = rank; r < m; ++r) {
    if (work(r, n) != 0) return FarkasCertificate{QVector::Zero(n), work.block(r, n + 1, 1, m).transpose()};
  }

  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Index> free_vars;
  for (Index j = 0; j < n; ++j)
    if (!is_pivot[static_cast<std::size_t>(j)]) free_vars.push_back(j);
  const Index nf = static_cast<Index>(free_vars.size());

  std::vector<Inequality> system;
  for (Index f = 0; f < nf; ++f) {
    const Index var = free_vars[static_cast<std::size_t>(f)];
    if (!s.positive[static_cast<std::size_t>(var)]) continue;
    Inequality q{QVector::Zero(nf), Rational(0), true, QVector::Zero(n), QVector::Zero(m)};
    q.a(f) = 1;
    q.weights(var) = 1;
    system.push_back(std::move(q));
  }
  for (Index r = 0; r < rank; ++r) {
    const Index var = pivots[static_cast<std::size_t>(r)];
    if (!s.positive[static_cast<std::size_t>(var)]) continue;
    Inequality q{QVector::Zero(nf), -work(r, n), true, QVector::Zero(n), -work.block(r, n + 1, 1, m).transpose()};
    for (Index f = 0; f < nf; ++f) q.a(f) = -work(r, free_vars[static_cast<std::size_t>(f)]);
    q.weights(var) = 1;
    system.push_back(std::move(q));
  }

  // Fourier-Motzkin over y_0, y_1, ...; stages[j] holds the system before y_j
  // is eliminated, for back-substitution.
  std::vector<std::vector<Inequality>> stages;
  for (Index j = 0; j < nf; ++j) {
    if (auto bad = prune(system)) return certificate_from(*bad);
    stages.push_back(system);
    std::vector<Inequality> lower, upper, next;
    for (auto& q : system) {
      if (q.a(j) > 0) lower.push_back(q);
      else if (q.a(j) < 0) upper.push_back(q);
      else next.push_back(q);
    }
    for (const auto& l : lower)
      for (const auto& u : upper) next.push_back(combine(l, u, j));
    system = std::move(next);
  }
  if (auto bad = prune(system)) return certificate_from(*bad);

  QVector y = QVector::Zero(nf);
  for (Index j = nf - 1; j >= 0; --j) {
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& q : stages[static_cast<std::size_t>(j)]) {
      if (q.a(j) == 0) continue;
      Rational rest = q.b;
      for (Index l = j + 1; l < nf; ++l) rest += q.a(l) * y(l);
      const Rational bound = -rest / q.a(j);
      if (q.a(j) > 0) {
        if (!lo || bound > *lo || (bound == *lo && q.strict)) {
          lo = bound;
          lo_strict = q.strict;
        }
      } else if (!hi || bound < *hi || (bound == *hi && q.strict)) {
        hi = bound;
        hi_strict = q.strict;
      }
    }
    y(j) = pick_value(lo, lo_strict, hi, hi_strict);
  }

  PositiveSolution out{QVector::Zero(n), nf == 0};
  for (Index f = 0; f < nf; ++f) out.values(free_vars[static_cast<std::size_t>(f)]) = y(f);
  for (Index r = 0; r < rank; ++r) {
    Rational v = -work(r, n);
    for (Index f = 0; f < nf; ++f) v -= work(r, free_vars[static_cast<std::size_t>(f)]) * y(f);
    out.values(pivots[static_cast<std::size_t>(r)]) = v;
  }
  return out;
}

std::optional<PositiveSolution> feasible_positive(const AffineSystem& s) {
  auto result = solve_positive(s);
  if (auto* sol = std::get_if<PositiveSolution>(&result)) return std::move(*sol);
  return std::nullopt;
}

bool verify_farkas(const AffineSystem& s, const FarkasCertificate& cert) {
  const Index n = s.variables;
  const Index m = static_cast<Index>(s.equalities.size());
  if (cert.weights.size() != n || cert.multipliers.size() != m) return false;
  QVector combined = cert.weights;
  Rational constant = 0;
  for (Index j = 0; j < n; ++j) {
    if (cert.weights(j) < 0) return false;
    if (cert.weights(j) != 0 && !s.positive[static_cast<std::size_t>(j)]) return false;
  }
  for (Index r = 0; r < m; ++r) {
    const auto& eq = s.equalities[static_cast<std::size_t>(r)];
    combined += cert.multipliers(r) * eq.coeffs;
    constant += cert.multipliers(r) * eq.constant;
  }
  if (!is_zero(combined)) return false;
  if (is_zero(cert.weights)) return constant != 0;
  return constant <= 0;
}

ScalarSet enumerate_feasible_scalars(const ScalingTemplate& t, const OrderedPartition& p) {
  if (t.variables > 1) throw std::invalid_argument("enumerate_feasible_scalars needs a single-variable template");
  const AffineSystem s = build_system(t, p);
  ScalarSet out{ScalarSet::Kind::Unconstrained, Rational(0)};
  std::optional<Rational> forced;
  for (const auto& eq : s.equalities) {
    if (t.variables == 0 || eq.coeffs(0) == 0) {
      if (eq.constant != 0) return {ScalarSet::Kind::Empty, Rational(0)};
      continue;
    }
    const Rational value = -eq.constant / eq.coeffs(0);
    if (forced && *forced != value) return {ScalarSet::Kind::Empty, Rational(0)};
    forced = value;
  }
  if (forced) {
    if (*forced == 0) return {ScalarSet::Kind::Empty, Rational(0)};
    out = {ScalarSet::Kind::Point, *forced};
  }
  return out;
}

ScalarUnion feasible_scalars_union(const ScalingTemplate& t, std::optional<std::uint64_t> cap) {
  t.validate();
  ScalarUnion out;
  const auto status = enumerate_ordered_partitions(static_cast<int>(t.columns.cols()), cap, [&](const OrderedPartition& p) {
    const ScalarSet s = enumerate_feasible_scalars(t, p);
    if (s.kind == ScalarSet::Kind::Point) out.points.insert(s.value);
    else if (s.kind == ScalarSet::Kind::Unconstrained) out.unconstrained = true;
    return true;
  });
  out.complete = status != SearchStatus::CapExceeded;
  return out;
}

}  // namespace rado
