#include "rado/oracle.hpp"

#include "rado/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace rado {

std::uint64_t g_p(std::uint64_t x, std::uint64_t p) {
  if (x < 1) throw std::invalid_argument("g_p needs x >= 1");
  if (p < 2) throw std::invalid_argument("g_p needs p >= 2");
  std::uint64_t t = 0;
  for (std::uint64_t power = 1; power <= x / p; power *= p) ++t;
  return t;
}

std::uint64_t base_digit(std::uint64_t x, std::uint64_t p, std::int64_t j) {
  if (p < 2) throw std::invalid_argument("base_digit needs p >= 2");
  if (j < 0) return 0;
  for (std::int64_t k = 0; k < j; ++k) {
    x /= p;
    if (x == 0) return 0;
  }
  return x % p;
}

GammaColour gamma_p_colour(std::uint64_t x, std::uint64_t p) {
  const std::uint64_t g = g_p(x, p);
  const auto top = static_cast<std::int64_t>(g);
  return {g % 2, base_digit(x, p, top), base_digit(x, p, top - 1)};
}

Colouring Colouring::modulo(std::uint64_t m) {
  if (m < 1) throw std::invalid_argument("mod colouring needs m >= 1");
  return Colouring(Kind::Mod, m);
}

Colouring Colouring::gamma(std::uint64_t p) {
  if (p < 2) throw std::invalid_argument("gamma colouring needs p >= 2");
  return Colouring(Kind::Gamma, p);
}

Colouring Colouring::start_parity(std::uint64_t base) {
  if (base < 2) throw std::invalid_argument("start parity colouring needs base >= 2");
  return Colouring(Kind::StartParity, base);
}

Colouring Colouring::table(std::vector<Colour> colours) {
  if (colours.empty()) throw std::invalid_argument("table colouring needs at least one entry");
  Colouring c(Kind::Table, 0);
  c.table_ = std::move(colours);
  return c;
}

Colouring Colouring::dilated(std::uint64_t n) const {
  if (n < 1) throw std::invalid_argument("dilation factor must be positive");
  Colouring c = *this;
  c.scale_ *= n;
  return c;
}

std::optional<std::uint64_t> Colouring::domain() const {
  if (kind_ != Kind::Table) return std::nullopt;
  return table_.size() / scale_;
}

Colour Colouring::operator()(std::uint64_t x) const {
  if (x < 1) throw std::out_of_range("colourings are defined on positive integers");
  const std::uint64_t y = x * scale_;
  switch (kind_) {
    case Kind::Mod: return y % param_;
    case Kind::Gamma: {
      const auto c = gamma_p_colour(y, param_);
      return (c.parity * param_ + c.leading) * param_ + c.second;
    }
    case Kind::StartParity: return g_p(y, param_) % 2;
    case Kind::Table:
      if (y > table_.size()) throw std::out_of_range("table colouring undefined at " + std::to_string(y));
      return table_[y - 1];
  }
  return 0;
}

std::string Colouring::describe() const {
  std::string s;
  switch (kind_) {
    case Kind::Mod: s = "mod:" + std::to_string(param_); break;
    case Kind::Gamma: s = "gamma:" + std::to_string(param_); break;
    case Kind::StartParity: s = "startparity:" + std::to_string(param_); break;
    case Kind::Table: s = "table[" + std::to_string(table_.size()) + "]"; break;
  }
  if (scale_ != 1) s += " dilated by " + std::to_string(scale_);
  return s;
}

namespace {

using i128 = __int128;

// scale * x_var == sum coeff * x_free
struct PivotRow {
  Index var;
  std::int64_t scale;
  std::vector<std::pair<Index, std::int64_t>> terms;
};

// Integer parametrisation of ker(A_1 ... A_k) by its free coordinates.
struct Kernel {
  Index vars = 0;
  std::vector<int> block_of;
  std::vector<Index> block_start;
  int blocks = 0;
  std::vector<Index> free_vars;
  std::vector<PivotRow> rows;
  bool has_forced_zero = false;  // some coordinate vanishes on the whole kernel

  // Pivot value if it is a positive integer in [1, bound].
  std::optional<std::uint64_t> evaluate(const PivotRow& r, const std::vector<std::uint64_t>& x, std::uint64_t bound) const {
    i128 total = 0;
    for (const auto& [f, c] : r.terms) total += static_cast<i128>(c) * static_cast<i128>(x[static_cast<std::size_t>(f)]);
    if (total % r.scale != 0) return std::nullopt;
    const i128 value = total / r.scale;
    if (value < 1 || value > static_cast<i128>(bound)) return std::nullopt;
    return static_cast<std::uint64_t>(value);
  }
};

std::int64_t to_int64(const Integer& z) {
  if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min())
    throw std::invalid_argument("kernel coefficients too large for the oracle");
  return z.convert_to<std::int64_t>();
}

Kernel make_kernel(const std::vector<QMatrix>& matrices) {
  if (matrices.empty()) throw std::invalid_argument("oracle needs at least one matrix");
  const QMatrix m = hconcat(matrices);
  Kernel k;
  k.vars = m.cols();
  k.blocks = static_cast<int>(matrices.size());
  Index start = 0;
  for (std::size_t t = 0; t < matrices.size(); ++t) {
    k.block_start.push_back(start);
    k.block_of.insert(k.block_of.end(), static_cast<std::size_t>(matrices[t].cols()), static_cast<int>(t));
    start += matrices[t].cols();
  }
  k.block_start.push_back(start);

  const auto e = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(k.vars), false);
  for (Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  for (Index j = 0; j < k.vars; ++j)
    if (!is_pivot[static_cast<std::size_t>(j)]) k.free_vars.push_back(j);

  for (Index r = 0; r < e.rank(); ++r) {
    Integer l = 1;
    for (Index f : k.free_vars) l = boost::multiprecision::lcm(l, Integer(denominator(e.reduced(r, f))));
    PivotRow row{e.pivots[static_cast<std::size_t>(r)], to_int64(l), {}};
    for (Index f : k.free_vars) {
      if (e.reduced(r, f) == 0) continue;
      const Rational c = -e.reduced(r, f) * Rational(l);
      row.terms.emplace_back(f, to_int64(numerator(c)));
    }
    if (row.terms.empty()) k.has_forced_zero = true;
    k.rows.push_back(std::move(row));
  }
  return k;
}

std::vector<std::vector<std::uint64_t>> split(const Kernel& k, const std::vector<std::uint64_t>& x) {
  std::vector<std::vector<std::uint64_t>> out;
  for (int t = 0; t < k.blocks; ++t)
    out.emplace_back(x.begin() + k.block_start[static_cast<std::size_t>(t)],
                     x.begin() + k.block_start[static_cast<std::size_t>(t) + 1]);
  return out;
}

// For each free coordinate (by position in free_vars), the pivot rows that
// become determined once it is assigned, given assignment in free_vars order
// restricted to `order`.
std::vector<std::vector<std::size_t>> rows_completed_by(const Kernel& k, const std::vector<Index>& order) {
  std::map<Index, std::size_t> position;
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
  std::vector<std::vector<std::size_t>> out(order.size());
  for (std::size_t r = 0; r < k.rows.size(); ++r) {
    std::optional<std::size_t> last;
    bool inside = false;
    for (const auto& [f, c] : k.rows[r].terms) {
      auto it = position.find(f);
      if (it == position.end()) continue;
      inside = true;
      last = std::max(last.value_or(0), it->second);
    }
    if (inside) out[*last].push_back(r);
  }
  return out;
}

void check_bound(std::uint64_t bound) {
  if (bound < 1) throw std::invalid_argument("bound must be at least 1");
  if (bound > (std::uint64_t{1} << 24)) throw std::invalid_argument("bound too large for the oracle");
}

}  // namespace

std::vector<std::vector<std::uint64_t>> bounded_solutions(const std::vector<QMatrix>& matrices, std::uint64_t bound) {
  check_bound(bound);
  const Kernel k = make_kernel(matrices);
  std::vector<std::vector<std::uint64_t>> out;
  if (k.has_forced_zero) return out;

  double space = 1;
  for (std::size_t i = 0; i < k.free_vars.size(); ++i) space *= static_cast<double>(bound);
  if (space > 5e7) throw std::invalid_argument("bounded solution space too large to enumerate");

  const auto completes = rows_completed_by(k, k.free_vars);
  std::vector<std::uint64_t> x(static_cast<std::size_t>(k.vars), 0);
  auto dfs = [&](auto&& self, std::size_t i) -> void {
    if (i == k.free_vars.size()) {
      out.push_back(x);
      return;
    }
    for (std::uint64_t value = 1; value <= bound; ++value) {
      x[static_cast<std::size_t>(k.free_vars[i])] = value;
      bool ok = true;
      for (std::size_t r : completes[i]) {
        const auto pv = k.evaluate(k.rows[r], x, bound);
        if (!pv) {
          ok = false;
          break;
        }
        x[static_cast<std::size_t>(k.rows[r].var)] = *pv;
      }
      if (ok) self(self, i + 1);
    }
  };
  dfs(dfs, 0);
  return out;
}

std::optional<SolutionWitness> find_monochromatic_solution(const std::vector<QMatrix>& matrices,
                                                           const Colouring& colouring, std::uint64_t bound) {
  check_bound(bound);
  if (auto d = colouring.domain(); d && *d < bound) throw std::invalid_argument("colouring table shorter than the bound");
  const Kernel k = make_kernel(matrices);
  if (k.has_forced_zero) return std::nullopt;

  // Colour classes of [1..N].
  std::map<Colour, std::vector<std::uint64_t>> classes;
  for (std::uint64_t x = 1; x <= bound; ++x) classes[colouring(x)].push_back(x);
  std::vector<Colour> palette;
  for (const auto& [c, xs] : classes) palette.push_back(c);

  // Components of free coordinates linked through pivot rows; given the
  // colour of every block they can be solved independently.
  std::vector<std::size_t> parent(k.free_vars.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  std::map<Index, std::size_t> free_pos;
  for (std::size_t i = 0; i < k.free_vars.size(); ++i) free_pos[k.free_vars[i]] = i;
  for (const auto& row : k.rows)
    for (std::size_t j = 1; j < row.terms.size(); ++j)
      parent[find(free_pos[row.terms[j].first])] = find(free_pos[row.terms[0].first]);

  struct Component {
    std::vector<Index> free_vars;
    std::vector<std::vector<std::size_t>> completes;
    std::vector<int> blocks;  // blocks touched
    std::map<std::vector<Colour>, std::optional<std::vector<std::pair<Index, std::uint64_t>>>> memo;
  };
  std::map<std::size_t, Component> by_root;
  for (std::size_t i = 0; i < k.free_vars.size(); ++i) by_root[find(i)].free_vars.push_back(k.free_vars[i]);
  std::vector<Component> components;
  for (auto& [root, c] : by_root) {
    c.completes = rows_completed_by(k, c.free_vars);
    std::vector<bool> touched(static_cast<std::size_t>(k.blocks), false);
    for (Index f : c.free_vars) touched[static_cast<std::size_t>(k.block_of[static_cast<std::size_t>(f)])] = true;
    for (const auto& rows : c.completes)
      for (std::size_t r : rows) touched[static_cast<std::size_t>(k.block_of[static_cast<std::size_t>(k.rows[r].var)])] = true;
    for (int t = 0; t < k.blocks; ++t)
      if (touched[static_cast<std::size_t>(t)]) c.blocks.push_back(t);
    components.push_back(std::move(c));
  }

  std::vector<std::uint64_t> x(static_cast<std::size_t>(k.vars), 0);
  auto solve_component = [&](Component& c, const std::vector<Colour>& block_colour)
      -> const std::optional<std::vector<std::pair<Index, std::uint64_t>>>& {
    std::vector<Colour> key;
    for (int t : c.blocks) key.push_back(block_colour[static_cast<std::size_t>(t)]);
    if (auto it = c.memo.find(key); it != c.memo.end()) return it->second;

    std::optional<std::vector<std::pair<Index, std::uint64_t>>> found;
    auto dfs = [&](auto&& self, std::size_t i) -> bool {
      if (i == c.free_vars.size()) return true;
      const Index f = c.free_vars[i];
      const Colour want = block_colour[static_cast<std::size_t>(k.block_of[static_cast<std::size_t>(f)])];
      for (std::uint64_t value : classes.at(want)) {
        x[static_cast<std::size_t>(f)] = value;
        bool ok = true;
        for (std::size_t r : c.completes[i]) {
          const auto& row = k.rows[r];
          const auto pv = k.evaluate(row, x, bound);
          if (!pv || colouring(*pv) != block_colour[static_cast<std::size_t>(k.block_of[static_cast<std::size_t>(row.var)])]) {
            ok = false;
            break;
          }
          x[static_cast<std::size_t>(row.var)] = *pv;
        }
        if (ok && self(self, i + 1)) return true;
      }
      return false;
    };
    if (dfs(dfs, 0)) {
      std::vector<std::pair<Index, std::uint64_t>> values;
      for (std::size_t i = 0; i < c.free_vars.size(); ++i) {
        values.emplace_back(c.free_vars[i], x[static_cast<std::size_t>(c.free_vars[i])]);
        for (std::size_t r : c.completes[i]) values.emplace_back(k.rows[r].var, x[static_cast<std::size_t>(k.rows[r].var)]);
      }
      found = std::move(values);
    }
    return c.memo.emplace(std::move(key), std::move(found)).first->second;
  };

  // Odometer over block colours, lexicographic in palette order.
  std::vector<std::size_t> digit(static_cast<std::size_t>(k.blocks), 0);
  for (;;) {
    std::vector<Colour> block_colour;
    for (std::size_t d : digit) block_colour.push_back(palette[d]);
    bool all = true;
    std::vector<std::uint64_t> solution(static_cast<std::size_t>(k.vars), 0);
    for (auto& c : components) {
      const auto& part = solve_component(c, block_colour);
      if (!part) {
        all = false;
        break;
      }
      for (const auto& [var, value] : *part) solution[static_cast<std::size_t>(var)] = value;
    }
    if (all) return SolutionWitness{split(k, solution), block_colour};

    std::size_t pos = digit.size();
    while (pos > 0) {
      --pos;
      if (++digit[pos] < palette.size()) break;
      digit[pos] = 0;
      if (pos == 0) return std::nullopt;
    }
  }
}

bool verify_witness(const std::vector<QMatrix>& matrices, const Colouring& colouring, const SolutionWitness& w) {
  if (w.vectors.size() != matrices.size() || w.colours.size() != matrices.size()) return false;
  QVector total = QVector::Zero(matrices.front().rows());
  for (std::size_t t = 0; t < matrices.size(); ++t) {
    const auto& a = matrices[t];
    if (a.rows() != total.rows() || static_cast<Index>(w.vectors[t].size()) != a.cols()) return false;
    QVector x(a.cols());
    for (Index j = 0; j < a.cols(); ++j) {
      const std::uint64_t value = w.vectors[t][static_cast<std::size_t>(j)];
      if (value < 1 || colouring(value) != w.colours[t]) return false;
      x(j) = Rational(Integer(value));
    }
    total += a * x;
  }
  return is_zero(total);
}

namespace {

struct ColouringProblem {
  std::vector<std::vector<std::uint64_t>> solutions;
  std::vector<int> block_of;  // per solution coordinate
  int blocks;

  ColouringProblem(const std::vector<QMatrix>& matrices, std::uint64_t bound) : solutions(bounded_solutions(matrices, bound)) {
    blocks = static_cast<int>(matrices.size());
    for (std::size_t t = 0; t < matrices.size(); ++t)
      block_of.insert(block_of.end(), static_cast<std::size_t>(matrices[t].cols()), static_cast<int>(t));
  }

  bool monochromatic(const std::vector<std::uint64_t>& s, const std::vector<Colour>& colour) const {
    std::vector<std::optional<Colour>> seen(static_cast<std::size_t>(blocks));
    for (std::size_t j = 0; j < s.size(); ++j) {
      auto& slot = seen[static_cast<std::size_t>(block_of[j])];
      const Colour c = colour[s[j] - 1];
      if (!slot) slot = c;
      else if (*slot != c) return false;
    }
    return true;
  }
};

void check_colouring_size(unsigned r, std::uint64_t bound) {
  if (r < 1 || r > 64) throw std::invalid_argument("colour count must be in 1..64");
  check_bound(bound);
  double size = 1;
  for (std::uint64_t i = 0; i < bound; ++i) {
    size *= r;
    if (size > 1e7) throw std::invalid_argument("r^N exceeds 10^7 colourings");
  }
}

}  // namespace

bool verify_all_colourings(const std::vector<QMatrix>& matrices, unsigned r, std::uint64_t bound) {
  check_colouring_size(r, bound);
  const ColouringProblem problem(matrices, bound);
  std::vector<Colour> colour(bound, 0);
  for (;;) {
    const bool hit = std::any_of(problem.solutions.begin(), problem.solutions.end(),
                                 [&](const auto& s) { return problem.monochromatic(s, colour); });
    if (!hit) return false;
    std::size_t pos = 0;
    while (pos < colour.size() && ++colour[pos] == r) colour[pos++] = 0;
    if (pos == colour.size()) return true;
  }
}

std::optional<WitnessColouring> search_witness_colouring(const std::vector<QMatrix>& matrices, unsigned r,
                                                         std::uint64_t bound) {
  check_colouring_size(r, bound);
  const ColouringProblem problem(matrices, bound);

  std::vector<std::vector<std::size_t>> containing(bound + 1);
  for (std::size_t s = 0; s < problem.solutions.size(); ++s) {
    auto values = problem.solutions[s];
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::uint64_t v : values) containing[v].push_back(s);
  }

  const std::uint64_t all = r == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << r) - 1);
  std::vector<std::uint64_t> domain(bound + 1, all);
  std::vector<std::optional<Colour>> colour(bound + 1);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> trail;

  // After colouring n (the largest coloured value so far), reject if some
  // solution became monochromatic and forbid colours that would complete one.
  auto propagate = [&](std::uint64_t n) -> bool {
    for (std::size_t s : containing[n]) {
      const auto& sol = problem.solutions[s];
      std::vector<std::optional<Colour>> block_colour(static_cast<std::size_t>(problem.blocks));
      std::optional<std::uint64_t> open;
      bool dead = false, several_open = false;
      for (std::size_t j = 0; j < sol.size() && !dead; ++j) {
        const auto& c = colour[sol[j]];
        if (!c) {
          if (open && *open != sol[j]) several_open = true;
          open = sol[j];
          continue;
        }
        auto& slot = block_colour[static_cast<std::size_t>(problem.block_of[j])];
        if (!slot) slot = *c;
        else if (*slot != *c) dead = true;
      }
      if (dead || several_open) continue;
      if (!open) return false;
      std::optional<Colour> forced;
      bool conflicting = false;
      for (std::size_t j = 0; j < sol.size(); ++j) {
        if (sol[j] != *open) continue;
        const auto& slot = block_colour[static_cast<std::size_t>(problem.block_of[j])];
        if (!slot) continue;
        if (forced && *forced != *slot) conflicting = true;
        forced = *slot;
      }
      if (conflicting) continue;
      const std::uint64_t banned = forced ? (std::uint64_t{1} << *forced) : all;
      if (domain[*open] & banned) {
        trail.emplace_back(*open, domain[*open]);
        domain[*open] &= ~banned;
        if (domain[*open] == 0) return false;
      }
    }
    return true;
  };

  auto dfs = [&](auto&& self, std::uint64_t n, Colour used) -> bool {
    if (n > bound) return true;
    const Colour limit = std::min<Colour>(r - 1, used);
    for (Colour c = 0; c <= limit; ++c) {
      if (!(domain[n] & (std::uint64_t{1} << c))) continue;
      const std::size_t mark = trail.size();
      colour[n] = c;
      if (propagate(n) && self(self, n + 1, std::max<Colour>(used, c + 1))) return true;
      colour[n].reset();
      while (trail.size() > mark) {
        domain[trail.back().first] = trail.back().second;
        trail.pop_back();
      }
    }
    return false;
  };
  if (!dfs(dfs, 1, 0)) return std::nullopt;

  WitnessColouring out{bound, r, {}};
  for (std::uint64_t x = 1; x <= bound; ++x) out.table.push_back(*colour[x]);
  return out;
}

bool dilation_check(const QMatrix& a, const Colouring& phi, std::uint64_t n, std::uint64_t bound) {
  const auto y = find_monochromatic_solution({a}, phi.dilated(n), bound);
  if (!y) return true;
  SolutionWitness x = *y;
  for (auto& value : x.vectors.front()) value *= n;
  x.colours.front() = phi(x.vectors.front().front());
  return verify_witness({a}, phi, x);
}

}  // namespace rado
