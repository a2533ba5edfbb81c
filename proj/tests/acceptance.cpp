// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "rado/decisions.hpp"
#include "rado/io.hpp"
#include "rado/oracle.hpp"
#include "support.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace rado;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Report {
  bool ok = true;
  std::ostringstream notes;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      notes << " [failed: " << what << "]";
    }
  }
  void note(const std::string& what) { notes << " " << what; }
};

OrderedPartition one_based(std::vector<std::vector<int>> blocks, int v) {
  for (auto& b : blocks)
    for (int& c : b) --c;
  return OrderedPartition(std::move(blocks), v);
}

std::string set_string(const std::set<Rational>& s) {
  std::string out = "{";
  for (const auto& q : s) out += (out.size() > 1 ? ", " : "") + to_string(q);
  return out + "}";
}

void ac1(Report& r) {
  struct Case {
    const char* file;
    std::vector<std::vector<int>> partition;
  };
  for (const Case& c : {Case{"schur.txt", {{1, 3}, {2}}}, Case{"vdw.txt", {{1, 2, 3, 4}, {5}}},
                        Case{"ext47.txt", {{1, 4, 5, 7}, {2, 6}, {3}}}}) {
    const QMatrix a = test::data_matrix(c.file);
    const auto start = Clock::now();
    const Decision d = is_kpr(a);
    const double t = seconds_since(start);
    r.require(d.verdict == Verdict::Yes, std::string(c.file) + " is KPR");
    r.require(d.certificate && verify_certificate(a, *d.certificate), std::string(c.file) + " certificate verifies");
    const auto stated = check_partition(a, one_based(c.partition, static_cast<int>(a.cols())));
    r.require(stated && verify_certificate(a, *stated), std::string(c.file) + " stated partition passes");
    r.require(t < 1.0, std::string(c.file) + " under 1 s");
    std::ostringstream s;
    s << c.file << " " << (d.certificate ? d.certificate->partition.to_string() : "-") << " (" << t << " s);";
    r.note(s.str());
  }
}

void ac2(Report& r) {
  const QMatrix a = test::data_matrix("doubly_ipr_2x3.txt");
  const auto start = Clock::now();
  const Decision d = doubly_ipr(a);
  r.require(d.verdict == Verdict::Yes, "doubly IPR");
  r.require(!d.scalars.empty() && d.scalars[0].second == Rational(1, 2), "b = 1/2");
  r.require(d.certificate && d.assembled && verify_certificate(*d.assembled, *d.certificate), "certificate verifies");

  const auto t = doubly_ipr_template(a);
  std::uint64_t partitions = 0;
  enumerate_ordered_partitions(5, std::nullopt, [&](const OrderedPartition&) { return ++partitions > 0; });
  const ScalarUnion u = feasible_scalars_union(t);
  const double elapsed = seconds_since(start);
  const std::set<Rational> expected{Rational(1, 2), Rational(-2)};
  r.require(partitions == 541 && u.complete, "all 541 partitions enumerated");
  r.require(!u.unconstrained && u.points == expected, "scalar union is exactly {1/2, -2}");
  for (const auto& q : u.points) {
    if (expected.count(q)) continue;
    QVector b(1);
    b << q;
    bool certified = false;
    enumerate_ordered_partitions(5, std::nullopt, [&](const OrderedPartition& p) {
      certified = check_partition(t.assemble(b), p).has_value();
      if (certified) r.note("extra b = " + to_string(q) + " certified by " + p.to_string() + ";");
      return !certified;
    });
  }
  r.require(elapsed < 5.0, "under 5 s");
  std::ostringstream s;
  s << "union " << set_string(u.points) << " over " << partitions << " partitions (" << elapsed << " s)";
  r.note(s.str());
}

void ac3(Report& r) {
  const QMatrix a = make_matrix({{1, 0}, {0, 2}});
  const auto start = Clock::now();
  const Decision d = doubly_ipr(a);
  r.require(d.verdict == Verdict::No, "doubly IPR verdict is NO");

  // Independent exhaustive pass: no ordered partition admits a positive b.
  const auto t = doubly_ipr_template(a);
  std::uint64_t partitions = 0, feasible = 0;
  enumerate_ordered_partitions(4, std::nullopt, [&](const OrderedPartition& p) {
    ++partitions;
    if (feasible_positive(build_system(t, p))) ++feasible;
    return true;
  });
  r.require(partitions == 75 && feasible == 0, "75 partitions, none feasible");

  const std::uint64_t bound = std::uint64_t{1} << 16;
  const std::vector<QMatrix> pair{a, QMatrix(-identity(2))};
  const auto w = find_monochromatic_solution(pair, Colouring::start_parity(2), bound);
  r.require(!w, "no monochromatic (x, Ax) under start parity up to 2^16");
  const double elapsed = seconds_since(start);
  r.require(elapsed < 5.0, "under 5 s");
  std::ostringstream s;
  s << partitions << " partitions enumerated, oracle bound " << bound << " (" << elapsed << " s)";
  r.note(s.str());
}

void ac4(Report& r) {
  test::Random rng(2024);
  int tested = 0, failures = 0, attempts = 0;
  while (tested < 60 && attempts < 20000) {
    ++attempts;
    const QMatrix a = rng.integer_matrix(rng.integer(1, 3), rng.integer(1, 3), 4);
    if (zero_column_subset_exists(a)) continue;
    const IntegerBReport rep = integer_b_analysis(a);
    if (rep.decision.verdict != Verdict::Yes) continue;
    ++tested;
    const bool verified = verify_certificate(*rep.decision.assembled, *rep.decision.certificate);
    if (!rep.b_is_positive_integer || !rep.identity_holds || !verified) ++failures;
  }
  r.require(tested >= 50, "at least 50 doubly IPR matrices");
  r.require(failures == 0, "every b is a positive integer satisfying the row identity");
  r.note(std::to_string(tested) + " matrices, " + std::to_string(failures) + " failures");
}

void ac5(Report& r) {
  const std::vector<QMatrix> schur{make_matrix({{1, 1, -1}})};
  const auto start = Clock::now();
  r.require(verify_all_colourings(schur, 2, 5), "every 2-colouring of [1..5] has a solution");
  const auto w = search_witness_colouring(schur, 2, 4);
  const bool in_class = w && w->table.size() == 4 && w->table[0] == w->table[3] && w->table[1] == w->table[2] &&
                        w->table[0] != w->table[1];
  r.require(in_class, "witness colouring of [1..4] is {1,4}/{2,3}");

  // Exhaustive check over all 2^4 colourings: only that class avoids solutions.
  int avoiding = 0;
  bool only_class = true;
  for (unsigned bits = 0; bits < 16; ++bits) {
    std::vector<Colour> table;
    for (unsigned i = 0; i < 4; ++i) table.push_back((bits >> i) & 1);
    if (find_monochromatic_solution(schur, Colouring::table(table), 4)) continue;
    ++avoiding;
    only_class = only_class && table[0] == table[3] && table[1] == table[2] && table[0] != table[1];
  }
  r.require(avoiding == 2 && only_class, "exactly the two colourings of that class avoid solutions");
  const double elapsed = seconds_since(start);
  r.require(elapsed < 1.0, "under 1 s");
  std::ostringstream s;
  s << "witness";
  if (w)
    for (auto c : w->table) s << ' ' << c;
  s << " (" << elapsed << " s)";
  r.note(s.str());
}

// Rebuilds the scaled matrix from the reported scalars alone.
QMatrix reassemble(const std::string& kind, const std::vector<QMatrix>& inputs, const Decision& d) {
  if (kind == "kpr") return inputs[0];
  if (kind == "doubly-ipr") return hconcat({inputs[0], QMatrix(-d.scalars[0].second * identity(inputs[0].rows()))});
  if (kind == "ipr") {
    QMatrix scaled = inputs[0];
    for (Index j = 0; j < scaled.cols(); ++j) scaled.col(j) *= d.scalars[static_cast<std::size_t>(j)].second;
    return hconcat({scaled, QMatrix(-identity(scaled.rows()))});
  }
  std::vector<QMatrix> blocks{inputs[0]};
  for (std::size_t k = 1; k < inputs.size(); ++k) blocks.push_back(inputs[k] * d.scalars[k - 1].second);
  return hconcat(blocks);
}

void ac6(Report& r) {
  struct Case {
    std::string kind;
    std::vector<QMatrix> inputs;
  };
  std::vector<Case> cases;
  for (const auto& m : test::kpr_corpus()) {
    cases.push_back({"kpr", {m.matrix}});
    cases.push_back({"doubly-ipr", {m.matrix}});
    if (m.matrix.cols() <= 4) cases.push_back({"multiply", {m.matrix, m.matrix}});
  }
  for (const char* f : {"doubly_ipr_2x3.txt", "diag12.txt", "schur_image.txt", "vdw_image.txt", "rational_diag.txt", "x_and_2x.txt"}) {
    const QMatrix a = test::data_matrix(f);
    cases.push_back({"ipr", {a}});
    cases.push_back({"doubly-ipr", {a}});
  }
  cases.push_back({"multiply", {make_matrix({{1, 1}}), make_matrix({{-1}})}});
  cases.push_back({"multiply", {make_matrix({{1}}), make_matrix({{1}}), make_matrix({{-1}})}});
  test::Random rng(606);
  for (int i = 0; i < 40; ++i) cases.push_back({"doubly-ipr", {rng.integer_matrix(rng.integer(1, 2), rng.integer(1, 3), 3)}});

  int yes = 0, failures = 0;
  for (const auto& c : cases) {
    Decision d;
    if (c.kind == "kpr") d = is_kpr(c.inputs[0]);
    else if (c.kind == "doubly-ipr") d = doubly_ipr(c.inputs[0]);
    else if (c.kind == "ipr") d = is_ipr(c.inputs[0]);
    else d = multiply_kpr(c.inputs);
    if (d.verdict != Verdict::Yes) continue;
    ++yes;
    bool ok = d.certificate && d.assembled;
    for (const auto& [name, value] : d.scalars) ok = ok && value > 0;
    if (ok) {
      const QMatrix rebuilt = reassemble(c.kind, c.inputs, d);
      ok = rebuilt == *d.assembled && verify_certificate(rebuilt, *d.certificate);
      const auto back = certificate_from_json(to_json(*d.certificate), static_cast<int>(rebuilt.cols()));
      ok = ok && verify_certificate(rebuilt, back);
      const QMatrix g = first_entries_from_certificate(rebuilt, *d.certificate);
      ok = ok && is_zero(rebuilt * g) && is_first_entries_matrix(g, true);
    }
    if (!ok) ++failures;
  }
  r.require(yes >= 20, "at least 20 YES decisions");
  r.require(failures == 0, "every YES decision round-trips");
  r.note(std::to_string(yes) + " YES decisions of " + std::to_string(cases.size()) + ", " +
         std::to_string(failures) + " failures");
}

void ac7(Report& r) {
  test::Random rng(707);
  const int d = 8;
  std::vector<Rational> grid;
  {
    std::set<Rational> g;
    for (int n = 1; n <= d; ++n)
      for (int q = 1; q <= d; ++q) g.insert(Rational(n, q));
    grid.assign(g.begin(), g.end());
  }
  auto satisfies = [](const AffineSystem& s, const QVector& x) {
    for (int j = 0; j < s.variables; ++j)
      if (x(j) <= 0) return false;
    for (const auto& eq : s.equalities)
      if (eq.coeffs.dot(x) + eq.constant != 0) return false;
    return true;
  };
  int disagreements = 0, feasible = 0;
  const int systems = 250;
  for (int trial = 0; trial < systems; ++trial) {
    AffineSystem s;
    s.variables = static_cast<int>(rng.integer(1, 2));
    s.positive.assign(static_cast<std::size_t>(s.variables), true);
    const int rows = static_cast<int>(rng.integer(1, 2));
    for (int i = 0; i < rows; ++i) {
      QVector c(s.variables);
      for (int j = 0; j < s.variables; ++j) c(j) = rng.integer(-3, 3);
      s.equalities.push_back({c, Rational(rng.integer(-4, 4), rng.integer(1, 3))});
    }
    bool hit = false;
    QVector x(s.variables);
    for (const auto& a : grid) {
      x(0) = a;
      if (s.variables == 1) {
        hit = hit || satisfies(s, x);
        continue;
      }
      for (const auto& b : grid) {
        x(1) = b;
        hit = hit || satisfies(s, x);
      }
    }
    const auto result = solve_positive(s);
    if (const auto* sol = std::get_if<PositiveSolution>(&result)) {
      ++feasible;
      bool in_range = true;
      for (int j = 0; j < s.variables; ++j)
        in_range = in_range && numerator(sol->values(j)) <= d && denominator(sol->values(j)) <= d;
      if (!satisfies(s, sol->values) || (in_range && !hit)) ++disagreements;
    } else if (hit || !verify_farkas(s, std::get<FarkasCertificate>(result))) {
      ++disagreements;
    }
  }
  r.require(disagreements == 0, "engine agrees with grid search");
  r.note(std::to_string(systems) + " systems, " + std::to_string(feasible) + " feasible, " +
         std::to_string(disagreements) + " disagreements");
}

void ac8(Report& r) {
  test::Random rng(808);
  const auto corpus = test::kpr_corpus();
  int trials = 0, violations = 0;
  for (int i = 0; i < 120; ++i) {
    const auto& m = corpus[static_cast<std::size_t>(i) % corpus.size()];
    const auto order = rng.permutation(m.matrix.cols());
    QMatrix permuted(m.matrix.rows(), m.matrix.cols());
    for (Index j = 0; j < m.matrix.cols(); ++j) permuted.col(j) = m.matrix.col(order[static_cast<std::size_t>(j)]);
    const QMatrix transformed = rng.invertible(m.matrix.rows(), 3) * permuted * rng.nonzero_rational(6);
    ++trials;
    if ((is_kpr(transformed).verdict == Verdict::Yes) != m.kpr) ++violations;
  }
  const std::vector<std::vector<QMatrix>> tuples = {
      {make_matrix({{1, 1}}), make_matrix({{-1}})},
      {make_matrix({{1, 1}}), make_matrix({{2}}), make_matrix({{3}})},
      {make_matrix({{1, 0}, {0, 1}}), make_matrix({{-1, 0}, {0, -2}})},
      {make_matrix({{1, 1, -1}}), make_matrix({{1, 1, -1}})},
      {make_matrix({{1, -2}}), make_matrix({{1}})},
  };
  int scaled_trials = 0;
  for (const auto& tuple : tuples) {
    const Verdict base = multiply_kpr(tuple).verdict;
    for (int k = 0; k < 6; ++k) {
      auto scaled = tuple;
      for (auto& a : scaled) a *= Rational(rng.integer(1, 9), rng.integer(1, 9));
      ++scaled_trials;
      if (multiply_kpr(scaled).verdict != base) ++violations;
    }
  }
  r.require(trials >= 100, "at least 100 invariance trials");
  r.require(violations == 0, "no verdict changes");
  r.note(std::to_string(trials) + " is_kpr trials, " + std::to_string(scaled_trials) + " multiply rescalings, " +
         std::to_string(violations) + " violations");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Report&)>>> criteria = {
      {"AC1 classical matrices satisfy the columns condition", ac1},
      {"AC2 doubly IPR b = 1/2 and scalar union", ac2},
      {"AC3 diag(1,2) is not doubly IPR", ac3},
      {"AC4 integer b without zero-sum columns", ac4},
      {"AC5 schur oracle concordance", ac5},
      {"AC6 round-trip soundness", ac6},
      {"AC7 feasibility engine vs grid search", ac7},
      {"AC8 invariance", ac8},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    Report r;
    try {
      run(r);
    } catch (const std::exception& e) {
      r.require(false, std::string("exception: ") + e.what());
    }
    all = all && r.ok;
    std::cout << (r.ok ? "PASS " : "FAIL ") << name << ":" << r.notes.str() << std::endl;
  }
  return all ? 0 : 1;
}
