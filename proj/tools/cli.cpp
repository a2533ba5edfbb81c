#include "cli.hpp"

#include "rado/decisions.hpp"
#include "rado/io.hpp"
#include "rado/oracle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>

namespace rado::cli {

namespace {

struct Globals {
  std::uint64_t cap = 10'000'000;
  unsigned threads = 1;
  bool json = false;

  SearchOptions options() const { return {cap, threads}; }
};

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Yes: return kHolds;
    case Verdict::No: return kFails;
    case Verdict::Undecided: return kUndecided;
  }
  return kUndecided;
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

void print_matrix(std::ostream& out, const QMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << to_string(m(i, j));
    out << '\n';
  }
}

int report(const Decision& d, const Globals& g, std::ostream& out) {
  if (g.json) {
    print_json(out, to_json(d));
    return exit_code(d.verdict);
  }
  out << to_string(d.verdict);
  if (d.verdict == Verdict::No) out << " (all partitions rejected after " << d.steps << " block tests)";
  if (d.verdict == Verdict::Undecided) out << " (cap of " << g.cap << " block tests reached)";
  out << '\n';
  for (const auto& [name, value] : d.scalars) out << name << " = " << to_string(value) << '\n';
  if (!d.scalars.empty() && !d.scalars_unique) out << "(scalars are one choice from a continuum)\n";
  if (d.certificate) out << "partition: " << d.certificate->partition.to_string() << '\n';
  return exit_code(d.verdict);
}

ColumnsConditionCertificate load_certificate(const std::string& path, int columns) {
  Json j = Json::parse(read_text_file(path));
  if (j.is_object() && j.contains("verdict")) {
    if (j.at("certificate").is_null()) throw std::invalid_argument("decision carries no certificate");
    j = j.at("certificate");
  }
  return certificate_from_json(j, columns);
}

std::vector<QMatrix> load_matrices(const std::vector<std::string>& files) {
  std::vector<QMatrix> out;
  for (const auto& f : files) out.push_back(read_matrix_file(f));
  return out;
}

struct OracleArgs {
  std::vector<std::string> files;
  std::string colouring;
  std::uint64_t bound = 0;
  unsigned colours = 2;
  bool exhaustive = false;
};

int oracle_solve(const OracleArgs& a, const Globals& g, std::ostream& out) {
  const auto matrices = load_matrices(a.files);
  const Colouring c = parse_colouring_spec(a.colouring);
  auto w = find_monochromatic_solution(matrices, c, a.bound);
  if (w && !verify_witness(matrices, c, *w)) throw std::logic_error("solution failed its recheck");
  if (g.json) {
    print_json(out, {{"bound", a.bound}, {"colouring", c.describe()}, {"solution", w ? to_json(*w) : Json(nullptr)}});
  } else if (w) {
    out << "monochromatic solution under " << c.describe() << ":\n";
    for (std::size_t t = 0; t < w->vectors.size(); ++t) {
      out << "x" << t + 1 << " =";
      for (auto x : w->vectors[t]) out << ' ' << x;
      out << "  (colour " << w->colours[t] << ")\n";
    }
  } else {
    out << "no monochromatic solution with entries <= " << a.bound << " under " << c.describe() << '\n';
  }
  return w ? kHolds : kFails;
}

// Smallest N <= bound at which every r-colouring of [1..N] has a solution.
int oracle_sweep(const OracleArgs& a, const Globals& g, std::ostream& out) {
  const auto matrices = load_matrices(a.files);
  std::optional<std::uint64_t> threshold;
  std::optional<WitnessColouring> last;
  for (std::uint64_t n = 1; n <= a.bound && !threshold; ++n) {
    if (a.exhaustive) {
      if (verify_all_colourings(matrices, a.colours, n)) threshold = n;
      continue;
    }
    auto w = search_witness_colouring(matrices, a.colours, n);
    if (w)
      last = std::move(w);
    else
      threshold = n;
  }
  if (g.json) {
    print_json(out, {{"bound", a.bound},
                     {"colours", a.colours},
                     {"threshold", threshold ? Json(*threshold) : Json(nullptr)},
                     {"witness", last ? to_json(*last) : Json(nullptr)}});
  } else if (threshold) {
    out << "every " << a.colours << "-colouring of [1.." << *threshold << "] has a monochromatic solution\n";
    if (last) out << "colouring of [1.." << last->bound << "] avoiding one:\n" << colouring_text(*last);
  } else {
    out << "some " << a.colours << "-colouring of [1.." << a.bound << "] avoids monochromatic solutions\n";
    if (last) out << colouring_text(*last);
  }
  return threshold ? kHolds : kFails;
}

// Monochromatic x with A x monochromatic: solutions of (A -I)(x; y) = 0.
int oracle_falsify(const OracleArgs& a, const Globals& g, std::ostream& out) {
  if (a.files.size() != 1) throw std::invalid_argument("falsify takes exactly one matrix");
  const QMatrix m = read_matrix_file(a.files.front());
  const std::vector<QMatrix> pair{m, QMatrix(-identity(m.rows()))};
  const Colouring c = parse_colouring_spec(a.colouring);
  auto w = find_monochromatic_solution(pair, c, a.bound);
  if (w && !verify_witness(pair, c, *w)) throw std::logic_error("solution failed its recheck");
  if (g.json) {
    print_json(out, {{"bound", a.bound}, {"colouring", c.describe()}, {"solution", w ? to_json(*w) : Json(nullptr)}});
  } else if (w) {
    out << "monochromatic pair under " << c.describe() << ": x =";
    for (auto x : w->vectors[0]) out << ' ' << x;
    out << ", Ax =";
    for (auto y : w->vectors[1]) out << ' ' << y;
    out << '\n';
  } else {
    out << "falsified up to " << a.bound << ": no x with x and Ax each monochromatic under " << c.describe() << '\n';
  }
  return w ? kHolds : kFails;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partition regularity of rational matrices", "rado"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--cap", g.cap, "Budget of tested partition blocks before UNDECIDED")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads for the partition search")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  app.add_flag("--json", g.json, "Canonical JSON output");

  std::function<int()> action;
  std::string file, file_b, cert_file;
  std::vector<std::string> files;

  auto* kpr = app.add_subcommand("kpr", "Kernel partition regularity (columns condition)");
  kpr->add_option("FILE", file)->required()->check(CLI::ExistingFile);
  kpr->callback([&] { action = [&] { return report(is_kpr(read_matrix_file(file), g.options()), g, out); }; });

  auto* ipr = app.add_subcommand("ipr", "Image partition regularity");
  ipr->add_option("FILE", file)->required()->check(CLI::ExistingFile);
  ipr->callback([&] { action = [&] { return report(is_ipr(read_matrix_file(file), g.options()), g, out); }; });

  auto* dipr = app.add_subcommand("doubly-ipr", "Monochromatic x with Ax monochromatic");
  dipr->add_option("FILE", file)->required()->check(CLI::ExistingFile);
  dipr->callback([&] { action = [&] { return report(doubly_ipr(read_matrix_file(file), g.options()), g, out); }; });

  auto* dkpr = app.add_subcommand("doubly-kpr", "Ax = By with x, y monochromatic");
  dkpr->add_option("FILE_A", file)->required()->check(CLI::ExistingFile);
  dkpr->add_option("FILE_B", file_b)->required()->check(CLI::ExistingFile);
  dkpr->callback([&] {
    action = [&] {
      return report(doubly_kpr(read_matrix_file(file), read_matrix_file(file_b), g.options()), g, out);
    };
  });

  auto* mkpr = app.add_subcommand("multiply-kpr", "sum A_t x_t = 0 with each x_t monochromatic");
  mkpr->add_option("FILES", files)->required()->expected(2, -1)->check(CLI::ExistingFile);
  mkpr->callback([&] { action = [&] { return report(multiply_kpr(load_matrices(files), g.options()), g, out); }; });

  auto* certify = app.add_subcommand("certify", "Verify a columns-condition certificate");
  certify->add_option("FILE", file)->required()->check(CLI::ExistingFile);
  certify->add_option("CERT", cert_file)->required()->check(CLI::ExistingFile);
  certify->callback([&] {
    action = [&] {
      const QMatrix a = read_matrix_file(file);
      const bool ok = verify_certificate(a, load_certificate(cert_file, static_cast<int>(a.cols())));
      if (g.json)
        print_json(out, {{"verified", ok}});
      else
        out << (ok ? "VERIFIED" : "REJECTED") << '\n';
      return ok ? kHolds : kFails;
    };
  });

  auto* first = app.add_subcommand("first-entries", "First-entries matrix G with A G = 0 from a certificate");
  first->add_option("FILE", file)->required()->check(CLI::ExistingFile);
  first->add_option("CERT", cert_file)->required()->check(CLI::ExistingFile);
  first->callback([&] {
    action = [&] {
      const QMatrix a = read_matrix_file(file);
      const auto cert = load_certificate(cert_file, static_cast<int>(a.cols()));
      if (!verify_certificate(a, cert)) {
        err << "certificate does not verify against " << file << '\n';
        return int{kFails};
      }
      const QMatrix gm = first_entries_from_certificate(a, cert);
      if (g.json)
        print_json(out, to_json(gm));
      else
        print_matrix(out, gm);
      return int{kHolds};
    };
  });

  auto* scalars = app.add_subcommand("scalars", "Every b for which some partition certifies (A -bI)");
  scalars->add_option("FILE", file)->required()->check(CLI::ExistingFile);
  scalars->callback([&] {
    action = [&] {
      const auto u = feasible_scalars_union(doubly_ipr_template(read_matrix_file(file)), g.cap);
      if (g.json) {
        Json points = Json::array();
        for (const auto& q : u.points) points.push_back(to_json(q));
        print_json(out, {{"complete", u.complete}, {"points", std::move(points)}, {"unconstrained", u.unconstrained}});
      } else {
        out << "b in {";
        bool comma = false;
        for (const auto& q : u.points) {
          out << (comma ? ", " : "") << to_string(q);
          comma = true;
        }
        out << "}";
        if (u.unconstrained) out << " or any nonzero b";
        out << (u.complete ? "" : " (partial: cap reached)") << '\n';
      }
      return int{u.complete ? kHolds : kUndecided};
    };
  });

  auto* oracle = app.add_subcommand("oracle", "Finite colouring experiments");
  oracle->require_subcommand(1);
  OracleArgs oa;
  auto add_oracle = [&](const char* name, const char* help, bool needs_colouring, int (*fn)(const OracleArgs&, const Globals&, std::ostream&)) {
    auto* sub = oracle->add_subcommand(name, help);
    sub->add_option("FILES", oa.files)->required()->check(CLI::ExistingFile);
    auto* c = sub->add_option("--colouring", oa.colouring, "mod:M | gamma[:P] | startparity:B | table:FILE");
    if (needs_colouring) c->required();
    sub->add_option("--bound", oa.bound, "Largest integer considered")->required()->check(CLI::PositiveNumber);
    sub->add_option("--colours", oa.colours, "Number of colours")->capture_default_str()->check(CLI::Range(1u, 64u));
    sub->add_flag("--exhaustive", oa.exhaustive, "Enumerate all colourings instead of backtracking");
    sub->callback([&, fn] { action = [&, fn] { return fn(oa, g, out); }; });
  };
  add_oracle("solve", "Find a monochromatic solution of sum A_t x_t = 0", true, oracle_solve);
  add_oracle("sweep", "Smallest N where every colouring of [1..N] has a solution", false, oracle_sweep);
  add_oracle("falsify", "Search for monochromatic x with Ax monochromatic", true, oracle_falsify);

  auto* colour = oracle->add_subcommand("colour", "Print a colouring of [1..N] as \"x colour\" lines");
  colour->add_option("--colouring", oa.colouring)->required();
  colour->add_option("--bound", oa.bound)->required()->check(CLI::PositiveNumber);
  colour->callback([&] {
    action = [&] {
      out << colouring_text(parse_colouring_spec(oa.colouring), oa.bound);
      return int{kHolds};
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kHolds : kUsage;
  }

  try {
    return action();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace rado::cli
