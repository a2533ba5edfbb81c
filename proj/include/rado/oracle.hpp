#ifndef RADO_ORACLE_HPP
#define RADO_ORACLE_HPP

// Finite-scale colouring oracle: explicit colourings of the positive
// integers, bounded search for monochromatic solutions, and exhaustive or
// backtracking search over all r-colourings of [1..N].
//
// Negative results only speak about [1..N]; they are evidence, not proofs.

#include "rado/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rado {

using Colour = std::uint64_t;

inline constexpr std::uint64_t kDefaultGammaBase = 10;

/// Largest t with p^t <= x. Requires x >= 1 and p >= 2.
std::uint64_t g_p(std::uint64_t x, std::uint64_t p);

/// Base-p digit of x at position j (0 for positions above the leading one).
std::uint64_t base_digit(std::uint64_t x, std::uint64_t p, std::int64_t j);

struct GammaColour {
  std::uint64_t parity;   // g_p(x) mod 2
  std::uint64_t leading;  // digit at g_p(x)
  std::uint64_t second;   // digit at g_p(x) - 1, or 0 when x < p

  bool operator==(const GammaColour&) const = default;
};

GammaColour gamma_p_colour(std::uint64_t x, std::uint64_t p);

class Colouring {
 public:
  enum class Kind { Mod, Gamma, StartParity, Table };

  /// x mod m.
  static Colouring modulo(std::uint64_t m);
  /// Start position parity and two leading digits in base p.
  static Colouring gamma(std::uint64_t p = kDefaultGammaBase);
  /// Parity of the start position of x in the given base.
  static Colouring start_parity(std::uint64_t base);
  /// colours[i] is the colour of i + 1.
  static Colouring table(std::vector<Colour> colours);

  /// psi(x) = phi(n x).
  Colouring dilated(std::uint64_t n) const;

  Kind kind() const { return kind_; }
  /// Largest x this colouring is defined on, if finite.
  std::optional<std::uint64_t> domain() const;
  Colour operator()(std::uint64_t x) const;
  std::string describe() const;

 private:
  Colouring(Kind kind, std::uint64_t param) : kind_(kind), param_(param) {}

  Kind kind_;
  std::uint64_t param_;
  std::uint64_t scale_ = 1;
  std::vector<Colour> table_;
};

/// Monochromatic x_1..x_k (entries in [1..N]) with sum A_t x_t = 0.
struct SolutionWitness {
  std::vector<std::vector<std::uint64_t>> vectors;
  std::vector<Colour> colours;
};

/// A colouring of [1..N] admitting no monochromatic solution in [1..N].
struct WitnessColouring {
  std::uint64_t bound;
  unsigned colours;
  std::vector<Colour> table;  // table[i] colours i + 1
};

/// Every solution with entries in [1..N], as concatenated vectors. Solutions
/// are enumerated through the free coordinates of the kernel, so the cost is
/// N^(nullity), not N^(columns).
std::vector<std::vector<std::uint64_t>> bounded_solutions(const std::vector<QMatrix>& matrices, std::uint64_t bound);

/// First solution in [1..N] with each x_t monochromatic, or nullopt.
std::optional<SolutionWitness> find_monochromatic_solution(const std::vector<QMatrix>& matrices,
                                                           const Colouring& colouring, std::uint64_t bound);

/// Exact recheck of a witness: the equation and the colours.
bool verify_witness(const std::vector<QMatrix>& matrices, const Colouring& colouring, const SolutionWitness& w);

/// Whether every r-colouring of [1..N] has a bounded monochromatic solution.
/// Exhaustive over all r^N colourings; rejects r^N > 10^7.
bool verify_all_colourings(const std::vector<QMatrix>& matrices, unsigned r, std::uint64_t bound);

/// Backtracking search (colour of 1 fixed, new colours introduced in order)
/// for a colouring of [1..N] with no bounded monochromatic solution.
std::optional<WitnessColouring> search_witness_colouring(const std::vector<QMatrix>& matrices, unsigned r,
                                                         std::uint64_t bound);

/// True when the solution y found under psi(x) = phi(n x) maps to n y, a
/// solution monochromatic under phi; vacuously true if none is found.
bool dilation_check(const QMatrix& a, const Colouring& phi, std::uint64_t n, std::uint64_t bound);

}  // namespace rado

#endif  // RADO_ORACLE_HPP
