#ifndef RADO_TESTS_SUPPORT_HPP
#define RADO_TESTS_SUPPORT_HPP

#include "rado/io.hpp"
#include "rado/rational.hpp"

#include <random>
#include <string>
#include <vector>

namespace rado::test {

inline std::string data_path(const std::string& name) { return std::string(RADO_TEST_DATA_DIR) + "/" + name; }

inline QMatrix data_matrix(const std::string& name) { return read_matrix_file(data_path(name)); }

struct Named {
  std::string name;
  QMatrix matrix;
  bool kpr;  // expected verdict, derived independently of the search
};

// Matrices with known columns-condition verdicts.
inline std::vector<Named> kpr_corpus() {
  return {
      {"schur", make_matrix({{1, 1, -1}}), true},
      {"vdw", data_matrix("vdw.txt"), true},
      {"ext47", data_matrix("ext47.txt"), true},
      {"x_eq_2y", make_matrix({{1, -2}}), false},
      {"positive_pair", make_matrix({{1, 1}}), false},
      {"x_plus_y_eq_3z", make_matrix({{1, 1, -3}}), false},
      {"x_minus_y", make_matrix({{1, -1}}), true},
      {"x_plus_2y_eq_3z", make_matrix({{1, 2, -3}}), true},
      {"two_row", make_matrix({{1, -1, 0}, {0, 1, -1}}), true},
      {"zero_row", make_matrix({{0, 0}}), true},
      {"diag12_pair", make_matrix({{1, 0, -1, 0}, {0, 2, 0, -1}}), false},
      {"rational_sum", make_matrix({{Rational(1, 2), Rational(1, 2), -1}}), true},
  };
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }

  Rational nonzero_rational(std::int64_t bound) {
    std::int64_t n = 0;
    while (n == 0) n = integer(-bound, bound);
    return Rational(n, integer(1, bound));
  }

  QMatrix integer_matrix(Index rows, Index cols, std::int64_t bound) {
    QMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) m(i, j) = integer(-bound, bound);
    return m;
  }

  // Random invertible matrix: unit lower times unit upper triangular, row-permuted.
  QMatrix invertible(Index n, std::int64_t bound) {
    QMatrix l = identity(n), u = identity(n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < i; ++j) {
        l(i, j) = integer(-bound, bound);
        u(j, i) = integer(-bound, bound);
      }
    for (Index i = 0; i < n; ++i) u(i, i) = nonzero_rational(bound);
    QMatrix m = l * u;
    std::vector<Index> order(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::shuffle(order.begin(), order.end(), engine_);
    QMatrix p(n, n);
    for (Index i = 0; i < n; ++i) p.row(i) = m.row(order[static_cast<std::size_t>(i)]);
    return p;
  }

  std::vector<Index> permutation(Index n) {
    std::vector<Index> order(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::shuffle(order.begin(), order.end(), engine_);
    return order;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rado::test

#endif  // RADO_TESTS_SUPPORT_HPP
