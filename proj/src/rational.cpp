#include "rado/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace rado {

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

bool is_integer_token(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Integer value{std::string(s)};
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view token) {
  const auto slash = token.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer_token(token))
      throw std::invalid_argument("malformed rational '" + std::string(token) + "'");
    return Rational(parse_integer(token));
  }
  const auto num = token.substr(0, slash);
  const auto den = token.substr(slash + 1);
  if (!is_integer_token(num) || den.empty() || den.front() == '-' || den.front() == '+' ||
      !is_integer_token(den))
    throw std::invalid_argument("malformed rational '" + std::string(token) + "'");
  const Integer d = parse_integer(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(token) + "'");
  return Rational(parse_integer(num), d);
}

QMatrix make_matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  const Index u = static_cast<Index>(rows.size());
  const Index v = u == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  QMatrix m(u, v);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != v) throw std::invalid_argument("ragged matrix literal");
    Index j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

QMatrix identity(Index n) {
  QMatrix m = QMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix hconcat(const std::vector<QMatrix>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("hconcat of no blocks");
  const Index u = blocks.front().rows();
  Index v = 0;
  for (const auto& b : blocks) {
    if (b.rows() != u) throw std::invalid_argument("hconcat: row counts differ");
    v += b.cols();
  }
  QMatrix out(u, v);
  Index at = 0;
  for (const auto& b : blocks) {
    out.middleCols(at, b.cols()) = b;
    at += b.cols();
  }
  return out;
}

}  // namespace rado
