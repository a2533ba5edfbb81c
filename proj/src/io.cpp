#include "rado/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace rado {

namespace {

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

// Calls f(line_number, tokens) for every non-blank, non-comment line.
template <typename F>
void for_each_data_line(std::string_view text, F&& f) {
  int number = 0;
  while (!text.empty()) {
    ++number;
    const std::size_t end = text.find('\n');
    std::string_view line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    auto tokens = split_whitespace(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    f(number, tokens);
  }
}

std::uint64_t parse_unsigned(std::string_view s, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::invalid_argument(std::string("bad ") + what);
  return value;
}

int one_based_index(const Json& j, int limit, const char* what) {
  if (!j.is_number_integer()) throw std::invalid_argument(std::string(what) + " must be an integer");
  const auto i = j.get<std::int64_t>();
  if (i < 1 || i > limit) throw std::invalid_argument(std::string(what) + " out of range");
  return static_cast<int>(i - 1);
}

}  // namespace

QMatrix parse_matrix(std::string_view text) {
  std::vector<std::vector<Rational>> rows;
  for_each_data_line(text, [&](int line, const std::vector<std::string_view>& tokens) {
    if (!rows.empty() && tokens.size() != rows.front().size())
      throw ParseError(line, "expected " + std::to_string(rows.front().size()) + " entries, found " +
                                 std::to_string(tokens.size()));
    std::vector<Rational> row;
    for (auto token : tokens) {
      try {
        row.push_back(parse_rational(token));
      } catch (const std::invalid_argument& e) {
        throw ParseError(line, e.what());
      }
    }
    rows.push_back(std::move(row));
  });
  if (rows.empty()) throw ParseError(0, "no matrix rows");
  QMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return m;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

QMatrix read_matrix_file(const std::filesystem::path& path) { return parse_matrix(read_text_file(path)); }

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw std::invalid_argument("rational must be a \"p/q\" string or an integer");
}

Json to_json(const QMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

QMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) throw std::invalid_argument("matrix must be an array of rows");
  const std::size_t cols = j.front().size();
  QMatrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw std::invalid_argument("ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) m(static_cast<Index>(i), static_cast<Index>(k)) = rational_from_json(j[i][k]);
  }
  return m;
}

Json to_json(const ColumnsConditionCertificate& cert) {
  Json partition = Json::array();
  for (const auto& block : cert.partition.blocks()) {
    Json b = Json::array();
    for (int c : block) b.push_back(c + 1);
    partition.push_back(std::move(b));
  }
  Json witnesses = Json::array();
  for (std::size_t t = 0; t < cert.witnesses.size(); ++t)
    for (const auto& w : cert.witnesses[t])
      witnesses.push_back({{"block", t + 1}, {"column", w.column + 1}, {"coeff", to_json(w.coeff)}});
  return {{"partition", std::move(partition)}, {"witnesses", std::move(witnesses)}};
}

ColumnsConditionCertificate certificate_from_json(const Json& j, int columns) {
  if (!j.is_object() || !j.contains("partition")) throw std::invalid_argument("certificate needs a \"partition\"");
  const Json& p = j.at("partition");
  if (!p.is_array()) throw std::invalid_argument("partition must be an array of blocks");
  std::vector<std::vector<int>> blocks;
  for (const Json& b : p) {
    if (!b.is_array()) throw std::invalid_argument("partition block must be an array");
    std::vector<int> block;
    for (const Json& c : b) block.push_back(one_based_index(c, columns, "column"));
    blocks.push_back(std::move(block));
  }
  ColumnsConditionCertificate cert{OrderedPartition(std::move(blocks), columns), {}};
  cert.witnesses.resize(cert.partition.size());
  if (j.contains("witnesses")) {
    const Json& ws = j.at("witnesses");
    if (!ws.is_array()) throw std::invalid_argument("witnesses must be an array");
    for (const Json& w : ws) {
      if (!w.is_object() || !w.contains("block") || !w.contains("column") || !w.contains("coeff"))
        throw std::invalid_argument("witness needs \"block\", \"column\" and \"coeff\"");
      const int t = one_based_index(w.at("block"), static_cast<int>(cert.partition.size()), "block");
      cert.witnesses[static_cast<std::size_t>(t)].push_back(
          Witness{one_based_index(w.at("column"), columns, "column"), rational_from_json(w.at("coeff"))});
    }
  }
  return cert;
}

Json to_json(const Decision& d) {
  Json scalars = Json::object();
  for (const auto& [name, value] : d.scalars) scalars[name] = to_json(value);
  return {{"verdict", to_string(d.verdict)},
          {"scalars", std::move(scalars)},
          {"scalars_unique", d.scalars_unique},
          {"certificate", d.certificate ? to_json(*d.certificate) : Json(nullptr)},
          {"assembled", d.assembled ? to_json(*d.assembled) : Json(nullptr)}};
}

Json to_json(const SolutionWitness& w) {
  return {{"vectors", w.vectors}, {"colours", w.colours}};
}

Json to_json(const WitnessColouring& w) {
  return {{"bound", w.bound}, {"colours", w.colours}, {"table", w.table}};
}

std::string colouring_text(const Colouring& c, std::uint64_t bound) {
  std::string out;
  for (std::uint64_t x = 1; x <= bound; ++x) out += std::to_string(x) + ' ' + std::to_string(c(x)) + '\n';
  return out;
}

std::string colouring_text(const WitnessColouring& w) {
  std::string out;
  for (std::size_t i = 0; i < w.table.size(); ++i) out += std::to_string(i + 1) + ' ' + std::to_string(w.table[i]) + '\n';
  return out;
}

std::vector<Colour> parse_colouring_text(std::string_view text) {
  std::vector<Colour> table;
  for_each_data_line(text, [&](int line, const std::vector<std::string_view>& tokens) {
    if (tokens.size() != 2) throw ParseError(line, "expected \"x colour\"");
    try {
      if (parse_unsigned(tokens[0], "integer") != table.size() + 1)
        throw ParseError(line, "expected x = " + std::to_string(table.size() + 1));
      table.push_back(parse_unsigned(tokens[1], "colour"));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
  });
  if (table.empty()) throw ParseError(0, "empty colouring table");
  return table;
}

Colouring parse_colouring_spec(std::string_view spec) {
  if (spec == "gamma") return Colouring::gamma();
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("colouring must look like kind:param");
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view param = spec.substr(colon + 1);
  if (kind == "table") return Colouring::table(parse_colouring_text(read_text_file(std::string(param))));
  const std::uint64_t value = parse_unsigned(param, "colouring parameter");
  if (kind == "mod") return Colouring::modulo(value);
  if (kind == "gamma") return Colouring::gamma(value);
  if (kind == "startparity") return Colouring::start_parity(value);
  throw std::invalid_argument("unknown colouring kind \"" + std::string(kind) + "\"");
}

}  // namespace rado
