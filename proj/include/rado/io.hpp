#ifndef RADO_IO_HPP
#define RADO_IO_HPP

// Text and JSON formats. Rationals are always canonical strings ("p" or
// "p/q"); every column, block and integer index written out is 1-based.

#include "rado/columns_condition.hpp"
#include "rado/decisions.hpp"
#include "rado/oracle.hpp"
#include "rado/rational.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rado {

using Json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// One row per line, whitespace-separated entries, '#' comments and blank
/// lines skipped. Throws ParseError on ragged rows or bad entries.
QMatrix parse_matrix(std::string_view text);

/// Throws std::runtime_error when the file cannot be read, ParseError otherwise.
QMatrix read_matrix_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json to_json(const QMatrix& m);
QMatrix matrix_from_json(const Json& j);

/// {"partition": [[...]], "witnesses": [{"block", "column", "coeff"}...]}
Json to_json(const ColumnsConditionCertificate& cert);
/// Throws std::invalid_argument on schema violations or out-of-range indices.
ColumnsConditionCertificate certificate_from_json(const Json& j, int columns);

/// {"assembled", "certificate", "scalars", "scalars_unique", "verdict"}
Json to_json(const Decision& d);

Json to_json(const SolutionWitness& w);
Json to_json(const WitnessColouring& w);

/// One "x colour" line per integer in [1..N].
std::string colouring_text(const Colouring& c, std::uint64_t bound);
std::string colouring_text(const WitnessColouring& w);

/// Reads "x colour" lines with x running 1, 2, ... in order.
std::vector<Colour> parse_colouring_text(std::string_view text);

/// mod:M, gamma[:P], startparity:B or table:FILE. Throws std::invalid_argument.
Colouring parse_colouring_spec(std::string_view spec);

}  // namespace rado

#endif  // RADO_IO_HPP
