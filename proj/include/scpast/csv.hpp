#pragma once

#include "scpast/linalg.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace scpast::csv {

/// A numeric table: one mandatory header row, then rows of finite numbers.
struct Table {
  std::vector<std::string> header;
  Matrix values;
};

/// RFC-4180 style fields (optional double quotes, "" escapes), '.' decimal
/// separator, LF or CRLF line ends. Throws CsvError with the 1-based line
/// number on missing header, ragged rows or non-finite entries.
Table parse(std::string_view text);

/// Throws IoError if the file cannot be opened.
Table read(const std::filesystem::path& path);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// Quotes a field when it contains a comma, quote or line break.
std::string quote(std::string_view field);

void write(std::ostream& out, const std::vector<std::string>& header, const Matrix& values);

/// Writes atomically enough for CLI use; throws IoError on failure.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace scpast::csv
