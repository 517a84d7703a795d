#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "ginv/errors.hpp"
#include "ginv/matrix.hpp"

namespace ginv::io {

enum class Format { Csv, Json };

/// ".json" (any case) selects JSON, everything else CSV.
Format format_for_path(const std::filesystem::path& path);
std::optional<Format> parse_format(std::string_view name);
std::string to_string(Format format);

/// One row per line, comma-separated entries `a`, `a+bi`, `a-bi` or `bi`.
/// Blank space around an entry is ignored; trailing blank lines are allowed.
/// Throws ParseError with 1-based line and column.
ComplexMatrix parse_csv(std::string_view text);

/// {"rows": r, "cols": c, "data": [[{"re": x, "im": y}, ...], ...]}.
ComplexMatrix parse_json(std::string_view text);

/// Doubles are written so that parse_csv(write_csv(m)) == m bitwise,
/// signed zeros included.
std::string write_csv(const ComplexMatrix& m);
std::string write_json(const ComplexMatrix& m);

ComplexMatrix parse(std::string_view text, Format format);
std::string write(const ComplexMatrix& m, Format format);

/// "-" reads standard input / writes standard output.
ComplexMatrix read_matrix(const std::filesystem::path& path, std::optional<Format> format = {});
void write_matrix(const std::filesystem::path& path, const ComplexMatrix& m,
                  std::optional<Format> format = {});

}  // namespace ginv::io
