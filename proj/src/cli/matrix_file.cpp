#include "ginv/matrix_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace ginv::io {

namespace {

using nlohmann::json;

bool is_blank(char c) { return c == ' ' || c == '\t'; }

std::string_view trim(std::string_view s, std::size_t& offset) {
    offset = 0;
    while (offset < s.size() && is_blank(s[offset])) ++offset;
    std::size_t end = s.size();
    while (end > offset && is_blank(s[end - 1])) --end;
    return s.substr(offset, end - offset);
}

// Parses an unsigned-or-negative decimal starting at `first`; `first` is advanced.
double number(const char*& first, const char* last, std::size_t line, std::size_t column) {
    if (first == last || *first == '+')
        throw ParseError("expected a number", line, column);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
    if (ec == std::errc::result_out_of_range)
        throw ParseError("number out of range", line, column);
    if (ec != std::errc{}) throw ParseError("expected a number", line, column);
    if (!std::isfinite(value)) throw ParseError("entries must be finite", line, column);
    first = ptr;
    return value;
}

Complex entry(std::string_view s, std::size_t line, std::size_t column) {
    if (s.empty()) throw ParseError("empty entry", line, column);
    const char* const begin = s.data();
    const char* const end = begin + s.size();
    const char* p = begin;
    const auto col = [&](const char* at) { return column + static_cast<std::size_t>(at - begin); };

    const double first = number(p, end, line, col(p));
    if (p == end) return {first, 0.0};
    if (*p == 'i' && p + 1 == end) return {0.0, first};
    if (*p != '+' && *p != '-')
        throw ParseError(std::string("unexpected character '") + *p + "'", line, col(p));
    const bool negative = *p == '-';
    ++p;
    if (p != end && (*p == '+' || *p == '-'))
        throw ParseError("repeated sign", line, col(p));
    const double second = number(p, end, line, col(p));
    if (p == end || *p != 'i') throw ParseError("imaginary part must end in 'i'", line, col(p));
    if (p + 1 != end) throw ParseError("trailing characters after 'i'", line, col(p + 1));
    return {first, negative ? -second : second};
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

std::string format_entry(Complex z) {
    const double im = z.imag();
    std::string s = format_double(z.real());
    if (im == 0.0 && !std::signbit(im)) return s;
    s += std::signbit(im) ? '-' : '+';
    s += format_double(std::fabs(im));
    s += 'i';
    return s;
}

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

std::size_t dimension(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing \"") + key + "\"", 0, 0);
    if (!it->is_number_unsigned() || it->get<std::size_t>() == 0)
        throw ParseError(std::string("\"") + key + "\" must be a positive integer", 0, 0);
    return it->get<std::size_t>();
}

double part(const json& cell, const char* key, std::size_t i, std::size_t j) {
    const std::string where = "data[" + std::to_string(i) + "][" + std::to_string(j) + "]";
    const auto it = cell.find(key);
    if (it == cell.end()) throw ParseError(where + ": missing \"" + key + "\"", 0, 0);
    if (!it->is_number()) throw ParseError(where + "." + key + " must be a number", 0, 0);
    const double v = it->get<double>();
    if (!std::isfinite(v)) throw ParseError(where + "." + key + " must be finite", 0, 0);
    return v;
}

}  // namespace

Format format_for_path(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".json" ? Format::Json : Format::Csv;
}

std::optional<Format> parse_format(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    return std::nullopt;
}

std::string to_string(Format format) { return format == Format::Json ? "json" : "csv"; }

ComplexMatrix parse_csv(std::string_view text) {
    std::vector<Complex> entries;
    std::size_t cols = 0, rows = 0;
    std::size_t line_no = 0;
    std::size_t blank_line = 0;  // first blank line seen after data, if any
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t stop = text.find('\n', start);
        if (stop == std::string_view::npos) stop = text.size();
        std::string_view line = text.substr(start, stop - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        start = stop + 1;

        std::size_t lead = 0;
        if (trim(line, lead).empty()) {
            if (blank_line == 0) blank_line = line_no;
            continue;
        }
        if (blank_line != 0) throw ParseError("empty row", blank_line, 1);

        std::size_t count = 0, pos = 0;
        for (;;) {
            const std::size_t comma = line.find(',', pos);
            const std::string_view raw =
                line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
            std::size_t offset = 0;
            const std::string_view cell = trim(raw, offset);
            entries.push_back(entry(cell, line_no, pos + offset + 1));
            ++count;
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        if (rows == 0) {
            cols = count;
        } else if (count != cols) {
            throw ParseError("row has " + std::to_string(count) + " entries, expected " +
                                 std::to_string(cols),
                             line_no, 1);
        }
        ++rows;
    }
    if (rows == 0) throw ParseError("no matrix rows", 1, 1);
    return ComplexMatrix(rows, cols, std::move(entries));
}

ComplexMatrix parse_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, column] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
        std::string what = e.what();
        const std::size_t colon = what.rfind(": ");
        if (colon != std::string::npos) what = what.substr(colon + 2);
        throw ParseError("invalid JSON: " + what, line, column);
    }
    if (!j.is_object()) throw ParseError("top level must be an object", 0, 0);
    const std::size_t rows = dimension(j, "rows");
    const std::size_t cols = dimension(j, "cols");
    const auto data = j.find("data");
    if (data == j.end()) throw ParseError("missing \"data\"", 0, 0);
    if (!data->is_array() || data->size() != rows)
        throw ParseError("\"data\" must be an array of " + std::to_string(rows) + " rows", 0, 0);

    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = (*data)[i];
        if (!row.is_array() || row.size() != cols)
            throw ParseError("data[" + std::to_string(i) + "] must be an array of " +
                                 std::to_string(cols) + " entries",
                             0, 0);
        for (std::size_t k = 0; k < cols; ++k) {
            const json& cell = row[k];
            if (!cell.is_object())
                throw ParseError("data[" + std::to_string(i) + "][" + std::to_string(k) +
                                     "] must be an object {\"re\", \"im\"}",
                                 0, 0);
            entries.emplace_back(part(cell, "re", i, k), part(cell, "im", i, k));
        }
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

std::string write_csv(const ComplexMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) out += ',';
            out += format_entry(m(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string write_json(const ComplexMatrix& m) {
    json data = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back({{"re", m(i, j).real()}, {"im", m(i, j).imag()}});
        data.push_back(std::move(row));
    }
    json j = {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
    return j.dump() + "\n";
}

ComplexMatrix parse(std::string_view text, Format format) {
    return format == Format::Json ? parse_json(text) : parse_csv(text);
}

std::string write(const ComplexMatrix& m, Format format) {
    return format == Format::Json ? write_json(m) : write_csv(m);
}

ComplexMatrix read_matrix(const std::filesystem::path& path, std::optional<Format> format) {
    const Format f = format.value_or(format_for_path(path));
    if (path == "-") {
        const std::string text{std::istreambuf_iterator<char>(std::cin), {}};
        return parse(text, f);
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), f);
}

void write_matrix(const std::filesystem::path& path, const ComplexMatrix& m,
                  std::optional<Format> format) {
    const Format f = format.value_or(format_for_path(path));
    if (path == "-") {
        std::cout << write(m, f);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write " + path.string());
    out << write(m, f);
    if (!out) throw FileError("write failed: " + path.string());
}

}  // namespace ginv::io
