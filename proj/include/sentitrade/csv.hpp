#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sentitrade::csv {

/// One parsed record and the 1-based physical line it started on.
struct Record {
    std::vector<std::string> fields;
    std::size_t line = 0;
};

/// Streaming RFC-4180 reader: quoted fields may contain commas, doubled quotes
/// and line breaks. A trailing CR before LF is dropped.
class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    std::optional<Record> next();

private:
    std::istream& in_;
    std::size_t line_ = 1;
};

/// Reads the whole file; throws sentitrade::Error when it cannot be opened.
std::vector<Record> read_file(const std::filesystem::path& path);

/// Checks that `header` matches `expected` column-for-column.
void require_header(const Record& header, const std::vector<std::string_view>& expected,
                    const std::filesystem::path& path);

/// Quotes a field only when it contains a delimiter, quote or line break.
std::string escape(std::string_view field);

/// Joins already-rendered fields into one CSV line (no newline).
std::string join(const std::vector<std::string>& fields);

}  // namespace sentitrade::csv
