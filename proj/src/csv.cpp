#include "sentitrade/csv.hpp"

#include <fstream>

#include "sentitrade/common.hpp"

namespace sentitrade::csv {

std::optional<Record> Reader::next() {
    Record rec;
    std::string field;
    bool in_quotes = false;
    bool any = false;
    bool field_was_quoted = false;
    rec.line = line_;

    int c;
    while ((c = in_.get()) != std::char_traits<char>::eof()) {
        any = true;
        const char ch = static_cast<char>(c);
        if (in_quotes) {
            if (ch == '"') {
                if (in_.peek() == '"') {
                    in_.get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                if (ch == '\n') ++line_;
                field.push_back(ch);
            }
            continue;
        }
        if (ch == '"') {
            if (!field.empty() || field_was_quoted) {
                throw Error("line " + std::to_string(rec.line) + ": stray quote inside unquoted field");
            }
            in_quotes = true;
            field_was_quoted = true;
        } else if (ch == ',') {
            rec.fields.push_back(std::move(field));
            field.clear();
            field_was_quoted = false;
        } else if (ch == '\r' && in_.peek() == '\n') {
            // swallowed; the LF ends the record
        } else if (ch == '\n') {
            ++line_;
            rec.fields.push_back(std::move(field));
            return rec;
        } else {
            field.push_back(ch);
        }
    }
    if (in_quotes) {
        throw Error("line " + std::to_string(rec.line) + ": unterminated quoted field");
    }
    if (!any) return std::nullopt;
    rec.fields.push_back(std::move(field));
    return rec;
}

std::vector<Record> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "'");
    }
    Reader reader(in);
    std::vector<Record> out;
    while (auto rec = reader.next()) {
        // blank lines carry a single empty field
        if (rec->fields.size() == 1 && rec->fields[0].empty()) continue;
        out.push_back(std::move(*rec));
    }
    return out;
}

void require_header(const Record& header, const std::vector<std::string_view>& expected,
                    const std::filesystem::path& path) {
    bool ok = header.fields.size() == expected.size();
    for (std::size_t i = 0; ok && i < expected.size(); ++i) {
        std::string_view got = header.fields[i];
        if (i == 0 && got.starts_with("\xEF\xBB\xBF")) got.remove_prefix(3);
        ok = got == expected[i];
    }
    if (!ok) {
        std::string want;
        for (auto e : expected) {
            if (!want.empty()) want += ',';
            want += e;
        }
        throw Error("'" + path.string() + "': expected header '" + want + "'");
    }
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += fields[i];
    }
    return out;
}

}  // namespace sentitrade::csv
