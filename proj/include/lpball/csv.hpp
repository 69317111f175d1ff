#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace lpball {

/// Shortest round-trip decimal form; independent of the global locale.
std::string format_double(double v);

/// Strict locale-independent parse of a whole token; throws InvalidInput.
double parse_double(std::string_view text);

/// RFC 4180 field quoting: fields containing ',', '"', CR or LF are quoted.
std::string csv_escape(std::string_view field);

/// Writes comma-separated rows terminated by '\n'.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    CsvWriter& field(std::string_view text);
    CsvWriter& field(const char* text) { return field(std::string_view(text)); }
    CsvWriter& field(double v);
    CsvWriter& field(long long v);
    CsvWriter& field(int v) { return field(static_cast<long long>(v)); }
    CsvWriter& flag(bool v) { return field(v ? std::string_view("1") : std::string_view("0")); }
    void end_row();

    void header(std::initializer_list<std::string_view> names);

private:
    void separator();

    std::ostream& out_;
    bool row_started_ = false;
};

} // namespace lpball
