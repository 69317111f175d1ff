#include "lpball/csv.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "lpball/errors.hpp"

namespace lpball {

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    if (text == "inf" || text == "+inf")
        return INFINITY;
    if (text == "-inf")
        return -INFINITY;
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw InvalidInput("not a number: '" + std::string(text) + "'");
    return v;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string(field);
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void CsvWriter::separator() {
    if (row_started_)
        out_ << ',';
    row_started_ = true;
}

CsvWriter& CsvWriter::field(std::string_view text) {
    separator();
    out_ << csv_escape(text);
    return *this;
}

CsvWriter& CsvWriter::field(double v) {
    separator();
    out_ << format_double(v);
    return *this;
}

CsvWriter& CsvWriter::field(long long v) {
    separator();
    out_ << std::to_string(v);
    return *this;
}

void CsvWriter::end_row() {
    out_ << '\n';
    row_started_ = false;
}

void CsvWriter::header(std::initializer_list<std::string_view> names) {
    for (auto name : names)
        field(name);
    end_row();
}

} // namespace lpball
