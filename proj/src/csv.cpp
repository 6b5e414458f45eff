#include "dsi/csv.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace dsi {

std::string format_double(double value) {
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) {
        return "nan";
    }
    return std::string(buffer, end);
}

CsvWriter::CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header)
    : out_(out) {
    for (auto name : header) {
        field(name);
    }
    end_row();
}

CsvWriter& CsvWriter::field(double value) { return field(std::string_view(format_double(value))); }

CsvWriter& CsvWriter::field(std::int64_t value) {
    return field(std::string_view(std::to_string(value)));
}

CsvWriter& CsvWriter::field(std::string_view text) {
    if (!first_) {
        out_ << ',';
    }
    out_ << text;
    first_ = false;
    return *this;
}

void CsvWriter::end_row() {
    out_ << '\n';
    first_ = true;
}

}  // namespace dsi
