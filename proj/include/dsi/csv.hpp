#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace dsi {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

/// Comma-separated rows; the header is written on construction.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header);

    CsvWriter& field(double value);
    CsvWriter& field(std::int64_t value);
    CsvWriter& field(int value) { return field(static_cast<std::int64_t>(value)); }
    CsvWriter& field(std::size_t value) { return field(static_cast<std::int64_t>(value)); }
    CsvWriter& field(std::string_view text);
    CsvWriter& field(const char* text) { return field(std::string_view(text)); }
    void end_row();

private:
    std::ostream& out_;
    bool first_ = true;
};

}  // namespace dsi
