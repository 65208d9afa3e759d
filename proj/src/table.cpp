#include "unseen/table.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace unseen {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_number(std::uint64_t v) { return std::to_string(v); }

void Table::write_csv(std::ostream& out) const {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

std::string Table::to_csv() const {
    std::ostringstream s;
    write_csv(s);
    return s.str();
}

}  // namespace unseen
