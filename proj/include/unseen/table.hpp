#ifndef UNSEEN_TABLE_HPP
#define UNSEEN_TABLE_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace unseen {

/// Locale-independent shortest round-trip formatting.
std::string format_number(double v);
std::string format_number(std::uint64_t v);

// Rows of preformatted cells under a fixed header.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write_csv(std::ostream& out) const;
    std::string to_csv() const;
};

}  // namespace unseen

#endif  // UNSEEN_TABLE_HPP
