#pragma once

#include <string_view>

#include "covkit/array.hpp"

namespace covkit::tables {

// The two published example arrays the toolkit reproduces: a minimal 5-row
// partition-covering array on 4 columns and a 7-row one on 5 columns, both at
// strength 3.

inline constexpr std::string_view table1_text =
    "5 4 4 partition 3\n"
    "1 1 1 1\n"
    "1 2 3 4\n"
    "1 2 1 2\n"
    "2 2 1 1\n"
    "1 2 2 1\n";

inline constexpr std::string_view table2_text =
    "7 5 5 partition 3\n"
    "1 1 1 1 1\n"
    "1 2 3 4 5\n"
    "1 2 2 1 2\n"
    "2 1 2 1 2\n"
    "2 2 1 1 2\n"
    "2 2 1 1 1\n"
    "1 1 1 2 2\n";

inline ArrayFile table1() { return parse_array(std::string(table1_text)); }
inline ArrayFile table2() { return parse_array(std::string(table2_text)); }

}  // namespace covkit::tables
