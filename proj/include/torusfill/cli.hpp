#pragma once

#include "torusfill/sl2z.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace torusfill::cli {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Comma-separated integers, e.g. "3,2,2".
MonodromyString parse_string_arg(std::string_view text);

/// Runs one command line (without the program name). Returns 0, 1 (domain/resource error) or 2 (usage error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace torusfill::cli
