#ifndef CORANK_COMMON_HPP
#define CORANK_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace corank {

// Dense state index into the ambient system's state list.
using StateId = std::uint32_t;

class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by parsers; carries a 1-based source position.
class parse_error : public error {
public:
    parse_error(std::size_t line, std::size_t column, const std::string& msg)
        : error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line(line),
          column(column) {}

    std::size_t line;
    std::size_t column;
};

}  // namespace corank

#endif
