#ifndef GKNOT_ERRORS_HPP
#define GKNOT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gknot {

struct MalformedExpression : std::runtime_error {
    explicit MalformedExpression(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    int line;
    int column;
    std::string expected;
    ParseError(int line_, int column_, const std::string& expected_)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(column_) + ": expected " + expected_),
          line(line_), column(column_), expected(expected_) {}
};

struct NonCoprime : std::runtime_error {
    explicit NonCoprime(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionRemainder : std::logic_error {
    explicit DivisionRemainder(const std::string& what) : std::logic_error(what) {}
};

struct UnknownComponent : std::runtime_error {
    explicit UnknownComponent(const std::string& what) : std::runtime_error(what) {}
};

struct DeadComponent : std::runtime_error {
    explicit DeadComponent(const std::string& what) : std::runtime_error(what) {}
};

struct NonPrimitiveClass : std::runtime_error {
    explicit NonPrimitiveClass(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidDecomposition : std::runtime_error {
    explicit InvalidDecomposition(const std::string& what) : std::runtime_error(what) {}
};

struct NotUnknots : std::runtime_error {
    explicit NotUnknots(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gknot

#endif
