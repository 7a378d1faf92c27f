#pragma once

#include <stdexcept>
#include <string>

namespace hyperdual {

// Lexical/grammatical failure in an hmap document. line/column are 1-based;
// 0 means "no position" (whole-document checks).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line = 0, int column = 0)
        : std::runtime_error(format(msg, line, column)), line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    static std::string format(const std::string& msg, int line, int column) {
        if (line <= 0) return msg;
        return std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
    }

    int line_;
    int column_;
};

// Structural invariant violation (bad involution, missing labels, gap out of
// range, too many hyperedges for the subset counters, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A hyperedge id that does not name a hyperedge of the operand.
class UnknownEdgeError : public std::runtime_error {
public:
    explicit UnknownEdgeError(const std::string& id)
        : std::runtime_error("unknown hyperedge id: " + id) {}
};

} // namespace hyperdual
