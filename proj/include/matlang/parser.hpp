#pragma once

#include <stdexcept>
#include <string>

#include "matlang/ast.hpp"

namespace matlang {

struct SyntaxError : std::runtime_error {
    long line;
    long col;
    std::string expected;

    SyntaxError(long line_, long col_, const std::string& expected_, const std::string& got)
        : std::runtime_error("syntax error at " + std::to_string(line_) + ":" +
                             std::to_string(col_) + ": expected " + expected_ + ", got " + got),
          line(line_),
          col(col_),
          expected(expected_) {}
};

struct DuplicateVariableError : std::runtime_error {
    explicit DuplicateVariableError(const std::string& name)
        : std::runtime_error("duplicate variable in schema: " + name) {}
};

/// Parses a MATLANG program.
///
///   expr   := `let` IDENT `=` expr `in` expr
///           | `let` `(` IDENT `,` IDENT `)` `=` `eigen` `(` expr `)` `in` expr
///           | term
///   term   := factor { `.` factor }
///   factor := base { `^*` }
///   base   := IDENT | `ones` `(` expr `)` | `diag` `(` expr `)` | `inv` `(` expr `)`
///           | `eigen` `(` expr `)` | `apply` `[` FNNAME `]` `(` expr { `,` expr } `)`
///           | `(` expr `)`
///
/// `#` starts a comment running to end of line.
ExprPtr parse(const std::string& text);

/// Inverse of parse up to whitespace: parse(pretty_print(e)) is structurally
/// equal to e.
std::string pretty_print(const ExprPtr& e);

/// Parses a schema file: one `IDENT : sizeterm x sizeterm` per line,
/// sizeterm := IDENT | `1`, with `#` comments.
Schema parse_schema(const std::string& text);

std::string schema_to_string(const Schema& s);

}  // namespace matlang
