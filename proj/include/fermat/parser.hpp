// parser.hpp
// ----------
// Textual format for expressions and solution manifests.
//
// Expression grammar (LL, recursive descent):
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' uint)?
//   atom   := NUMBER | 'i' | 'pi' | 'z'<index> | '(' expr ')'
//           | 'exp' '(' expr ')' | 'log' '(' expr ')'
//
// Precedence: ^ before unary minus before '*'/'/' before binary +/-.
// '/' and 'log' are constant folding only: the divisor must reduce to a
// nonzero constant, log's argument to a positive real. 'exp' takes a
// polynomial argument; nesting exp inside exp leaves the representable class
// and is a parse error.
//
// Manifest files are flat key=value blocks, one entry per line, full-line '#'
// comments, keys:
//   system=difference|pdd|diffpdd   n=<int>      k=<int>      c=(expr,...)
//   f1=<expr>  f2=<expr>  g1=<expr>  g2=<expr>
//   tol=<real> seed=<int> points=<int> radius=<real>
//   provenance=<text>  expected=pass|fail
// Unknown or duplicate keys are rejected.

#pragma once

#include <string>
#include <string_view>

#include "fermat/manifest.hpp"

namespace fermat {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

enum class Expectation { None, Pass, Fail };

struct ManifestDocument {
    SolutionManifest manifest;
    double tol = kDefaultTol;
    Sampling sampling;
    Expectation expected = Expectation::None;
};

ExpSum parse_expr(std::string_view text, std::size_t dim);
std::string print_expr(const ExpSum& x);
std::string print_poly(const SparsePoly& p);

// A single constant value (no variables).
Complex parse_complex(std::string_view text);

ManifestDocument parse_manifest(std::string_view text);
std::string print_manifest(const ManifestDocument& doc);

}  // namespace fermat
