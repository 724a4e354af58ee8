#pragma once

/**
 * Infix expression parser for polynomials and rational functions over Q.
 *
 *   expr   := term (('+' | '-') term)*
 *   term   := unary (('*' | '/') unary)*
 *   unary  := ('-' | '+') unary | power
 *   power  := atom ('^' integer)?
 *   atom   := integer | identifier | '(' expr ')'
 *
 * Column numbers in errors are 1-based offsets into the parsed text; callers
 * add their own line and column origin.
 */

#include <string>
#include <vector>

#include "infcycle/poly.hpp"

namespace infcycle {

struct RationalFunction {
    Polynomial num;
    Polynomial den;
};

RationalFunction parse_rational_function(const std::string& text, const std::vector<std::string>& variables);
/// Throws InputError when the expression has a non-constant denominator.
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& variables);

struct ListItem {
    std::string text;
    std::size_t offset = 0;  ///< 0-based position of the trimmed item in the list text
};

std::vector<ListItem> split_list_items(const std::string& text);
/// Splits on top-level commas (outside parentheses), trimming whitespace.
std::vector<std::string> split_list(const std::string& text);
std::string trim(const std::string& s);

}  // namespace infcycle
