#ifndef WEYL_PARSE_HPP
#define WEYL_PARSE_HPP

#include <span>
#include <string>
#include <string_view>

#include "weyl/polynomial.hpp"

namespace weyl
{

class parse_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Grammar: sums and differences of products of factors; a factor is an integer literal, a
// variable name or a parenthesized expression, optionally raised to a non-negative integer
// power with '^'. Division is allowed by integer literals only, so "1/2*x^2" and "x^2/2" both
// parse. Whitespace is ignored.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names);

// Phase-space symbol on 2N coordinates named x1..xN, p1..pN; for N = 1 the aliases x and p
// are also accepted.
Polynomial parse_symbol(std::string_view text, int dimension);

// Smallest N such that every xK/pK in `text` has K <= N (1 when only x, p appear).
int infer_dimension(std::string_view text);

} // namespace weyl

#endif
