#ifndef QSHAP_PARSE_HPP
#define QSHAP_PARSE_HPP

#include <string>

#include "qshap/polynomial.hpp"
#include "qshap/rootdata.hpp"

namespace qshap::cli {

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " at " + std::to_string(l) + ":" + std::to_string(c)),
          line(l), column(c) {}
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' nat)?
//   base   := rational | var | '(' expr ')'
// Variables are h1..h<arity>; implicit multiplication is a syntax error.
alg::Polynomial parsePoly(const std::string& src, int arity);

// "a,b,c" of rationals.
std::vector<alg::Rat> parseRatList(const std::string& src);
// "1,0,2" of nonnegative integers (simple-root coefficients).
roots::RootVector parseRootVector(const std::string& src, int n);

}  // namespace qshap::cli

#endif
