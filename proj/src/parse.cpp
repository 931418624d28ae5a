#include "qshap/parse.hpp"

#include <cctype>
#include <sstream>

namespace qshap::cli {

using alg::Polynomial;
using alg::Rat;

namespace {

class Parser {
public:
    Parser(const std::string& src, int arity) : src_(src), arity_(arity) {}

    Polynomial run() {
        skipSpace();
        Polynomial p = expr();
        skipSpace();
        if (pos_ != src_.size()) fail("trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

    void advance() {
        if (pos_ < src_.size()) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skipSpace() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    bool eat(char c) {
        if (peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    Polynomial expr() {
        // Unary minus on the first term keeps printed polynomials parseable.
        skipSpace();
        bool neg = eat('-');
        if (neg) skipSpace();
        Polynomial acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skipSpace();
            if (eat('+')) {
                skipSpace();
                acc += term();
            } else if (eat('-')) {
                skipSpace();
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        for (;;) {
            skipSpace();
            if (eat('*')) {
                skipSpace();
                acc = acc * factor();
            } else {
                char c = peek();
                // Implicit products like "h1 h2" or "2h1" are rejected.
                if (c == 'h' || std::isdigit(static_cast<unsigned char>(c)) || c == '(')
                    fail("missing '*' (implicit multiplication is not allowed)");
                return acc;
            }
        }
    }

    Polynomial factor() {
        Polynomial base = this->base();
        skipSpace();
        if (eat('^')) {
            skipSpace();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
            unsigned e = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                e = e * 10 + static_cast<unsigned>(peek() - '0');
                if (e > 255) fail("exponent too large");
                advance();
            }
            return base.pow(e);
        }
        return base;
    }

    Polynomial base() {
        skipSpace();
        char c = peek();
        if (c == '(') {
            advance();
            Polynomial p = expr();
            skipSpace();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (c == 'h') {
            advance();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected variable index");
            long idx = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                idx = idx * 10 + (peek() - '0');
                if (idx > 1000) fail("variable index too large");
                advance();
            }
            if (idx < 1 || idx > arity_)
                fail("unknown variable h" + std::to_string(idx) + " (arity " +
                     std::to_string(arity_) + ")");
            return Polynomial::variable(arity_, static_cast<int>(idx) - 1);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                num += peek();
                advance();
            }
            skipSpace();
            if (eat('/')) {
                skipSpace();
                if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator");
                std::string den;
                while (std::isdigit(static_cast<unsigned char>(peek()))) {
                    den += peek();
                    advance();
                }
                return Polynomial::constant(arity_, alg::ratParse(num + "/" + den));
            }
            return Polynomial::constant(arity_, alg::ratParse(num));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& src_;
    int arity_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

}  // namespace

Polynomial parsePoly(const std::string& src, int arity) { return Parser(src, arity).run(); }

std::vector<Rat> parseRatList(const std::string& src) {
    std::vector<Rat> out;
    std::stringstream ss(src);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("empty entry in rational list");
        out.push_back(alg::ratParse(item));
    }
    if (out.empty()) throw std::invalid_argument("empty rational list");
    return out;
}

roots::RootVector parseRootVector(const std::string& src, int n) {
    roots::RootVector nu;
    std::stringstream ss(src);
    std::string item;
    while (std::getline(ss, item, ',')) nu.coeff.push_back(std::stoi(item));
    if (static_cast<int>(nu.coeff.size()) != n - 1)
        throw std::invalid_argument("nu needs " + std::to_string(n - 1) +
                                    " simple-root coefficients");
    for (int c : nu.coeff)
        if (c < 0) throw std::invalid_argument("nu must have nonnegative coefficients");
    return nu;
}

}  // namespace qshap::cli
