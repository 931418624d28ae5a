#ifndef QSHAP_POLYNOMIAL_HPP
#define QSHAP_POLYNOMIAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qshap/rational.hpp"

namespace qshap::alg {

struct ArityMismatch : std::runtime_error {
    explicit ArityMismatch(const std::string& m) : std::runtime_error(m) {}
};
struct NotDivisible : std::runtime_error {
    explicit NotDivisible(const std::string& m) : std::runtime_error(m) {}
};

// Sparse multivariate polynomial over Rat in variables h1..h<arity>.
//
// A monomial is packed into one uint64: the most significant byte holds the
// total degree, the next bytes hold the exponents of h1, h2, ... in order.
// Descending numeric order on the key is therefore graded-lex order, which is
// the canonical term order used everywhere (printing, leading terms).
// Supports arity <= kMaxArity and exponents/degrees <= 255; the degrees in
// this project stay well below that (checked at runtime).
class Polynomial {
public:
    static constexpr int kMaxArity = 7;

    using Key = std::uint64_t;
    struct Term {
        Key key;
        Rat coef;
    };

    Polynomial() : arity_(0) {}
    explicit Polynomial(int arity);
    static Polynomial zero(int arity) { return Polynomial(arity); }
    static Polynomial constant(int arity, const Rat& c);
    static Polynomial variable(int arity, int var);  // h_{var+1}
    // Single monomial c * prod h_i^{exps[i]}.
    static Polynomial monomial(int arity, const std::vector<unsigned>& exps, const Rat& c);

    int arity() const { return arity_; }
    bool isZero() const { return terms_.empty(); }
    bool isConstant() const;
    // Throws if not constant.
    Rat constantValue() const;
    int totalDegree() const;  // -1 for the zero polynomial
    std::size_t termCount() const { return terms_.size(); }

    const std::vector<Term>& terms() const { return terms_; }

    static int keyDegree(Key k) { return static_cast<int>(k >> 56); }
    static unsigned keyExp(Key k, int var) { return (k >> (8 * (6 - var))) & 0xff; }
    static Key makeKey(const std::vector<unsigned>& exps);
    std::vector<unsigned> expsOf(Key k) const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial scaled(const Rat& c) const;
    Polynomial pow(unsigned e) const;

    // Substitutes subs[v] (arity = newArity) for every variable v that has an
    // entry; variables without an entry must not occur.
    Polynomial substituteAll(const std::map<int, Polynomial>& subs, int newArity) const;
    // Replaces one variable by a polynomial of the same arity.
    Polynomial substituteVar(int var, const Polynomial& value) const;
    Rat evaluate(const std::vector<Rat>& point) const;
    // Partial evaluation h_{var+1} := c, keeping the arity.
    Polynomial evaluateVar(int var, const Rat& c) const;

    // Exact quotient; throws NotDivisible when none exists.
    Polynomial divideExact(const Polynomial& divisor) const;
    // Like divideExact but returns nullopt instead of throwing.
    std::optional<Polynomial> tryDivide(const Polynomial& divisor) const;

    // Sum of the terms of maximal total degree. Throws on zero input.
    Polynomial leadingHomogeneous() const;
    // Largest k with x^k | p for a univariate p; nullopt (= +infinity) for 0.
    std::optional<unsigned> vanishingOrder() const;

    // gcd of all numerators / lcm of all denominators; (0,1) for zero.
    std::pair<mpz_class, mpz_class> content() const;
    unsigned maxExponent(int var) const;

    std::string str(const std::vector<std::string>& names) const;
    std::string str() const;  // names h1..hn
    std::string jsonArray() const;

    // Raw access used by the builders; keeps the invariant via normalize().
    static Polynomial fromTerms(int arity, std::vector<Term> terms);

private:
    void checkSameArity(const Polynomial& o) const;
    static void mergeAdd(std::vector<Term>& into, std::vector<Term>&& from);
    void normalizeSorted();

    int arity_;
    std::vector<Term> terms_;  // sorted by key descending, no zero coefs
};

std::vector<std::string> hVarNames(int arity);

}  // namespace qshap::alg

#endif
