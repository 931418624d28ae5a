#ifndef QSHAP_UEA_HPP
#define QSHAP_UEA_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qshap/clifford.hpp"
#include "qshap/rootdata.hpp"

namespace qshap::uea {

using alg::Polynomial;
using alg::Rat;
using roots::AlgebraKind;
using roots::GenIndex;
using roots::Species;

// Exponent vector over the fixed generator order; odd exponents are 0/1.
using Mono = std::vector<std::uint8_t>;
// Sequence of generator ids, used by the rewriting engine.
using Word = std::vector<std::int16_t>;

// Generator table of one algebra: the global PBW order
//   f (lex by root) < F < h < H < E < e,
// pairwise super-brackets expanded over the basis, and odd squares.
struct GenTable {
    AlgebraKind kind;
    std::vector<GenIndex> gens;
    std::vector<bool> odd;
    std::vector<std::vector<int>> weightEps;
    std::vector<std::vector<std::vector<std::pair<Rat, int>>>> brk;
    std::vector<std::vector<std::pair<Rat, int>>> oddSquare;
    int blockFirst[6] = {0, 0, 0, 0, 0, 0};
    int blockCount[6] = {0, 0, 0, 0, 0, 0};

    explicit GenTable(const AlgebraKind& k);
    int size() const { return static_cast<int>(gens.size()); }
    int idOf(const GenIndex& g) const;  // throws on invalid index
    int first(Species s) const { return blockFirst[static_cast<int>(s)]; }
    int count(Species s) const { return blockCount[static_cast<int>(s)]; }

    static const GenTable& get(const AlgebraKind& k);
};

class UEAElement {
public:
    explicit UEAElement(const GenTable& t) : tbl_(&t) {}
    static UEAElement one(const GenTable& t);
    static UEAElement fromMono(const GenTable& t, const Mono& m, const Rat& c);
    static UEAElement fromGen(const GenTable& t, const GenIndex& g);

    const GenTable& table() const { return *tbl_; }
    const std::map<Mono, Rat>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    void addTerm(const Mono& m, const Rat& c);

    UEAElement operator+(const UEAElement& o) const;
    UEAElement operator-(const UEAElement& o) const;
    UEAElement scaled(const Rat& c) const;
    bool operator==(const UEAElement& o) const;

    std::string str() const;

private:
    const GenTable* tbl_;
    std::map<Mono, Rat> terms_;
};

Word wordOfMono(const GenTable& t, const Mono& m);
Mono monoOfSortedWord(const GenTable& t, const Word& w);

// PBW normal form of an arbitrary word of generators.
UEAElement normalOrder(const GenTable& t, const Word& w);
// Memoized product of two PBW monomials.
const UEAElement& multiplyMono(const GenTable& t, const Mono& a, const Mono& b);
UEAElement multiply(const UEAElement& a, const UEAElement& b);
// Antiautomorphism with sigma(x) = -x on the algebra.
UEAElement sigma(const UEAElement& a);
// Super-commutator ab - (-1)^{p(a)p(b)} ba (for homogeneous a).
UEAElement superCommutator(const UEAElement& a, const UEAElement& b);
// Twisted bracket (ad' a)(b) = ab - (-1)^{p(a)(p(b)+1)} ba.
UEAElement adPrime(const UEAElement& a, const UEAElement& b);

bool monoIsOdd(const GenTable& t, const Mono& m);
int monoDegree(const Mono& m);
// Weight in eps-coordinates.
std::vector<int> monoWeightEps(const GenTable& t, const Mono& m);
bool isWeightHomogeneous(const UEAElement& a, std::vector<int>* wt);
bool isParityHomogeneous(const UEAElement& a, bool* odd);

// Counts of negative / Cartan / positive generator letters in a monomial.
void monoLetterCounts(const GenTable& t, const Mono& m, int* neg, int* car, int* pos);

// Projection U(g) -> U(h) along U(g)n+ + n-U(g): keeps the monomials with no
// root-vector letters, re-expressed in the Clifford basis.
cliff::CliffordElement hcProject(const UEAElement& a);
// Embeds a Clifford element back into the enveloping algebra.
UEAElement fromClifford(const GenTable& t, const cliff::CliffordElement& c);

// Image of a*1 in the Verma realization U(b^-): drops monomials containing a
// positive root vector.
UEAElement projectUbMinus(const UEAElement& a);

// Canonical filtration degree of HC-style elements lives in clifford.hpp;
// for UEA elements the degree is the maximal letter count.
int filtrationDegree(const UEAElement& a);

}  // namespace qshap::uea

#endif
