#ifndef QSHAP_ROOTDATA_HPP
#define QSHAP_ROOTDATA_HPP

#include <string>
#include <utility>
#include <vector>

#include "qshap/polynomial.hpp"
#include "qshap/rational.hpp"

namespace qshap::roots {

using alg::Polynomial;
using alg::Rat;

enum class Family { q, sq, pq, psq };

std::string familyName(Family f);
Family familyParse(const std::string& s);

// One of q(n), sq(n), pq(n), psq(n). pq(2) and psq(2) are rejected.
struct AlgebraKind {
    Family family;
    int n;

    AlgebraKind(Family f, int rank);
    bool isReduced() const { return family == Family::pq || family == Family::psq; }
    // Structure constants of pq/psq are those of the parent q/sq; the quotient
    // acts only on polynomial outputs (h_n substitution) and weights.
    Family parentFamily() const {
        return (family == Family::q || family == Family::pq) ? Family::q : Family::sq;
    }
    bool fullOddCartan() const { return parentFamily() == Family::q; }
    int oddCartanDim() const { return fullOddCartan() ? n : n - 1; }
    std::string str() const { return familyName(family) + "(" + std::to_string(n) + ")"; }
    bool operator==(const AlgebraKind& o) const { return family == o.family && n == o.n; }
};

// Positive root eps_i - eps_j, with 1 <= i < j <= n.
struct Root {
    int i, j;
    bool operator==(const Root& o) const { return i == o.i && j == o.j; }
    bool operator<(const Root& o) const { return i != o.i ? i < o.i : j < o.j; }
};

std::vector<Root> positiveRoots(int n);

// Species in global PBW order: negatives, even Cartan, odd Cartan, positives.
enum class Species : int { f = 0, F = 1, h = 2, H = 3, E = 4, e = 5 };

std::string speciesName(Species s);

// Basis element label. Root species carry (i,j) with i<j; Cartan species use
// only i. For sq/psq the odd Cartan index k labels H_k - H_{k+1}, k < n.
struct GenIndex {
    Species s;
    int i;
    int j;  // 0 for Cartan species

    bool operator==(const GenIndex& o) const { return s == o.s && i == o.i && j == o.j; }
    std::string str() const;
};

bool isOdd(Species s);
void checkGenIndex(const AlgebraKind& kind, const GenIndex& g);

// Exact super-bracket of two basis elements, expanded over the basis.
std::vector<std::pair<Rat, GenIndex>> bracket(const AlgebraKind& kind, const GenIndex& x,
                                              const GenIndex& y);

// Weight of a basis element in eps-coordinates (length n).
std::vector<int> genWeightEps(const AlgebraKind& kind, const GenIndex& g);

// Weights are rational coordinate vectors lambda(h_1..h_n).
using Weight = std::vector<Rat>;

void checkWeight(const AlgebraKind& kind, const Weight& w);
// (h_alpha(lambda), h_albar(lambda)) = (lambda_i - lambda_j, lambda_i + lambda_j).
std::pair<Rat, Rat> corootValues(const Weight& w, const Root& alpha);
Weight weylReflect(const Weight& w, const Root& alpha);
// Standard W-invariant form (eps_i, eps_j) = delta_ij.
Rat epsForm(const Weight& a, const Weight& b);

// Element of Q^+ as nonnegative coefficients over the simple roots
// alpha_1..alpha_{n-1}.
struct RootVector {
    std::vector<int> coeff;

    int rank() const { return static_cast<int>(coeff.size()) + 1; }  // = n
    int height() const;
    bool isZero() const { return height() == 0; }
    bool inQPlus() const;
    std::vector<int> epsCoords() const;  // length n, sums to zero
    // this - m*alpha, possibly outside Q^+.
    RootVector minusRoot(const Root& alpha, int m) const;
    std::string str() const;
    bool operator==(const RootVector& o) const { return coeff == o.coeff; }
    bool operator<(const RootVector& o) const { return coeff < o.coeff; }
};

std::vector<RootVector> rootVectorsUpToHeight(int n, int maxHeight, bool includeZero);

// h_alpha and h_albar as linear polynomials in h_1..h_n.
Polynomial hAlphaPoly(int n, const Root& alpha);
Polynomial hAlbarPoly(int n, const Root& alpha);

// For pq/psq substitutes h_n := -(h_1+...+h_{n-1}); identity otherwise.
Polynomial reducePoly(const AlgebraKind& kind, const Polynomial& p);

}  // namespace qshap::roots

#endif
