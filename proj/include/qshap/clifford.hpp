#ifndef QSHAP_CLIFFORD_HPP
#define QSHAP_CLIFFORD_HPP

#include <cstdint>
#include <map>
#include <string>

#include "qshap/polymatrix.hpp"
#include "qshap/rootdata.hpp"

namespace qshap::cliff {

using alg::PolyMatrix;
using alg::Polynomial;
using alg::Rat;
using roots::AlgebraKind;

// Element of R = U(h), a Clifford algebra over A = S(h_0bar): a map from
// subsets of the odd Cartan basis {H'_1..H'_N} to polynomial coefficients.
// Bit k-1 of the mask marks H'_k; products H_J are arranged by increasing
// index. H'_k is H_k for q/pq and H_k - H_{k+1} for sq/psq.
struct CliffordElement {
    AlgebraKind kind;
    std::map<std::uint32_t, Polynomial> comps;  // no zero polynomials stored

    explicit CliffordElement(const AlgebraKind& k) : kind(k) {}

    bool isZero() const { return comps.empty(); }
    void add(std::uint32_t mask, const Polynomial& p);
    CliffordElement operator+(const CliffordElement& o) const;
    CliffordElement operator-(const CliffordElement& o) const;
    CliffordElement scaled(const Rat& c) const;
    bool operator==(const CliffordElement& o) const;

    // Canonical filtration degree: max over components of |J| + deg coeff.
    int filtrationDegree() const;
    int cliffordDegree() const;  // max |J|, -1 when zero

    std::string str() const;
};

CliffordElement clConstant(const AlgebraKind& kind, const Polynomial& p);
CliffordElement clBasis(const AlgebraKind& kind, std::uint32_t mask);

// Bilinear form entries [H'_i, H'_j] as polynomials in h_1..h_n (1-based).
Polynomial gramForm(const AlgebraKind& kind, int i, int j);

CliffordElement clMul(const CliffordElement& a, const CliffordElement& b);

// A-linear transpose antiautomorphism: reverses products of the odd
// generators, fixes coefficients.
CliffordElement sigmaCl(const CliffordElement& a);

// ad' H'_k on R: u -> H'_k u + (-1)^{p(u)} u H'_k, componentwise in the
// Clifford degree parity.
CliffordElement adPrimeGen(int k, const CliffordElement& u);

// Coefficient of the top product H'_1...H'_N; the unique A-linear functional
// with integral(top) = 1 vanishing on lower filtration degrees.
Polynomial integral(const CliffordElement& a);

// T_h (anticentral generator of U(h)) and t_h = T_h^2.
std::pair<CliffordElement, Polynomial> tHElement(const AlgebraKind& kind);

// Matrix (integral(sigma(H_J) H_J')) over all subset pairs, in mask order.
PolyMatrix gramMatrix(const AlgebraKind& kind);

struct CliffordPointData {
    int c;         // kernel dimension of the evaluated form
    long dimE;     // dimension of the simple Cl(lambda)-module
    long r;        // 2^N / dimE
};

CliffordPointData cliffordPointData(const AlgebraKind& kind, const roots::Weight& lambda);

}  // namespace qshap::cliff

#endif
