#ifndef QSHAP_MODREP_HPP
#define QSHAP_MODREP_HPP

#include <map>

#include "qshap/shapovalov.hpp"

namespace qshap::rep {

using alg::Rat;
using roots::AlgebraKind;
using roots::Root;
using roots::RootVector;
using roots::Weight;

// One hyperplane of the degeneracy locus: h_albar = 0 or h_alpha = r.
struct HyperplaneId {
    enum class Type { corootSum, rootInteger };
    Type type;
    Root alpha;
    int r = 0;  // rootInteger only

    std::string str() const;
    bool operator==(const HyperplaneId& o) const {
        return type == o.type && alpha == o.alpha && r == o.r;
    }
};

struct WeightClass {
    enum class Status { regular, subregular, degenerate };
    Status status = Status::regular;
    std::vector<HyperplaneId> hyperplanes;  // the ones containing lambda

    std::string str() const;
};

struct BadGenericVector : std::runtime_error {
    explicit BadGenericVector(const std::string& m) : std::runtime_error(m) {}
};

// Exact membership in every hyperplane of the locus. heightCutoff is accepted
// for interface symmetry with the corank/Jantzen maps; membership itself is
// decided exactly and does not depend on it.
WeightClass classifyWeight(const AlgebraKind& kind, const Weight& lambda, int heightCutoff = 0);

// Closed-form simplicity test: h_albar(lambda) != 0 and
// h_alpha(lambda) not a positive integer, for every positive root.
bool isSimpleWeyl(const AlgebraKind& kind, const Weight& lambda);

// Whether the corank profile up to the cutoff can see a violation: a coroot
// hyperplane, or h_alpha = r with ht(r alpha) <= cutoff.
bool simpleWithinCutoff(const AlgebraKind& kind, const Weight& lambda, int heightCutoff);

std::map<RootVector, int> corankProfile(const AlgebraKind& kind, const Weight& lambda,
                                        int heightCutoff);

Weight defaultRhoPrime(const AlgebraKind& kind);
void checkGenericVector(const AlgebraKind& kind, const Weight& rhoPrime);

// Vanishing order at x = 0 of det B_nu(lambda + x rho') for each nu up to the
// cutoff. Throws BadGenericVector if rho' violates (J1).
std::map<RootVector, unsigned> jantzenOrders(const AlgebraKind& kind, const Weight& lambda,
                                             const Weight& rhoPrime, int heightCutoff);

struct SumFormulaReport {
    bool ok = false;
    long predicted = 0;  // sum over hyperplanes through lambda of d_gamma(nu)
    long computed = 0;   // m_nu(lambda, rho')
};

SumFormulaReport sumFormulaCheck(const AlgebraKind& kind, const Weight& lambda,
                                 const RootVector& nu, const Weight& rhoPrime);

enum class ModuleFamily { Verma, Weyl };

std::map<RootVector, long> characterCoefficients(const AlgebraKind& kind, const Weight& lambda,
                                                 ModuleFamily which, int heightCutoff);

int defaultHeightCutoff(int n);

std::string weightClassJson(const WeightClass& c);

}  // namespace qshap::rep

#endif
