#ifndef QSHAP_CENTRE_HPP
#define QSHAP_CENTRE_HPP

#include <map>

#include "qshap/shapovalov.hpp"

namespace qshap::cent {

using alg::Polynomial;
using alg::Rat;
using roots::AlgebraKind;
using roots::RootVector;

struct MembershipFailure : std::runtime_error {
    explicit MembershipFailure(const std::string& m) : std::runtime_error(m) {}
};
struct DivisibilityFailure : std::runtime_error {
    explicit DivisibilityFailure(const std::string& m) : std::runtime_error(m) {}
};

struct ZMembershipResult {
    bool ok = true;
    std::string witness;  // offending transposition or root plus remainder
};

// Tests phi against the image of the centre: W-invariance plus, for every
// root alpha, constancy along lines parallel to alpha inside h_albar = 0.
// For pq/psq, phi must already be in substituted form (no h_n).
ZMembershipResult zMembership(const AlgebraKind& kind, const Polynomial& phi);

// t_g = t_h * (prod_alpha h_albar)^2, reduced for pq/psq.
Polynomial tG(const AlgebraKind& kind);

struct InvariantSearchResult {
    int degreeBound = 0;
    bool twisted = false;
    std::vector<uea::UEAElement> basis;
    std::vector<cliff::CliffordElement> hcImages;
};

// Exact solve of { z in F^d(U(g)), weight 0 : (ad x) z = 0 for all generators }
// (twisted: ad' instead of ad) over the PBW monomial basis.
InvariantSearchResult invariantSearch(const AlgebraKind& kind, int degreeBound, bool twisted,
                                      std::size_t monomialCap = 200000);

struct CentralTruncation {
    Polynomial phi;
    std::map<RootVector, uea::UEAElement> zs;
    bool residualZero = false;
};

// Kac-style recursion: for nu ascending by height solves z_nu v = v phi -
// z_{<nu} v on the Verma weight space basis, with an exact-divisibility
// assertion on the solution.
CentralTruncation centralTruncation(const AlgebraKind& kind, const Polynomial& phi,
                                    int heightCutoff);

}  // namespace qshap::cent

#endif
