#ifndef QSHAP_SHAPOVALOV_HPP
#define QSHAP_SHAPOVALOV_HPP

#include <optional>

#include "qshap/uea.hpp"

namespace qshap::shap {

using alg::PolyMatrix;
using alg::Polynomial;
using alg::Rat;
using roots::AlgebraKind;
using roots::Root;
using roots::RootVector;

// Partition of nu: per positive root (lex order) an unbounded even
// multiplicity k and an odd multiplicity kbar in {0,1}.
struct PartitionVector {
    std::vector<std::pair<int, int>> parts;  // (k_alpha, kbar_alpha)

    int weightNorm() const;  // |m| = sum of all multiplicities
};

// Complete duplicate-free enumeration in a fixed lexicographic order.
std::vector<PartitionVector> partitions(int n, const RootVector& nu);
long tau(int n, const RootVector& nu);
long tauAlpha(int n, const RootVector& nu, const Root& alpha);

enum class Side { minus, plus };

// Odd Cartan basis used for the H_J legs of the weight bases. Standard is the
// kind's own basis. Split (q/pq only) uses H_1-H_2, ..., H_{n-1}-H_n, H_n,
// which block-diagonalizes the Shapovalov matrix; determinants differ from
// the standard basis by +-1 only.
enum class CliffBasis { standard, split };

// tau(nu) * 2^N products x_i H_J (minus) or y_j H_J (plus), in the
// deterministic order (partition index major, subset mask minor).
std::vector<uea::UEAElement> pbwWeightBasis(const AlgebraKind& kind, Side side,
                                            const RootVector& nu,
                                            CliffBasis basis = CliffBasis::standard);

// The root-vector monomials f^m F^mbar (minus) or E^mbar e^m (plus) per
// partition, without the Clifford legs, in partition order.
std::vector<uea::Mono> partitionMonos(const AlgebraKind& kind, Side side, const RootVector& nu);

// Square Shapovalov matrix B_nu: rows over the minus basis, columns over the
// plus basis, entry = (-1)^{p(row)p(col)} integral(HC(sigma(col) row)).
// Entries are reduced (h_n substituted) for pq/psq.
PolyMatrix shapovalovMatrix(const AlgebraKind& kind, const RootVector& nu,
                            CliffBasis basis = CliffBasis::standard);

struct LinearFactor {
    Polynomial base;
    int exp;
};

// Norm closed form: prod_alpha h_albar^{tauAlpha(nu-alpha)} *
// prod_{alpha, r>=1} (h_alpha - r)^{tau(nu - r alpha)}.
std::vector<LinearFactor> closedFormNormFactors(const AlgebraKind& kind, const RootVector& nu);
Polynomial closedFormNorm(const AlgebraKind& kind, const RootVector& nu);
// Determinant closed form: the same factors with exponents times 2^{dim h1}.
std::vector<LinearFactor> closedFormDetFactors(const AlgebraKind& kind, const RootVector& nu);
Polynomial closedFormDet(const AlgebraKind& kind, const RootVector& nu);

std::string factorsStr(const Rat& scalar, const std::vector<LinearFactor>& fs, int arity);

struct FactorizationMismatch : std::runtime_error {
    Polynomial quotient;
    FactorizationMismatch(const std::string& msg, Polynomial q)
        : std::runtime_error(msg), quotient(std::move(q)) {}
};

struct ShapovalovReport {
    AlgebraKind kind;
    RootVector nu;
    int size = 0;
    std::optional<PolyMatrix> matrix;  // standard-basis matrix, when requested
    Rat scalar;                        // det = scalar * prod detFactors
    std::vector<LinearFactor> detFactors;
    std::optional<Polynomial> detExpanded;  // omitted when too large
    Polynomial norm;                        // expanded closed-form norm
    bool leadingOk = false;
    bool degreeOk = false;
    CliffBasis detBasis = CliffBasis::standard;

    ShapovalovReport(const AlgebraKind& k, RootVector v, int arity)
        : kind(k), nu(std::move(v)), scalar(0), norm(arity) {}
    std::string detStr() const;
    std::string json() const;
};

// Computes det B_nu exactly, divides out the closed form and checks the
// constant nonzero quotient, the leading term and the degree identities.
// Throws FactorizationMismatch when the determinant does not match.
ShapovalovReport verifyFactorization(const AlgebraKind& kind, const RootVector& nu,
                                     bool keepMatrix = false);

struct CrossAlgebraReport {
    int n;
    RootVector nu;
    bool ok = false;
    std::vector<std::string> notes;
    std::string json() const;
};

// Norm(q(n)) vs Norm(sq(n)) plus the pq/psq substitution identities on one nu.
CrossAlgebraReport crossAlgebraCheck(int n, const RootVector& nu);

}  // namespace qshap::shap

#endif
