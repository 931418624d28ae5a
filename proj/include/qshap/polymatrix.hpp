#ifndef QSHAP_POLYMATRIX_HPP
#define QSHAP_POLYMATRIX_HPP

#include <functional>
#include <vector>

#include "qshap/polynomial.hpp"

namespace qshap::alg {

// Rectangular matrix of polynomials sharing one arity.
class PolyMatrix {
public:
    PolyMatrix() : rows_(0), cols_(0), arity_(0) {}
    PolyMatrix(int rows, int cols, int arity);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int arity() const { return arity_; }

    Polynomial& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Polynomial& at(int r, int c) const {
        return data_[static_cast<std::size_t>(r) * cols_ + c];
    }

    PolyMatrix mapEntries(const std::function<Polynomial(const Polynomial&)>& f, int newArity) const;
    std::vector<std::vector<Rat>> evaluate(const std::vector<Rat>& point) const;
    bool operator==(const PolyMatrix& o) const;

    std::string str(const std::vector<std::string>& names) const;

private:
    int rows_, cols_, arity_;
    std::vector<Polynomial> data_;
};

// Exact determinant by fraction-free (Bareiss) elimination. The matrix is
// first split into independent blocks along the connected components of its
// nonzero pattern (a rectangular component forces determinant zero), then each
// block is eliminated with exact divisions only. Integer content of each row
// is stripped up front and tracked in the result, so elimination runs on
// integer coefficients. Pivoting order does not affect the result.
Polynomial detFractionFree(const PolyMatrix& m);

// Same computation, but the determinant is returned unexpanded as a scalar
// prefactor together with the block determinants: det = scalar * prod blocks.
// Large structured determinants stay manageable in this form.
struct DetComponents {
    Rat scalar;
    std::vector<Polynomial> blocks;
};
DetComponents detFractionFreeComponents(const PolyMatrix& m);

// Determinant by cofactor expansion; test oracle for small matrices.
Polynomial detCofactor(const PolyMatrix& m);

// Rank of the rational matrix m(point), by Gaussian elimination with full
// pivoting over Q.
int rankAtPoint(const PolyMatrix& m, const std::vector<Rat>& point);
int rankRational(std::vector<std::vector<Rat>> a);

// Exact solve of A x = b over the polynomial ring: fraction-free elimination,
// back substitution by exact division, free unknowns set to zero, and an
// exact residual check. nonPolynomial means the system is solvable over the
// fraction field but the canonical solution is not polynomial.
struct LinearSolveOutcome {
    enum class Status { ok, inconsistent, nonPolynomial } status;
    std::vector<Polynomial> x;
};
LinearSolveOutcome solveLinearExact(std::vector<std::vector<Polynomial>> a,
                                    std::vector<Polynomial> b, int arity);

}  // namespace qshap::alg

#endif
