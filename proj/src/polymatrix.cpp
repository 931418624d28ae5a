#include "qshap/polymatrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qshap::alg {

PolyMatrix::PolyMatrix(int rows, int cols, int arity)
    : rows_(rows), cols_(cols), arity_(arity),
      data_(static_cast<std::size_t>(rows) * cols, Polynomial(arity)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

PolyMatrix PolyMatrix::mapEntries(const std::function<Polynomial(const Polynomial&)>& f,
                                  int newArity) const {
    PolyMatrix out(rows_, cols_, newArity);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out.at(r, c) = f(at(r, c));
    return out;
}

std::vector<std::vector<Rat>> PolyMatrix::evaluate(const std::vector<Rat>& point) const {
    std::vector<std::vector<Rat>> out(rows_, std::vector<Rat>(cols_));
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out[r][c] = at(r, c).evaluate(point);
    return out;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::string PolyMatrix::str(const std::vector<std::string>& names) const {
    std::ostringstream os;
    for (int r = 0; r < rows_; ++r) {
        os << "[ ";
        for (int c = 0; c < cols_; ++c) {
            if (c) os << " | ";
            os << at(r, c).str(names);
        }
        os << " ]\n";
    }
    return os.str();
}

namespace {

struct DSU {
    std::vector<int> p;
    explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

// Sign of the permutation sending i -> perm[i].
int permutationSign(std::vector<int> perm) {
    int sign = 1;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

// Bareiss elimination on a dense square block. Entries must be exact; the
// division in each step is exact by the Sylvester identity.
Polynomial detBareiss(std::vector<std::vector<Polynomial>> m, int arity) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return Polynomial::constant(arity, Rat(1));
    int sign = 1;
    Polynomial prev = Polynomial::constant(arity, Rat(1));
    for (int k = 0; k < n - 1; ++k) {
        // Pick the sparsest nonzero pivot in column k to slow entry growth.
        int pr = -1;
        std::size_t best = 0;
        for (int r = k; r < n; ++r) {
            if (m[r][k].isZero()) continue;
            if (pr < 0 || m[r][k].termCount() < best) {
                pr = r;
                best = m[r][k].termCount();
            }
        }
        if (pr < 0) return Polynomial::zero(arity);
        if (pr != k) {
            std::swap(m[pr], m[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Polynomial t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = t.divideExact(prev);
            }
            m[i][k] = Polynomial::zero(arity);
        }
        prev = m[k][k];
    }
    Polynomial det = m[n - 1][n - 1];
    if (sign < 0) det = -det;
    return det;
}

}  // namespace

DetComponents detFractionFreeComponents(const PolyMatrix& mat) {
    if (mat.rows() != mat.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const int n = mat.rows();
    const int arity = mat.arity();
    if (n == 0) return {Rat(1), {}};

    // Strip the rational content of each row; elimination then works over
    // integer coefficients. The stripped factor multiplies the result.
    std::vector<std::vector<Polynomial>> work(n, std::vector<Polynomial>(n, Polynomial(arity)));
    Rat factor(1);
    for (int r = 0; r < n; ++r) {
        mpz_class g(0), l(1);
        for (int c = 0; c < n; ++c) {
            auto [cg, cl] = mat.at(r, c).content();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), cg.get_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), cl.get_mpz_t());
        }
        if (g == 0) return {Rat(0), {}};  // zero row
        Rat scale(l, g);
        scale.canonicalize();
        Rat unscale(g, l);
        unscale.canonicalize();
        factor *= unscale;
        for (int c = 0; c < n; ++c) work[r][c] = mat.at(r, c).scaled(scale);
    }

    // Connected components of the bipartite nonzero pattern. Rows and columns
    // in different components never interact, so the matrix is block-diagonal
    // after a permutation; a non-square component forces a zero determinant.
    DSU dsu(2 * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (!work[r][c].isZero()) dsu.unite(r, n + c);
    std::vector<int> compOfRow(n), compOfCol(n);
    std::vector<int> compIds;
    auto compIndex = [&](int root) {
        for (std::size_t i = 0; i < compIds.size(); ++i)
            if (compIds[i] == root) return static_cast<int>(i);
        compIds.push_back(root);
        return static_cast<int>(compIds.size() - 1);
    };
    for (int r = 0; r < n; ++r) compOfRow[r] = compIndex(dsu.find(r));
    for (int c = 0; c < n; ++c) compOfCol[c] = compIndex(dsu.find(n + c));
    const int nComp = static_cast<int>(compIds.size());

    std::vector<std::vector<int>> compRows(nComp), compCols(nComp);
    for (int r = 0; r < n; ++r) compRows[compOfRow[r]].push_back(r);
    for (int c = 0; c < n; ++c) compCols[compOfCol[c]].push_back(c);
    for (int k = 0; k < nComp; ++k)
        if (compRows[k].size() != compCols[k].size()) return {Rat(0), {}};

    // Row permutation aligning each component's rows with its columns gives a
    // block-diagonal matrix; track the permutation sign.
    std::vector<int> perm(n);
    for (int k = 0; k < nComp; ++k)
        for (std::size_t i = 0; i < compRows[k].size(); ++i) perm[compCols[k][i]] = compRows[k][i];
    int sign = permutationSign(perm);

    DetComponents out{factor * sign, {}};
    for (int k = 0; k < nComp; ++k) {
        const auto& rs = compRows[k];
        const auto& cs = compCols[k];
        std::vector<std::vector<Polynomial>> block(rs.size(),
                                                   std::vector<Polynomial>(cs.size(), Polynomial(arity)));
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) block[i][j] = std::move(work[rs[i]][cs[j]]);
        Polynomial d = detBareiss(std::move(block), arity);
        if (d.isZero()) return {Rat(0), {}};
        out.blocks.push_back(std::move(d));
    }
    return out;
}

Polynomial detFractionFree(const PolyMatrix& mat) {
    DetComponents c = detFractionFreeComponents(mat);
    Polynomial det = Polynomial::constant(mat.arity(), c.scalar);
    for (const auto& b : c.blocks) det = det * b;
    return det;
}

Polynomial detCofactor(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const int n = m.rows();
    std::function<Polynomial(std::vector<int>, std::vector<int>)> go =
        [&](std::vector<int> rs, std::vector<int> cs) -> Polynomial {
        if (rs.empty()) return Polynomial::constant(m.arity(), Rat(1));
        Polynomial acc(m.arity());
        for (std::size_t j = 0; j < cs.size(); ++j) {
            const Polynomial& e = m.at(rs[0], cs[j]);
            if (e.isZero()) continue;
            std::vector<int> rs2(rs.begin() + 1, rs.end());
            std::vector<int> cs2 = cs;
            cs2.erase(cs2.begin() + j);
            Polynomial minor = go(rs2, cs2);
            Polynomial term = e * minor;
            if (j % 2) term = -term;
            acc += term;
        }
        return acc;
    };
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    return go(idx, idx);
}

int rankRational(std::vector<std::vector<Rat>> a) {
    int rank = 0;
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    std::vector<bool> usedRow(rows, false);
    for (;;) {
        int pr = -1, pc = -1;
        for (int r = 0; r < rows && pr < 0; ++r) {
            if (usedRow[r]) continue;
            for (int c = 0; c < cols; ++c)
                if (a[r][c] != 0) {
                    pr = r;
                    pc = c;
                    break;
                }
        }
        if (pr < 0) break;
        ++rank;
        usedRow[pr] = true;
        for (int r = 0; r < rows; ++r) {
            if (usedRow[r] || a[r][pc] == 0) continue;
            Rat f = a[r][pc] / a[pr][pc];
            for (int c = 0; c < cols; ++c) a[r][c] -= f * a[pr][c];
        }
    }
    return rank;
}

int rankAtPoint(const PolyMatrix& m, const std::vector<Rat>& point) {
    return rankRational(m.evaluate(point));
}

LinearSolveOutcome solveLinearExact(std::vector<std::vector<Polynomial>> a,
                                    std::vector<Polynomial> b, int arity) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    std::vector<std::vector<Polynomial>> orig = a;
    std::vector<Polynomial> rhs = b;

    std::vector<int> pivotRowOf(cols, -1);
    Polynomial prev = Polynomial::constant(arity, Rat(1));
    int rr = 0;
    for (int c = 0; c < cols && rr < rows; ++c) {
        int pr = -1;
        std::size_t best = 0;
        for (int r = rr; r < rows; ++r) {
            if (a[r][c].isZero()) continue;
            if (pr < 0 || a[r][c].termCount() < best) {
                pr = r;
                best = a[r][c].termCount();
            }
        }
        if (pr < 0) continue;
        std::swap(a[pr], a[rr]);
        std::swap(b[pr], b[rr]);
        for (int r = rr + 1; r < rows; ++r) {
            for (int cc = c + 1; cc < cols; ++cc)
                a[r][cc] = (a[r][cc] * a[rr][c] - a[r][c] * a[rr][cc]).divideExact(prev);
            b[r] = (b[r] * a[rr][c] - a[r][c] * b[rr]).divideExact(prev);
            a[r][c] = Polynomial(arity);
        }
        prev = a[rr][c];
        pivotRowOf[c] = rr;
        ++rr;
    }
    for (int r = rr; r < rows; ++r)
        if (!b[r].isZero()) return {LinearSolveOutcome::Status::inconsistent, {}};

    std::vector<Polynomial> x(cols, Polynomial(arity));
    for (int c = cols - 1; c >= 0; --c) {
        int r = pivotRowOf[c];
        if (r < 0) continue;
        Polynomial acc = b[r];
        for (int cc = c + 1; cc < cols; ++cc) acc -= a[r][cc] * x[cc];
        auto q = acc.tryDivide(a[r][c]);
        if (!q) return {LinearSolveOutcome::Status::nonPolynomial, {}};
        x[c] = std::move(*q);
    }
    for (int r = 0; r < rows; ++r) {
        Polynomial acc = rhs[r];
        for (int c = 0; c < cols; ++c) acc -= orig[r][c] * x[c];
        if (!acc.isZero()) return {LinearSolveOutcome::Status::inconsistent, {}};
    }
    return {LinearSolveOutcome::Status::ok, std::move(x)};
}

}  // namespace qshap::alg
