#include "qshap/clifford.hpp"

#include <bit>
#include <sstream>

namespace qshap::cliff {

void CliffordElement::add(std::uint32_t mask, const Polynomial& p) {
    if (p.isZero()) return;
    auto it = comps.find(mask);
    if (it == comps.end()) {
        comps.emplace(mask, p);
    } else {
        it->second += p;
        if (it->second.isZero()) comps.erase(it);
    }
}

CliffordElement CliffordElement::operator+(const CliffordElement& o) const {
    CliffordElement r(*this);
    for (const auto& [m, p] : o.comps) r.add(m, p);
    return r;
}

CliffordElement CliffordElement::operator-(const CliffordElement& o) const {
    CliffordElement r(*this);
    for (const auto& [m, p] : o.comps) r.add(m, -p);
    return r;
}

CliffordElement CliffordElement::scaled(const Rat& c) const {
    CliffordElement r(kind);
    if (c == 0) return r;
    for (const auto& [m, p] : comps) r.comps.emplace(m, p.scaled(c));
    return r;
}

bool CliffordElement::operator==(const CliffordElement& o) const {
    return kind == o.kind && comps == o.comps;
}

int CliffordElement::filtrationDegree() const {
    int d = -1;
    for (const auto& [m, p] : comps)
        d = std::max(d, std::popcount(m) + p.totalDegree());
    return d;
}

int CliffordElement::cliffordDegree() const {
    int d = -1;
    for (const auto& [m, p] : comps) {
        (void)p;
        d = std::max(d, std::popcount(m));
    }
    return d;
}

std::string CliffordElement::str() const {
    if (comps.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, p] : comps) {
        if (!first) os << " + ";
        first = false;
        os << "(" << p.str() << ")*H{";
        bool fb = true;
        for (int k = 0; k < 32; ++k)
            if (m & (1u << k)) {
                if (!fb) os << ",";
                fb = false;
                os << (k + 1);
            }
        os << "}";
    }
    return os.str();
}

CliffordElement clConstant(const AlgebraKind& kind, const Polynomial& p) {
    CliffordElement r(kind);
    r.add(0, p);
    return r;
}

CliffordElement clBasis(const AlgebraKind& kind, std::uint32_t mask) {
    CliffordElement r(kind);
    r.add(mask, Polynomial::constant(kind.n, Rat(1)));
    return r;
}

Polynomial gramForm(const AlgebraKind& kind, int i, int j) {
    auto parts = roots::bracket(kind, {roots::Species::H, i, 0}, {roots::Species::H, j, 0});
    Polynomial g(kind.n);
    for (const auto& [c, gen] : parts) {
        if (gen.s != roots::Species::h)
            throw std::logic_error("odd Cartan bracket left the even Cartan");
        g += Polynomial::variable(kind.n, gen.i - 1).scaled(c);
    }
    return g;
}

namespace {

struct GramTable {
    std::vector<std::vector<Polynomial>> g;  // 0-based
    static const GramTable& get(const AlgebraKind& kind) {
        thread_local std::map<std::pair<int, int>, GramTable> cache;
        auto key = std::make_pair(static_cast<int>(kind.family), kind.n);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        GramTable t;
        int N = kind.oddCartanDim();
        t.g.assign(N, std::vector<Polynomial>(N, Polynomial(kind.n)));
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) t.g[a][b] = gramForm(kind, a + 1, b + 1);
        return cache.emplace(key, std::move(t)).first->second;
    }
};

// (H-product for `mask`) * H'_{k+1}, both 0-based bit positions.
void mulGenInto(CliffordElement& out, std::uint32_t mask, const Polynomial& coef, int k,
                const std::vector<std::vector<Polynomial>>& g) {
    if (coef.isZero()) return;
    int top = mask == 0 ? -1 : 31 - std::countl_zero(mask);
    if (top < k) {
        out.add(mask | (1u << k), coef);
        return;
    }
    std::uint32_t pre = mask & ~(1u << top);
    if (k == top) {
        // H'_k H'_k = (1/2) [H'_k, H'_k]
        out.add(pre, coef * g[k][k].scaled(Rat(1, 2)));
        return;
    }
    // H'_top H'_k = -H'_k H'_top + [H'_top, H'_k]
    CliffordElement tmp(out.kind);
    mulGenInto(tmp, pre, coef, k, g);
    for (const auto& [m, p] : tmp.comps) out.add(m | (1u << top), -p);
    out.add(pre, coef * g[top][k]);
}

}  // namespace

CliffordElement clMul(const CliffordElement& a, const CliffordElement& b) {
    if (!(a.kind == b.kind)) throw std::invalid_argument("clMul kind mismatch");
    const auto& g = GramTable::get(a.kind).g;
    CliffordElement acc(a.kind);
    for (const auto& [mb, pb] : b.comps) {
        // Multiply every component of `a` by H_{mb} one generator at a time.
        CliffordElement cur(a.kind);
        for (const auto& [ma, pa] : a.comps) cur.add(ma, pa * pb);
        for (int k = 0; k < 32; ++k) {
            if (!(mb & (1u << k))) continue;
            CliffordElement next(a.kind);
            for (const auto& [m, p] : cur.comps) mulGenInto(next, m, p, k, g);
            cur = std::move(next);
        }
        for (const auto& [m, p] : cur.comps) acc.add(m, p);
    }
    return acc;
}

CliffordElement sigmaCl(const CliffordElement& a) {
    CliffordElement out(a.kind);
    for (const auto& [mask, p] : a.comps) {
        // Reversed product of the generators of `mask`.
        CliffordElement prod = clConstant(a.kind, Polynomial::constant(a.kind.n, Rat(1)));
        for (int k = 31; k >= 0; --k)
            if (mask & (1u << k)) prod = clMul(prod, clBasis(a.kind, 1u << k));
        int sz = std::popcount(mask);
        Rat sign((sz % 2) ? -1 : 1);
        for (const auto& [m, q] : prod.comps) out.add(m, (p * q).scaled(sign));
    }
    return out;
}

CliffordElement adPrimeGen(int k, const CliffordElement& u) {
    CliffordElement Hk = clBasis(u.kind, 1u << (k - 1));
    CliffordElement out(u.kind);
    for (const auto& [m, p] : u.comps) {
        CliffordElement comp(u.kind);
        comp.add(m, p);
        CliffordElement left = clMul(Hk, comp);
        CliffordElement right = clMul(comp, Hk);
        int sign = (std::popcount(m) % 2) ? -1 : 1;  // +uH for even u, -uH for odd u
        out = out + left + right.scaled(Rat(sign));
    }
    return out;
}

Polynomial integral(const CliffordElement& a) {
    const std::uint32_t top = (1u << a.kind.oddCartanDim()) - 1;
    auto it = a.comps.find(top);
    return it == a.comps.end() ? Polynomial(a.kind.n) : it->second;
}

namespace {

// Solves sum_J x_J * basisExp[J] = target over A by fraction-free elimination
// plus exact back-division; verifies the solution exactly.
std::vector<Polynomial> solveCliffordCoords(const AlgebraKind& kind,
                                            const std::vector<CliffordElement>& basisExp,
                                            const CliffordElement& target) {
    const int unknowns = static_cast<int>(basisExp.size());
    // Collect all masks that occur.
    std::vector<std::uint32_t> masks;
    auto noteMask = [&](std::uint32_t m) {
        for (auto x : masks)
            if (x == m) return;
        masks.push_back(m);
    };
    for (const auto& e : basisExp)
        for (const auto& [m, p] : e.comps) noteMask(m);
    for (const auto& [m, p] : target.comps) noteMask(m);

    const int rows = static_cast<int>(masks.size());
    const int arity = kind.n;
    std::vector<std::vector<Polynomial>> A(rows, std::vector<Polynomial>(unknowns + 1, Polynomial(arity)));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < unknowns; ++c) {
            auto it = basisExp[c].comps.find(masks[r]);
            if (it != basisExp[c].comps.end()) A[r][c] = it->second;
        }
        auto it = target.comps.find(masks[r]);
        if (it != target.comps.end()) A[r][unknowns] = it->second;
    }

    // Fraction-free forward elimination.
    std::vector<int> pivotRow(unknowns, -1);
    Polynomial prev = Polynomial::constant(arity, Rat(1));
    int rr = 0;
    for (int c = 0; c < unknowns && rr < rows; ++c) {
        int pr = -1;
        for (int r = rr; r < rows; ++r)
            if (!A[r][c].isZero()) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(A[pr], A[rr]);
        for (int r = rr + 1; r < rows; ++r) {
            for (int cc = c + 1; cc <= unknowns; ++cc)
                A[r][cc] = (A[r][cc] * A[rr][c] - A[r][c] * A[rr][cc]).divideExact(prev);
            A[r][c] = Polynomial(arity);
        }
        prev = A[rr][c];
        pivotRow[c] = rr;
        ++rr;
    }
    // Back substitution with exact division.
    std::vector<Polynomial> x(unknowns, Polynomial(arity));
    for (int c = unknowns - 1; c >= 0; --c) {
        if (pivotRow[c] < 0) continue;  // free unknown: zero
        int r = pivotRow[c];
        Polynomial rhs = A[r][unknowns];
        for (int cc = c + 1; cc < unknowns; ++cc) rhs -= A[r][cc] * x[cc];
        x[c] = rhs.divideExact(A[r][c]);
    }
    // Exact verification.
    CliffordElement check(kind);
    for (int c = 0; c < unknowns; ++c)
        for (const auto& [m, p] : basisExp[c].comps) check.add(m, p * x[c]);
    if (!(check == target)) throw std::logic_error("Clifford coordinate solve failed");
    return x;
}

}  // namespace

std::pair<CliffordElement, Polynomial> tHElement(const AlgebraKind& kind) {
    const int n = kind.n;
    const int N = kind.oddCartanDim();
    CliffordElement T(kind);
    if (kind.fullOddCartan()) {
        T.add((1u << N) - 1, Polynomial::constant(n, Rat(1)));
    } else {
        // Alternating sum of the (n-1)-fold products of H_1..H_n, expressed
        // over the trace-free basis: expand each basis product in the q(n)
        // Clifford algebra and solve for the coordinates.
        AlgebraKind qkind(roots::Family::q, n);
        std::vector<CliffordElement> basisExp;
        std::vector<std::uint32_t> sqMasks;
        for (std::uint32_t J = 0; J < (1u << N); ++J) {
            CliffordElement prod = clConstant(qkind, Polynomial::constant(n, Rat(1)));
            for (int k = 0; k < N; ++k) {
                if (!(J & (1u << k))) continue;
                CliffordElement diff(qkind);
                diff.add(1u << k, Polynomial::constant(n, Rat(1)));
                diff.add(1u << (k + 1), Polynomial::constant(n, Rat(-1)));
                prod = clMul(prod, diff);
            }
            basisExp.push_back(prod);
            sqMasks.push_back(J);
        }
        CliffordElement t(qkind);
        for (int i = 1; i <= n; ++i) {
            std::uint32_t m = ((1u << n) - 1) & ~(1u << (i - 1));
            t.add(m, Polynomial::constant(n, Rat(i % 2 ? -1 : 1)));
        }
        std::vector<Polynomial> coords = solveCliffordCoords(qkind, basisExp, t);
        for (std::size_t k = 0; k < coords.size(); ++k) T.add(sqMasks[k], coords[k]);
    }

    CliffordElement sq = clMul(T, T);
    if (sq.cliffordDegree() > 0) throw std::logic_error("T_h^2 is not in A");
    Polynomial tval = sq.comps.empty() ? Polynomial(n) : sq.comps.begin()->second;

    // Closed form, up to sign: prod h_i for the full odd Cartan, else the
    // sum of the (n-1)-fold products of distinct h_i.
    Polynomial closed(n);
    if (kind.fullOddCartan()) {
        closed = Polynomial::constant(n, Rat(1));
        for (int i = 0; i < n; ++i) closed = closed * Polynomial::variable(n, i);
    } else {
        for (int i = 0; i < n; ++i) {
            Polynomial term = Polynomial::constant(n, Rat(1));
            for (int j = 0; j < n; ++j)
                if (j != i) term = term * Polynomial::variable(n, j);
            closed += term;
        }
    }
    if (!(tval == closed) && !(tval == -closed))
        throw std::logic_error("t_h does not match its closed form up to sign");
    return {T, tval};
}

PolyMatrix gramMatrix(const AlgebraKind& kind) {
    const int N = kind.oddCartanDim();
    const int size = 1 << N;
    PolyMatrix m(size, size, kind.n);
    for (int J = 0; J < size; ++J) {
        CliffordElement sj = sigmaCl(clBasis(kind, static_cast<std::uint32_t>(J)));
        for (int Jp = 0; Jp < size; ++Jp)
            m.at(J, Jp) = integral(clMul(sj, clBasis(kind, static_cast<std::uint32_t>(Jp))));
    }
    return m;
}

CliffordPointData cliffordPointData(const AlgebraKind& kind, const roots::Weight& lambda) {
    roots::checkWeight(kind, lambda);
    const int N = kind.oddCartanDim();
    std::vector<std::vector<Rat>> B(N, std::vector<Rat>(N));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) B[a][b] = gramForm(kind, a + 1, b + 1).evaluate(lambda);
    int rank = alg::rankRational(B);
    CliffordPointData d;
    d.c = N - rank;
    d.dimE = 1L << ((N + 1 - d.c) / 2);
    d.r = (1L << N) / d.dimE;
    return d;
}

}  // namespace qshap::cliff
