#include "qshap/centre.hpp"

#include <functional>
#include <sstream>

namespace qshap::cent {

using cliff::CliffordElement;
using uea::GenTable;
using uea::Mono;
using uea::UEAElement;

namespace {

Polynomial swapVars(const Polynomial& p, int a, int b) {
    std::map<int, Polynomial> subs;
    for (int v = 0; v < p.arity(); ++v) {
        int target = v == a ? b : (v == b ? a : v);
        subs.emplace(v, Polynomial::variable(p.arity(), target));
    }
    return p.substituteAll(subs, p.arity());
}

// -(h_1 + ... + h_{n-1}), the substituted value of h_n for pq/psq.
Polynomial lastVarImage(int arity, int n) {
    Polynomial s(arity);
    for (int v = 0; v + 1 < n; ++v) s -= Polynomial::variable(arity, v);
    return s;
}

}  // namespace

ZMembershipResult zMembership(const AlgebraKind& kind, const Polynomial& phi) {
    const int n = kind.n;
    if (phi.arity() != n)
        throw alg::ArityMismatch("phi must have arity n = " + std::to_string(n));
    if (kind.isReduced() && phi.maxExponent(n - 1) != 0)
        throw alg::ArityMismatch("phi for " + kind.str() + " must not involve h" +
                                 std::to_string(n));

    // W-invariance under the adjacent transpositions.
    for (int i = 1; i < n; ++i) {
        Polynomial moved;
        if (!kind.isReduced() || i + 1 < n) {
            moved = swapVars(phi, i - 1, i);
        } else {
            // (n-1, n) acting on the constrained coordinates.
            moved = phi.substituteVar(i - 1, lastVarImage(n, n));
        }
        if (!(moved == phi))
            return {false, "not W-invariant under the transposition (" + std::to_string(i) + " " +
                               std::to_string(i + 1) + ")"};
    }

    // Z_alpha: restrict to h_albar = 0 and walk along alpha with a fresh line
    // parameter; the result must not depend on the parameter.
    for (const auto& alpha : roots::positiveRoots(n)) {
        Polynomial rest(n);
        int cSlot;
        if (!kind.isReduced() || alpha.j < n) {
            // h_i := t - c, h_j := -t + c with t in slot i-1 and c in slot j-1.
            std::map<int, Polynomial> subs;
            Polynomial value = Polynomial::variable(n, alpha.i - 1) -
                               Polynomial::variable(n, alpha.j - 1);
            for (int v = 0; v < n; ++v) {
                if (v == alpha.i - 1)
                    subs.emplace(v, value);
                else if (v == alpha.j - 1)
                    subs.emplace(v, -value);
                else
                    subs.emplace(v, Polynomial::variable(n, v));
            }
            rest = phi.substituteAll(subs, n);
            cSlot = alpha.j - 1;
        } else {
            // alpha = (i, n) for pq/psq; the free slot n-1 becomes the line
            // parameter.
            cSlot = n - 1;
            Polynomial shifted = phi.substituteVar(
                alpha.i - 1,
                Polynomial::variable(n, alpha.i - 1) - Polynomial::variable(n, cSlot));
            // h_albar(lambda) = 0 becomes sum_{k<n, k != i} h_k = 0.
            int m = alpha.i == 1 ? 2 : 1;
            Polynomial value(n);
            for (int k = 1; k < n; ++k)
                if (k != alpha.i && k != m) value -= Polynomial::variable(n, k - 1);
            rest = shifted.substituteVar(m - 1, value);
        }
        if (rest.maxExponent(cSlot) != 0) {
            Polynomial remainder = rest - rest.evaluateVar(cSlot, Rat(0));
            return {false, "fails the line condition at root (" + std::to_string(alpha.i) + "," +
                               std::to_string(alpha.j) + "); remainder " + remainder.str()};
        }
    }
    return {true, ""};
}

Polynomial tG(const AlgebraKind& kind) {
    Polynomial th = cliff::tHElement(kind).second;
    Polynomial prod = Polynomial::constant(kind.n, Rat(1));
    for (const auto& alpha : roots::positiveRoots(kind.n))
        prod = prod * roots::hAlbarPoly(kind.n, alpha);
    return roots::reducePoly(kind, th * prod * prod);
}

namespace {

std::vector<Mono> weightZeroMonos(const GenTable& t, int degreeBound, std::size_t cap) {
    std::vector<Mono> out;
    Mono cur(t.size(), 0);
    std::function<void(int, int)> go = [&](int g, int left) {
        if (g == t.size()) {
            auto w = uea::monoWeightEps(t, cur);
            for (int v : w)
                if (v != 0) return;
            out.push_back(cur);
            if (out.size() > cap) throw std::runtime_error("invariant search monomial cap exceeded");
            return;
        }
        int maxe = t.odd[g] ? 1 : left;
        for (int e = 0; e <= maxe; ++e) {
            cur[g] = static_cast<std::uint8_t>(e);
            go(g + 1, left - e);
        }
        cur[g] = 0;
    };
    go(0, degreeBound);
    return out;
}

// Nullspace basis over Q of the sparse constraint system.
std::vector<std::vector<Rat>> nullspace(const std::map<Mono, std::map<int, Rat>>& rows, int cols) {
    std::vector<std::vector<Rat>> m;
    m.reserve(rows.size());
    for (const auto& [mono, row] : rows) {
        (void)mono;
        std::vector<Rat> dense(cols, Rat(0));
        for (const auto& [c, v] : row) dense[c] = v;
        m.push_back(std::move(dense));
    }
    const int nr = static_cast<int>(m.size());
    std::vector<int> pivotCol;
    int rr = 0;
    for (int c = 0; c < cols && rr < nr; ++c) {
        int pr = -1;
        for (int r = rr; r < nr; ++r)
            if (m[r][c] != 0) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(m[pr], m[rr]);
        Rat inv = m[rr][c];
        for (int cc = c; cc < cols; ++cc) m[rr][cc] /= inv;
        for (int r = 0; r < nr; ++r) {
            if (r == rr || m[r][c] == 0) continue;
            Rat f = m[r][c];
            for (int cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rr][cc];
        }
        pivotCol.push_back(c);
        ++rr;
    }
    std::vector<bool> isPivot(cols, false);
    for (int c : pivotCol) isPivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (int c = 0; c < cols; ++c) {
        if (isPivot[c]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[c] = 1;
        for (int r = 0; r < rr; ++r)
            if (m[r][c] != 0) v[pivotCol[r]] = -m[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

InvariantSearchResult invariantSearch(const AlgebraKind& kind, int degreeBound, bool twisted,
                                      std::size_t monomialCap) {
    const GenTable& t = GenTable::get(kind);
    InvariantSearchResult res;
    res.degreeBound = degreeBound;
    res.twisted = twisted;

    std::vector<Mono> all = weightZeroMonos(t, degreeBound, monomialCap);
    for (int parity = 0; parity <= 1; ++parity) {
        std::vector<Mono> monos;
        for (const auto& m : all)
            if (static_cast<int>(uea::monoIsOdd(t, m)) == parity) monos.push_back(m);
        if (monos.empty()) continue;
        const int cols = static_cast<int>(monos.size());

        std::map<Mono, std::map<int, Rat>> rows;
        for (int g = 0; g < t.size(); ++g) {
            UEAElement gen = UEAElement::fromMono(
                t, [&] { Mono m(t.size(), 0); m[g] = 1; return m; }(), Rat(1));
            for (int c = 0; c < cols; ++c) {
                UEAElement z = UEAElement::fromMono(t, monos[c], Rat(1));
                UEAElement r = twisted ? uea::adPrime(gen, z) : uea::superCommutator(gen, z);
                for (const auto& [m, v] : r.terms()) {
                    // Separate row blocks per generator: tag by appending g.
                    Mono key = m;
                    key.push_back(static_cast<std::uint8_t>(g));
                    rows[key][c] += v;
                }
            }
        }
        for (auto it = rows.begin(); it != rows.end();) {
            bool allZero = true;
            for (const auto& [c, v] : it->second) allZero = allZero && v == 0;
            it = allZero ? rows.erase(it) : std::next(it);
        }
        for (const auto& vec : nullspace(rows, cols)) {
            UEAElement z(t);
            for (int c = 0; c < cols; ++c)
                if (vec[c] != 0) z.addTerm(monos[c], vec[c]);
            if (z.isZero()) continue;
            CliffordElement hc = uea::hcProject(z);
            if (kind.isReduced()) {
                CliffordElement red(kind);
                for (const auto& [m, p] : hc.comps) red.add(m, roots::reducePoly(kind, p));
                hc = red;
            }
            res.basis.push_back(std::move(z));
            res.hcImages.push_back(std::move(hc));
        }
    }
    return res;
}

namespace {

// Left-coefficient coordinates of an element of U(b^-)_{-nu} over the weight
// basis x_p H_B: index = partition * 2^N + mask, value in A.
std::vector<Polynomial> ubMinusCoords(const UEAElement& a, const AlgebraKind& kind,
                                      const std::vector<Mono>& minusMonos,
                                      const RootVector& nu) {
    const GenTable& t = a.table();
    const int N = kind.oddCartanDim();
    const int nMasks = 1 << N;
    std::vector<Polynomial> out(minusMonos.size() * nMasks, Polynomial(kind.n));
    if (a.isZero()) return out;

    const int fFirst = t.first(roots::Species::f);
    const int hFirst = t.first(roots::Species::h);
    const int HFirst = t.first(roots::Species::H);
    const int hCount = t.count(roots::Species::h);
    const int HCount = t.count(roots::Species::H);

    // Lookup from the f/F exponent pattern to the partition index.
    std::map<std::vector<std::uint8_t>, int> partOf;
    for (std::size_t p = 0; p < minusMonos.size(); ++p) {
        std::vector<std::uint8_t> pat(minusMonos[p].begin() + fFirst,
                                      minusMonos[p].begin() + hFirst);
        partOf[pat] = static_cast<int>(p);
    }

    auto nuEps = nu.epsCoords();
    std::map<int, Polynomial> shift;
    for (int v = 0; v < kind.n; ++v)
        shift.emplace(v, Polynomial::variable(kind.n, v) +
                             Polynomial::constant(kind.n, Rat(nuEps[v])));

    for (const auto& [m, c] : a.terms()) {
        for (int g = t.first(roots::Species::E); g < t.size(); ++g)
            if (m[g]) throw std::logic_error("ubMinusCoords: positive letters present");
        std::vector<std::uint8_t> pat(m.begin() + fFirst, m.begin() + hFirst);
        auto it = partOf.find(pat);
        if (it == partOf.end()) throw std::logic_error("ubMinusCoords: unknown weight pattern");
        std::uint32_t mask = 0;
        for (int k = 0; k < HCount; ++k)
            if (m[HFirst + k]) mask |= 1u << k;
        std::vector<unsigned> hexp(kind.n, 0);
        for (int v = 0; v < hCount; ++v) hexp[v] = m[hFirst + v];
        Polynomial coef =
            Polynomial::monomial(kind.n, hexp, c).substituteAll(shift, kind.n);
        out[it->second * nMasks + mask] += coef;
    }
    return out;
}

}  // namespace

CentralTruncation centralTruncation(const AlgebraKind& kind, const Polynomial& phi,
                                    int heightCutoff) {
    auto membership = zMembership(kind, phi);
    if (!membership.ok)
        throw MembershipFailure("phi is not in the centre image: " + membership.witness);

    const GenTable& t = GenTable::get(kind);
    const int n = kind.n;
    const int N = kind.oddCartanDim();
    const int nMasks = 1 << N;

    CentralTruncation result;
    result.phi = phi;

    UEAElement z0 = uea::fromClifford(t, cliff::clConstant(kind, phi));
    RootVector zero;
    zero.coeff.assign(n - 1, 0);
    result.zs.emplace(zero, z0);
    UEAElement zAll = z0;

    const int HFirst = t.first(roots::Species::H);
    for (const auto& nu : roots::rootVectorsUpToHeight(n, heightCutoff, false)) {
        auto minusMonos = shap::partitionMonos(kind, shap::Side::minus, nu);
        auto plusMonos = shap::partitionMonos(kind, shap::Side::plus, nu);
        const int tauNu = static_cast<int>(minusMonos.size());
        const int dimM = tauNu * nMasks;

        std::vector<UEAElement> vElems;
        for (int p = 0; p < tauNu; ++p)
            for (int mask = 0; mask < nMasks; ++mask) {
                Mono m = minusMonos[p];
                for (int k = 0; k < N; ++k)
                    if (mask & (1 << k)) m[HFirst + k] = 1;
                vElems.push_back(UEAElement::fromMono(t, m, Rat(1)));
            }

        // Unknowns: z_nu = sum c_{b,q} (x_b H_B) y_q.
        const int unknowns = dimM * tauNu;
        std::vector<UEAElement> yElems;
        for (int q = 0; q < tauNu; ++q)
            yElems.push_back(UEAElement::fromMono(t, plusMonos[q], Rat(1)));

        std::vector<std::vector<Polynomial>> A(
            static_cast<std::size_t>(dimM) * dimM,
            std::vector<Polynomial>(unknowns, Polynomial(n)));
        std::vector<Polynomial> rhs(static_cast<std::size_t>(dimM) * dimM, Polynomial(n));

        auto nuEps = nu.epsCoords();
        std::map<int, Polynomial> shift;
        for (int v = 0; v < n; ++v)
            shift.emplace(v, Polynomial::variable(n, v) + Polynomial::constant(n, Rat(nuEps[v])));
        Polynomial phiShifted = phi.substituteAll(shift, n);

        for (int a = 0; a < dimM; ++a) {
            // Right-hand side: v phi - z_{<nu} v, in basis coordinates.
            UEAElement acted = uea::projectUbMinus(uea::multiply(zAll, vElems[a]));
            std::vector<Polynomial> rc = ubMinusCoords(acted, kind, minusMonos, nu);
            for (int bp = 0; bp < dimM; ++bp) {
                rhs[static_cast<std::size_t>(a) * dimM + bp] = -rc[bp];
                if (bp == a) rhs[static_cast<std::size_t>(a) * dimM + bp] += phiShifted;
            }
            for (int q = 0; q < tauNu; ++q) {
                UEAElement w = uea::projectUbMinus(uea::multiply(yElems[q], vElems[a]));
                if (w.isZero()) continue;
                for (int b = 0; b < dimM; ++b) {
                    UEAElement act = uea::multiply(vElems[b], w);
                    std::vector<Polynomial> ac = ubMinusCoords(act, kind, minusMonos, nu);
                    for (int bp = 0; bp < dimM; ++bp)
                        A[static_cast<std::size_t>(a) * dimM + bp][b * tauNu + q] = ac[bp];
                }
            }
        }

        alg::LinearSolveOutcome sol = alg::solveLinearExact(std::move(A), std::move(rhs), n);
        if (sol.status == alg::LinearSolveOutcome::Status::nonPolynomial)
            throw DivisibilityFailure("z_" + nu.str() + " requires a non-polynomial solution");
        if (sol.status == alg::LinearSolveOutcome::Status::inconsistent)
            throw DivisibilityFailure("no z_" + nu.str() + " satisfies the recursion");

        UEAElement zNu(t);
        for (int b = 0; b < dimM; ++b)
            for (int q = 0; q < tauNu; ++q) {
                const Polynomial& c = sol.x[b * tauNu + q];
                if (c.isZero()) continue;
                UEAElement cU = uea::fromClifford(t, cliff::clConstant(kind, c));
                zNu = zNu + uea::multiply(uea::multiply(cU, vElems[b]), yElems[q]);
            }
        result.zs.emplace(nu, zNu);
        zAll = zAll + zNu;
    }

    // Independent residual check of the defining identity on every basis
    // vector within the cutoff.
    bool ok = true;
    UEAElement phiU = uea::fromClifford(t, cliff::clConstant(kind, phi));
    for (const auto& nu : roots::rootVectorsUpToHeight(n, heightCutoff, true)) {
        auto minusMonos = shap::partitionMonos(kind, shap::Side::minus, nu);
        for (const auto& mm : minusMonos) {
            for (int mask = 0; mask < nMasks; ++mask) {
                Mono m = mm;
                for (int k = 0; k < N; ++k)
                    if (mask & (1 << k)) m[HFirst + k] = 1;
                UEAElement v = UEAElement::fromMono(t, m, Rat(1));
                UEAElement lhs = uea::projectUbMinus(uea::multiply(zAll, v));
                UEAElement rhsv = uea::multiply(v, phiU);
                ok = ok && lhs == rhsv;
            }
        }
    }
    result.residualZero = ok;
    return result;
}

}  // namespace qshap::cent
