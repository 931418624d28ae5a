#include "qshap/shapovalov.hpp"

#include <bit>
#include <functional>
#include <mutex>
#include <sstream>

namespace qshap::shap {

using cliff::CliffordElement;
using uea::GenTable;
using uea::Mono;
using uea::UEAElement;

int PartitionVector::weightNorm() const {
    int s = 0;
    for (const auto& [k, kb] : parts) s += k + kb;
    return s;
}

namespace {

// Simple-root coefficient vector of a positive root.
std::vector<int> rootCoeffs(int n, const Root& alpha) {
    std::vector<int> c(n - 1, 0);
    for (int k = alpha.i; k < alpha.j; ++k) c[k - 1] = 1;
    return c;
}

}  // namespace

std::vector<PartitionVector> partitions(int n, const RootVector& nu) {
    if (static_cast<int>(nu.coeff.size()) != n - 1)
        throw std::invalid_argument("root vector rank mismatch");
    std::vector<PartitionVector> out;
    if (!nu.inQPlus()) return out;
    auto rootsList = roots::positiveRoots(n);
    std::vector<std::vector<int>> rc;
    for (const auto& a : rootsList) rc.push_back(rootCoeffs(n, a));
    PartitionVector cur;
    cur.parts.assign(rootsList.size(), {0, 0});
    std::function<void(std::size_t, std::vector<int>)> go = [&](std::size_t idx,
                                                                std::vector<int> rem) {
        bool zero = true;
        for (int v : rem) zero = zero && v == 0;
        if (idx == rootsList.size()) {
            if (zero) out.push_back(cur);
            return;
        }
        // Largest multiple of this root fitting under rem.
        int cap = 0;
        for (int m = 1;; ++m) {
            bool fits = true;
            for (std::size_t v = 0; v < rem.size(); ++v) fits = fits && m * rc[idx][v] <= rem[v];
            if (!fits) break;
            cap = m;
        }
        for (int k = 0; k <= cap; ++k) {
            for (int kb = 0; kb <= 1 && k + kb <= cap; ++kb) {
                std::vector<int> rem2 = rem;
                for (std::size_t v = 0; v < rem.size(); ++v) rem2[v] -= (k + kb) * rc[idx][v];
                cur.parts[idx] = {k, kb};
                go(idx + 1, std::move(rem2));
            }
        }
        cur.parts[idx] = {0, 0};
    };
    go(0, nu.coeff);
    return out;
}

long tau(int n, const RootVector& nu) {
    if (!nu.inQPlus()) return 0;
    static std::mutex mu;
    static std::map<std::pair<int, std::vector<int>>, long> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({n, nu.coeff});
        if (it != cache.end()) return it->second;
    }
    long v = static_cast<long>(partitions(n, nu).size());
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_pair(n, nu.coeff), v);
    return v;
}

long tauAlpha(int n, const RootVector& nu, const Root& alpha) {
    if (!nu.inQPlus()) return 0;
    auto rootsList = roots::positiveRoots(n);
    std::size_t idx = 0;
    while (idx < rootsList.size() && !(rootsList[idx] == alpha)) ++idx;
    if (idx == rootsList.size()) throw std::invalid_argument("tauAlpha: not a positive root");
    long count = 0;
    for (const auto& p : partitions(n, nu))
        if (p.parts[idx].second == 0) ++count;
    return count;
}

namespace {

// The H_J legs, expanded over the kind's own Clifford basis.
std::vector<CliffordElement> cliffBasisProducts(const AlgebraKind& kind, CliffBasis basis) {
    const int N = kind.oddCartanDim();
    std::vector<CliffordElement> vecs;  // basis vectors as Clifford elements
    for (int k = 0; k < N; ++k) {
        CliffordElement v(kind);
        if (basis == CliffBasis::standard) {
            v.add(1u << k, Polynomial::constant(kind.n, Rat(1)));
        } else {
            if (!kind.fullOddCartan())
                throw std::invalid_argument("split Clifford basis requires q or pq");
            // H_k - H_{k+1} for k < N-1 seen 0-based, and H_n last.
            if (k + 1 < N) {
                v.add(1u << k, Polynomial::constant(kind.n, Rat(1)));
                v.add(1u << (k + 1), Polynomial::constant(kind.n, Rat(-1)));
            } else {
                v.add(1u << (N - 1), Polynomial::constant(kind.n, Rat(1)));
            }
        }
        vecs.push_back(v);
    }
    std::vector<CliffordElement> prods;
    prods.reserve(1u << N);
    for (std::uint32_t mask = 0; mask < (1u << N); ++mask) {
        CliffordElement p = cliff::clConstant(kind, Polynomial::constant(kind.n, Rat(1)));
        for (int k = 0; k < N; ++k)
            if (mask & (1u << k)) p = cliff::clMul(p, vecs[k]);
        prods.push_back(p);
    }
    return prods;
}

struct WeightBasisParts {
    std::vector<Mono> minusMonos;  // f/F exponents per partition
    std::vector<Mono> plusMonos;   // E/e exponents per partition
    std::vector<int> minusOddLetters, plusOddLetters;
};

WeightBasisParts basisParts(const GenTable& t, const RootVector& nu) {
    const AlgebraKind& kind = t.kind;
    WeightBasisParts parts;
    auto rootsList = roots::positiveRoots(kind.n);
    for (const auto& p : partitions(kind.n, nu)) {
        Mono mMinus(t.size(), 0), mPlus(t.size(), 0);
        int oddM = 0, oddP = 0;
        for (std::size_t r = 0; r < rootsList.size(); ++r) {
            const auto& [k, kb] = p.parts[r];
            const Root& al = rootsList[r];
            if (k > 0) {
                mMinus[t.idOf({roots::Species::f, al.i, al.j})] = static_cast<std::uint8_t>(k);
                mPlus[t.idOf({roots::Species::e, al.i, al.j})] = static_cast<std::uint8_t>(k);
            }
            if (kb) {
                mMinus[t.idOf({roots::Species::F, al.i, al.j})] = 1;
                mPlus[t.idOf({roots::Species::E, al.i, al.j})] = 1;
                ++oddM;
                ++oddP;
            }
        }
        parts.minusMonos.push_back(mMinus);
        parts.plusMonos.push_back(mPlus);
        parts.minusOddLetters.push_back(oddM);
        parts.plusOddLetters.push_back(oddP);
    }
    return parts;
}

}  // namespace

std::vector<Mono> partitionMonos(const AlgebraKind& kind, Side side, const RootVector& nu) {
    const GenTable& t = GenTable::get(kind);
    WeightBasisParts parts = basisParts(t, nu);
    return side == Side::minus ? parts.minusMonos : parts.plusMonos;
}

std::vector<UEAElement> pbwWeightBasis(const AlgebraKind& kind, Side side, const RootVector& nu,
                                       CliffBasis basis) {
    if (!nu.inQPlus()) throw std::invalid_argument("nu must lie in Q+");
    const GenTable& t = GenTable::get(kind);
    WeightBasisParts parts = basisParts(t, nu);
    auto prods = cliffBasisProducts(kind, basis);
    const auto& monos = side == Side::minus ? parts.minusMonos : parts.plusMonos;
    std::vector<UEAElement> out;
    for (const auto& m : monos) {
        UEAElement base = UEAElement::fromMono(t, m, Rat(1));
        for (const auto& hj : prods)
            out.push_back(uea::multiply(base, uea::fromClifford(t, hj)));
    }
    return out;
}

PolyMatrix shapovalovMatrix(const AlgebraKind& kind, const RootVector& nu, CliffBasis basis) {
    if (!nu.inQPlus()) throw std::invalid_argument("nu must lie in Q+");
    const GenTable& t = GenTable::get(kind);
    const int N = kind.oddCartanDim();
    const std::uint32_t nMasks = 1u << N;
    const std::uint32_t full = nMasks - 1;
    WeightBasisParts parts = basisParts(t, nu);
    const int tauNu = static_cast<int>(parts.minusMonos.size());
    const int size = tauNu * static_cast<int>(nMasks);

    auto prods = cliffBasisProducts(kind, basis);
    std::vector<CliffordElement> sigmaProds;
    sigmaProds.reserve(nMasks);
    for (const auto& p : prods) sigmaProds.push_back(cliff::sigmaCl(p));

    // Generator masks occurring in each H_J product (used by the reachability
    // filter below).
    std::vector<std::vector<std::uint32_t>> supports(nMasks);
    for (std::uint32_t m = 0; m < nMasks; ++m)
        for (const auto& [mm, pp] : prods[m].comps) supports[m].push_back(mm);

    PolyMatrix B(size, size, kind.n);
    for (int j = 0; j < tauNu; ++j) {
        UEAElement sy = uea::sigma(UEAElement::fromMono(t, parts.plusMonos[j], Rat(1)));
        for (int i = 0; i < tauNu; ++i) {
            UEAElement prod = uea::multiply(sy, UEAElement::fromMono(t, parts.minusMonos[i], Rat(1)));
            CliffordElement C = uea::hcProject(prod);
            if (C.isZero()) continue;
            for (std::uint32_t J = 0; J < nMasks; ++J) {
                CliffordElement left = cliff::clMul(sigmaProds[J], C);
                for (std::uint32_t I = 0; I < nMasks; ++I) {
                    // The top product can only appear when some component pair
                    // jointly covers it with the right total degree parity.
                    bool reachable = false;
                    for (const auto& [mk, pk] : left.comps) {
                        for (std::uint32_t mi : supports[I]) {
                            int totalDeg = std::popcount(mk) + std::popcount(mi);
                            if ((mk | mi) == full && totalDeg >= N && (totalDeg - N) % 2 == 0) {
                                reachable = true;
                                break;
                            }
                        }
                        if (reachable) break;
                    }
                    if (!reachable) continue;
                    Polynomial entry = cliff::integral(cliff::clMul(left, prods[I]));
                    if (entry.isZero()) continue;
                    int pRow = (parts.minusOddLetters[i] + std::popcount(I)) & 1;
                    int pCol = (parts.plusOddLetters[j] + std::popcount(J)) & 1;
                    if (pRow && pCol) entry = -entry;
                    B.at(i * nMasks + I, j * nMasks + J) = std::move(entry);
                }
            }
        }
    }
    if (kind.isReduced())
        B = B.mapEntries([&](const Polynomial& p) { return roots::reducePoly(kind, p); }, kind.n);
    return B;
}

std::vector<LinearFactor> closedFormNormFactors(const AlgebraKind& kind, const RootVector& nu) {
    if (!nu.inQPlus()) throw std::invalid_argument("nu must lie in Q+");
    const int n = kind.n;
    std::vector<LinearFactor> out;
    for (const auto& alpha : roots::positiveRoots(n)) {
        long e0 = tauAlpha(n, nu.minusRoot(alpha, 1), alpha);
        if (e0 > 0)
            out.push_back({roots::reducePoly(kind, roots::hAlbarPoly(n, alpha)), static_cast<int>(e0)});
        for (int r = 1;; ++r) {
            RootVector rest = nu.minusRoot(alpha, r);
            if (!rest.inQPlus()) break;
            long er = tau(n, rest);
            if (er > 0) {
                Polynomial base = roots::hAlphaPoly(n, alpha) -
                                  Polynomial::constant(n, Rat(r));
                out.push_back({roots::reducePoly(kind, base), static_cast<int>(er)});
            }
        }
    }
    return out;
}

Polynomial closedFormNorm(const AlgebraKind& kind, const RootVector& nu) {
    Polynomial p = Polynomial::constant(kind.n, Rat(1));
    for (const auto& f : closedFormNormFactors(kind, nu)) p = p * f.base.pow(f.exp);
    return p;
}

std::vector<LinearFactor> closedFormDetFactors(const AlgebraKind& kind, const RootVector& nu) {
    auto fs = closedFormNormFactors(kind, nu);
    const int mult = 1 << kind.oddCartanDim();
    for (auto& f : fs) f.exp *= mult;
    return fs;
}

Polynomial closedFormDet(const AlgebraKind& kind, const RootVector& nu) {
    Polynomial p = Polynomial::constant(kind.n, Rat(1));
    for (const auto& f : closedFormDetFactors(kind, nu)) p = p * f.base.pow(f.exp);
    return p;
}

std::string factorsStr(const Rat& scalar, const std::vector<LinearFactor>& fs, int arity) {
    std::ostringstream os;
    os << alg::ratStr(scalar);
    for (const auto& f : fs) {
        os << " * (" << f.base.str(alg::hVarNames(arity)) << ")";
        if (f.exp != 1) os << "^" << f.exp;
    }
    return os.str();
}

std::string ShapovalovReport::detStr() const {
    if (detExpanded) return detExpanded->str();
    return factorsStr(scalar, detFactors, kind.n);
}

std::string ShapovalovReport::json() const {
    std::ostringstream os;
    os << "{\"schema\":\"qshap/1\",\"kind\":\"" << roots::familyName(kind.family)
       << "\",\"n\":" << kind.n << ",\"nu\":[" << nu.str() << "],\"size\":" << size;
    if (matrix) {
        os << ",\"matrix\":[";
        for (int r = 0; r < matrix->rows(); ++r) {
            if (r) os << ",";
            os << "[";
            for (int c = 0; c < matrix->cols(); ++c) {
                if (c) os << ",";
                os << "\"" << matrix->at(r, c).str() << "\"";
            }
            os << "]";
        }
        os << "]";
    }
    os << ",\"det\":\"" << detStr() << "\"";
    os << ",\"closedForm\":\"" << factorsStr(Rat(1), detFactors, kind.n) << "\"";
    os << ",\"scalar\":\"" << alg::ratStr(scalar) << "\"";
    os << ",\"norm\":\"" << norm.str() << "\"";
    os << ",\"leadingOk\":" << (leadingOk ? "true" : "false");
    os << ",\"degreeOk\":" << (degreeOk ? "true" : "false") << "}";
    return os.str();
}

ShapovalovReport verifyFactorization(const AlgebraKind& kind, const RootVector& nu,
                                     bool keepMatrix) {
    const GenTable& t = GenTable::get(kind);
    (void)t;
    const int n = kind.n;
    const int N = kind.oddCartanDim();
    ShapovalovReport rep(kind, nu, n);

    // The split odd Cartan basis block-diagonalizes B for the full-odd-Cartan
    // kinds; the determinant changes by at most a sign.
    CliffBasis basis = (kind.fullOddCartan() && n >= 3) ? CliffBasis::split : CliffBasis::standard;
    rep.detBasis = basis;
    PolyMatrix B = shapovalovMatrix(kind, nu, basis);
    rep.size = B.rows();
    if (keepMatrix)
        rep.matrix = basis == CliffBasis::standard ? B : shapovalovMatrix(kind, nu);

    alg::DetComponents det = alg::detFractionFreeComponents(B);
    if (det.scalar == 0)
        throw FactorizationMismatch("det B_nu vanished identically", Polynomial(n));

    rep.detFactors = closedFormDetFactors(kind, nu);
    rep.norm = closedFormNorm(kind, nu);

    // Peel every claimed linear factor off some determinant block; the blocks
    // jointly carry the full multiplicity.
    std::vector<Polynomial> quot = det.blocks;
    for (const auto& f : rep.detFactors) {
        for (int k = 0; k < f.exp; ++k) {
            bool done = false;
            for (auto& q : quot) {
                auto d = q.tryDivide(f.base);
                if (d) {
                    q = std::move(*d);
                    done = true;
                    break;
                }
            }
            if (!done) {
                Polynomial witness = Polynomial::constant(n, Rat(1));
                for (const auto& q : quot) witness = witness * q;
                throw FactorizationMismatch(
                    "missing factor (" + f.base.str() + ") in det B_nu for " + kind.str() +
                        ", nu = " + nu.str(),
                    witness);
            }
        }
    }
    Rat scalar = det.scalar;
    for (const auto& q : quot) {
        if (!q.isConstant()) {
            Polynomial witness = Polynomial::constant(n, Rat(1));
            for (const auto& qq : quot) witness = witness * qq;
            throw FactorizationMismatch("non-constant quotient after removing the closed form",
                                        witness);
        }
        scalar *= q.constantValue();
    }
    if (scalar == 0)
        throw FactorizationMismatch("zero scalar", Polynomial(n));
    rep.scalar = scalar;

    // Leading term: scalar * prod_alpha h_alpha^{2^N sum_m tau(nu-m alpha)}
    //                        * h_albar^{2^N tauAlpha(nu-alpha)}.
    Polynomial lead = Polynomial::constant(n, det.scalar);
    for (const auto& b : det.blocks) lead = lead * b.leadingHomogeneous();
    Polynomial expect = Polynomial::constant(n, scalar);
    for (const auto& alpha : roots::positiveRoots(n)) {
        long sumTau = 0;
        for (int m = 1;; ++m) {
            RootVector rest = nu.minusRoot(alpha, m);
            if (!rest.inQPlus()) break;
            sumTau += tau(n, rest);
        }
        long tb = tauAlpha(n, nu.minusRoot(alpha, 1), alpha);
        expect = expect * roots::reducePoly(kind, roots::hAlphaPoly(n, alpha))
                              .pow(static_cast<unsigned>((sumTau) * (1 << N)));
        expect = expect * roots::reducePoly(kind, roots::hAlbarPoly(n, alpha))
                              .pow(static_cast<unsigned>(tb * (1 << N)));
    }
    rep.leadingOk = lead == expect;

    // Degree identities: deg Norm = sum over partitions of |m|, and the
    // determinant degree is 2^N times that.
    long degNorm = 0;
    for (const auto& p : partitions(n, nu)) degNorm += p.weightNorm();
    long degDet = 0;
    for (const auto& b : det.blocks) degDet += b.totalDegree();
    rep.degreeOk = rep.norm.totalDegree() == degNorm && degDet == degNorm * (1 << N);

    // Expanded determinant only when it stays small.
    long detDeg = 0;
    for (const auto& f : rep.detFactors) detDeg += f.exp;
    if (detDeg <= 64) {
        Polynomial d = Polynomial::constant(n, det.scalar);
        for (const auto& b : det.blocks) d = d * b;
        rep.detExpanded = std::move(d);
    }
    return rep;
}

std::string CrossAlgebraReport::json() const {
    std::ostringstream os;
    os << "{\"schema\":\"qshap/1\",\"n\":" << n << ",\"nu\":[" << nu.str()
       << "],\"ok\":" << (ok ? "true" : "false") << ",\"notes\":[";
    for (std::size_t i = 0; i < notes.size(); ++i) {
        if (i) os << ",";
        os << "\"" << notes[i] << "\"";
    }
    os << "]}";
    return os.str();
}

CrossAlgebraReport crossAlgebraCheck(int n, const RootVector& nu) {
    CrossAlgebraReport rep;
    rep.n = n;
    rep.nu = nu;
    AlgebraKind q(roots::Family::q, n), sq(roots::Family::sq, n);
    ShapovalovReport rq = verifyFactorization(q, nu);
    ShapovalovReport rsq = verifyFactorization(sq, nu);
    bool ok = rq.norm == rsq.norm;
    rep.notes.push_back(std::string("Norm q(n) == Norm sq(n): ") + (ok ? "yes" : "NO"));
    if (n >= 3) {
        AlgebraKind pq(roots::Family::pq, n), psq(roots::Family::psq, n);
        ShapovalovReport rpq = verifyFactorization(pq, nu);
        ShapovalovReport rpsq = verifyFactorization(psq, nu);
        bool okpq = rpq.norm == roots::reducePoly(pq, rq.norm);
        bool okpsq = rpsq.norm == roots::reducePoly(psq, rsq.norm);
        rep.notes.push_back(std::string("pq det identity under h_n substitution: ") +
                            (okpq ? "yes" : "NO"));
        rep.notes.push_back(std::string("psq det identity under h_n substitution: ") +
                            (okpsq ? "yes" : "NO"));
        ok = ok && okpq && okpsq;
    }
    rep.ok = ok;
    return rep;
}

}  // namespace qshap::shap
