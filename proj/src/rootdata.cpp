#include "qshap/rootdata.hpp"

#include <map>
#include <numeric>
#include <sstream>

namespace qshap::roots {

std::string familyName(Family f) {
    switch (f) {
        case Family::q: return "q";
        case Family::sq: return "sq";
        case Family::pq: return "pq";
        case Family::psq: return "psq";
    }
    return "?";
}

Family familyParse(const std::string& s) {
    if (s == "q") return Family::q;
    if (s == "sq") return Family::sq;
    if (s == "pq") return Family::pq;
    if (s == "psq") return Family::psq;
    throw std::invalid_argument("unknown algebra family: " + s);
}

AlgebraKind::AlgebraKind(Family f, int rank) : family(f), n(rank) {
    if (n < 2) throw std::invalid_argument("rank must be at least 2");
    if ((f == Family::pq || f == Family::psq) && n < 3)
        throw std::invalid_argument(familyName(f) + "(2) is excluded; rank must be at least 3");
}

std::vector<Root> positiveRoots(int n) {
    std::vector<Root> out;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) out.push_back({i, j});
    return out;
}

bool isOdd(Species s) { return s == Species::F || s == Species::H || s == Species::E; }

std::string speciesName(Species s) {
    switch (s) {
        case Species::f: return "f";
        case Species::F: return "F";
        case Species::h: return "h";
        case Species::H: return "H";
        case Species::E: return "E";
        case Species::e: return "e";
    }
    return "?";
}

std::string GenIndex::str() const {
    if (s == Species::h || s == Species::H) return speciesName(s) + std::to_string(i);
    std::ostringstream os;
    os << speciesName(s) << "(" << i << "," << j << ")";
    return os.str();
}

void checkGenIndex(const AlgebraKind& kind, const GenIndex& g) {
    const int n = kind.n;
    switch (g.s) {
        case Species::e:
        case Species::f:
        case Species::E:
        case Species::F:
            if (!(1 <= g.i && g.i < g.j && g.j <= n))
                throw std::invalid_argument("invalid root index " + g.str() + " for " + kind.str());
            return;
        case Species::h:
            if (!(1 <= g.i && g.i <= n && g.j == 0))
                throw std::invalid_argument("invalid Cartan index " + g.str() + " for " + kind.str());
            return;
        case Species::H:
            if (g.j != 0 || g.i < 1 || g.i > kind.oddCartanDim())
                throw std::invalid_argument("invalid odd Cartan index " + g.str() + " for " +
                                            kind.str());
            return;
    }
}

namespace {

// Sparse n x n matrix over Rat.
using Mat = std::map<std::pair<int, int>, Rat>;

void addTo(Mat& m, int i, int j, const Rat& c) {
    if (c == 0) return;
    auto key = std::make_pair(i, j);
    auto it = m.find(key);
    if (it == m.end()) {
        m.emplace(key, c);
    } else {
        it->second += c;
        if (it->second == 0) m.erase(it);
    }
}

Mat mul(const Mat& a, const Mat& b) {
    Mat out;
    for (const auto& [ka, va] : a)
        for (const auto& [kb, vb] : b)
            if (ka.second == kb.first) addTo(out, ka.first, kb.second, va * vb);
    return out;
}

Mat add(const Mat& a, const Mat& b, int sign) {
    Mat out = a;
    for (const auto& [k, v] : b) addTo(out, k.first, k.second, sign > 0 ? v : -v);
    return out;
}

// Element X_{A,B} of the matrix model.
struct MatPair {
    Mat A, B;
};

// X_{A,B} X_{A',B'} = X_{AA'+BB', AB'+BA'}.
MatPair matMul(const MatPair& x, const MatPair& y) {
    return {add(mul(x.A, y.A), mul(x.B, y.B), +1), add(mul(x.A, y.B), mul(x.B, y.A), +1)};
}

MatPair matOf(const AlgebraKind& kind, const GenIndex& g) {
    checkGenIndex(kind, g);
    MatPair m;
    switch (g.s) {
        case Species::e: addTo(m.A, g.i, g.j, Rat(1)); break;
        case Species::f: addTo(m.A, g.j, g.i, Rat(1)); break;
        case Species::h: addTo(m.A, g.i, g.i, Rat(1)); break;
        case Species::E: addTo(m.B, g.i, g.j, Rat(1)); break;
        case Species::F: addTo(m.B, g.j, g.i, Rat(1)); break;
        case Species::H:
            if (kind.fullOddCartan()) {
                addTo(m.B, g.i, g.i, Rat(1));
            } else {
                addTo(m.B, g.i, g.i, Rat(1));
                addTo(m.B, g.i + 1, g.i + 1, Rat(-1));
            }
            break;
    }
    return m;
}

std::vector<std::pair<Rat, GenIndex>> decompose(const AlgebraKind& kind, const MatPair& m) {
    std::vector<std::pair<Rat, GenIndex>> out;
    std::vector<Rat> evenDiag(kind.n + 1, Rat(0)), oddDiag(kind.n + 1, Rat(0));
    for (const auto& [k, v] : m.A) {
        if (k.first == k.second) {
            evenDiag[k.first] = v;
        } else if (k.first < k.second) {
            out.push_back({v, GenIndex{Species::e, k.first, k.second}});
        } else {
            out.push_back({v, GenIndex{Species::f, k.second, k.first}});
        }
    }
    for (int i = 1; i <= kind.n; ++i)
        if (evenDiag[i] != 0) out.push_back({evenDiag[i], GenIndex{Species::h, i, 0}});
    for (const auto& [k, v] : m.B) {
        if (k.first == k.second) {
            oddDiag[k.first] = v;
        } else if (k.first < k.second) {
            out.push_back({v, GenIndex{Species::E, k.first, k.second}});
        } else {
            out.push_back({v, GenIndex{Species::F, k.second, k.first}});
        }
    }
    if (kind.fullOddCartan()) {
        for (int i = 1; i <= kind.n; ++i)
            if (oddDiag[i] != 0) out.push_back({oddDiag[i], GenIndex{Species::H, i, 0}});
    } else {
        // Trace-free odd diagonal over the basis H_k - H_{k+1}: the
        // coefficient of the k-th basis vector is the k-th partial sum.
        Rat total(0);
        for (int i = 1; i <= kind.n; ++i) total += oddDiag[i];
        if (total != 0)
            throw std::logic_error("bracket left the trace-free odd Cartan subspace");
        Rat partial(0);
        for (int k = 1; k < kind.n; ++k) {
            partial += oddDiag[k];
            if (partial != 0) out.push_back({partial, GenIndex{Species::H, k, 0}});
        }
    }
    return out;
}

}  // namespace

std::vector<std::pair<Rat, GenIndex>> bracket(const AlgebraKind& kind, const GenIndex& x,
                                              const GenIndex& y) {
    MatPair mx = matOf(kind, x), my = matOf(kind, y);
    int sign = (isOdd(x.s) && isOdd(y.s)) ? -1 : 1;
    MatPair br{add(mul(mx.A, my.A), mul(mx.B, my.B), +1),
               add(mul(mx.A, my.B), mul(mx.B, my.A), +1)};
    MatPair rev = matMul(my, mx);
    br.A = add(br.A, rev.A, -sign);
    br.B = add(br.B, rev.B, -sign);
    return decompose(kind, br);
}

std::vector<int> genWeightEps(const AlgebraKind& kind, const GenIndex& g) {
    std::vector<int> w(kind.n, 0);
    switch (g.s) {
        case Species::e:
        case Species::E:
            w[g.i - 1] = 1;
            w[g.j - 1] = -1;
            break;
        case Species::f:
        case Species::F:
            w[g.i - 1] = -1;
            w[g.j - 1] = 1;
            break;
        default: break;
    }
    return w;
}

void checkWeight(const AlgebraKind& kind, const Weight& w) {
    if (static_cast<int>(w.size()) != kind.n)
        throw std::invalid_argument("weight must have " + std::to_string(kind.n) + " coordinates");
    if (kind.isReduced()) {
        Rat s(0);
        for (const auto& c : w) s += c;
        if (s != 0)
            throw std::invalid_argument("weights of " + kind.str() +
                                        " must satisfy sum lambda(h_i) = 0");
    }
}

std::pair<Rat, Rat> corootValues(const Weight& w, const Root& alpha) {
    return {w.at(alpha.i - 1) - w.at(alpha.j - 1), w.at(alpha.i - 1) + w.at(alpha.j - 1)};
}

Weight weylReflect(const Weight& w, const Root& alpha) {
    Weight out = w;
    std::swap(out.at(alpha.i - 1), out.at(alpha.j - 1));
    return out;
}

Rat epsForm(const Weight& a, const Weight& b) {
    if (a.size() != b.size()) throw std::invalid_argument("epsForm size mismatch");
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

int RootVector::height() const { return std::accumulate(coeff.begin(), coeff.end(), 0); }

bool RootVector::inQPlus() const {
    for (int c : coeff)
        if (c < 0) return false;
    return true;
}

std::vector<int> RootVector::epsCoords() const {
    std::vector<int> w(coeff.size() + 1, 0);
    for (std::size_t k = 0; k < coeff.size(); ++k) {
        w[k] += coeff[k];
        w[k + 1] -= coeff[k];
    }
    return w;
}

RootVector RootVector::minusRoot(const Root& alpha, int m) const {
    // alpha = eps_i - eps_j = alpha_i + ... + alpha_{j-1}.
    RootVector out = *this;
    for (int k = alpha.i; k < alpha.j; ++k) out.coeff.at(k - 1) -= m;
    return out;
}

std::string RootVector::str() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < coeff.size(); ++k) {
        if (k) os << ",";
        os << coeff[k];
    }
    return os.str();
}

std::vector<RootVector> rootVectorsUpToHeight(int n, int maxHeight, bool includeZero) {
    std::vector<RootVector> out;
    std::vector<int> cur(n - 1, 0);
    std::function<void(int, int)> go = [&](int pos, int left) {
        if (pos == n - 1) {
            RootVector v{cur};
            if (includeZero || v.height() > 0) out.push_back(v);
            return;
        }
        for (int c = 0; c <= left; ++c) {
            cur[pos] = c;
            go(pos + 1, left - c);
        }
        cur[pos] = 0;
    };
    go(0, maxHeight);
    std::sort(out.begin(), out.end(), [](const RootVector& a, const RootVector& b) {
        if (a.height() != b.height()) return a.height() < b.height();
        return a.coeff < b.coeff;
    });
    return out;
}

Polynomial hAlphaPoly(int n, const Root& alpha) {
    return Polynomial::variable(n, alpha.i - 1) - Polynomial::variable(n, alpha.j - 1);
}

Polynomial hAlbarPoly(int n, const Root& alpha) {
    return Polynomial::variable(n, alpha.i - 1) + Polynomial::variable(n, alpha.j - 1);
}

Polynomial reducePoly(const AlgebraKind& kind, const Polynomial& p) {
    if (!kind.isReduced()) return p;
    Polynomial sub(p.arity());
    for (int v = 0; v + 1 < kind.n; ++v) sub -= Polynomial::variable(p.arity(), v);
    return p.substituteVar(kind.n - 1, sub);
}

}  // namespace qshap::roots
