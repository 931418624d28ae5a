#include "qshap/uea.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace qshap::uea {

GenTable::GenTable(const AlgebraKind& k) : kind(k) {
    auto rootsList = roots::positiveRoots(k.n);
    auto pushBlock = [&](Species s) {
        blockFirst[static_cast<int>(s)] = static_cast<int>(gens.size());
        switch (s) {
            case Species::f:
            case Species::F:
            case Species::E:
            case Species::e:
                for (const auto& r : rootsList) gens.push_back({s, r.i, r.j});
                break;
            case Species::h:
                for (int i = 1; i <= k.n; ++i) gens.push_back({s, i, 0});
                break;
            case Species::H:
                for (int i = 1; i <= k.oddCartanDim(); ++i) gens.push_back({s, i, 0});
                break;
        }
        blockCount[static_cast<int>(s)] =
            static_cast<int>(gens.size()) - blockFirst[static_cast<int>(s)];
    };
    pushBlock(Species::f);
    pushBlock(Species::F);
    pushBlock(Species::h);
    pushBlock(Species::H);
    pushBlock(Species::E);
    pushBlock(Species::e);

    const int m = size();
    odd.resize(m);
    weightEps.resize(m);
    for (int i = 0; i < m; ++i) {
        odd[i] = roots::isOdd(gens[i].s);
        weightEps[i] = roots::genWeightEps(kind, gens[i]);
    }
    brk.assign(m, std::vector<std::vector<std::pair<Rat, int>>>(m));
    oddSquare.assign(m, {});
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            auto parts = roots::bracket(kind, gens[a], gens[b]);
            for (const auto& [c, g] : parts) brk[a][b].push_back({c, idOf(g)});
        }
        if (odd[a])
            for (const auto& [c, g] : brk[a][a]) oddSquare[a].push_back({c / 2, g});
    }
}

int GenTable::idOf(const GenIndex& g) const {
    roots::checkGenIndex(kind, g);
    int base = blockFirst[static_cast<int>(g.s)];
    switch (g.s) {
        case Species::h:
        case Species::H: return base + g.i - 1;
        default: {
            int idx = 0;
            for (int i = 1; i <= kind.n; ++i)
                for (int j = i + 1; j <= kind.n; ++j) {
                    if (i == g.i && j == g.j) return base + idx;
                    ++idx;
                }
        }
    }
    throw std::invalid_argument("generator not in table: " + g.str());
}

const GenTable& GenTable::get(const AlgebraKind& k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, GenTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(static_cast<int>(k.family), k.n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, GenTable(k)).first;
    return it->second;
}

UEAElement UEAElement::one(const GenTable& t) {
    UEAElement e(t);
    e.terms_.emplace(Mono(t.size(), 0), Rat(1));
    return e;
}

UEAElement UEAElement::fromMono(const GenTable& t, const Mono& m, const Rat& c) {
    UEAElement e(t);
    if (c != 0) e.terms_.emplace(m, c);
    return e;
}

UEAElement UEAElement::fromGen(const GenTable& t, const GenIndex& g) {
    Mono m(t.size(), 0);
    m[t.idOf(g)] = 1;
    return fromMono(t, m, Rat(1));
}

void UEAElement::addTerm(const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

UEAElement UEAElement::operator+(const UEAElement& o) const {
    UEAElement r(*this);
    for (const auto& [m, c] : o.terms_) r.addTerm(m, c);
    return r;
}

UEAElement UEAElement::operator-(const UEAElement& o) const {
    UEAElement r(*this);
    for (const auto& [m, c] : o.terms_) r.addTerm(m, -c);
    return r;
}

UEAElement UEAElement::scaled(const Rat& c) const {
    UEAElement r(*tbl_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

bool UEAElement::operator==(const UEAElement& o) const {
    return tbl_ == o.tbl_ && terms_ == o.terms_;
}

std::string UEAElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool firstTerm = true;
    for (const auto& [m, c] : terms_) {
        if (!firstTerm) os << " + ";
        firstTerm = false;
        bool unit = true;
        std::ostringstream mono;
        bool firstGen = true;
        for (int g = 0; g < tbl_->size(); ++g) {
            if (m[g] == 0) continue;
            unit = false;
            if (!firstGen) mono << " ";
            firstGen = false;
            mono << tbl_->gens[g].str();
            if (m[g] > 1) mono << "^" << static_cast<int>(m[g]);
        }
        if (c != 1 || unit) {
            os << alg::ratStr(c);
            if (!unit) os << " ";
        }
        os << mono.str();
    }
    return os.str();
}

Word wordOfMono(const GenTable& t, const Mono& m) {
    Word w;
    for (int g = 0; g < t.size(); ++g)
        for (int k = 0; k < m[g]; ++k) w.push_back(static_cast<std::int16_t>(g));
    return w;
}

Mono monoOfSortedWord(const GenTable& t, const Word& w) {
    Mono m(t.size(), 0);
    for (auto g : w) {
        if (m[g] == 255) throw std::overflow_error("exponent exceeds 255");
        ++m[g];
    }
    return m;
}

UEAElement normalOrder(const GenTable& t, const Word& w0) {
    UEAElement result(t);
    std::map<Word, Rat> active;
    active.emplace(w0, Rat(1));
    while (!active.empty()) {
        auto it = active.begin();
        Word w = it->first;
        Rat c = it->second;
        active.erase(it);
        if (c == 0) continue;
        int p = -1;
        bool squareCase = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i] > w[i + 1]) {
                p = static_cast<int>(i);
                break;
            }
            if (w[i] == w[i + 1] && t.odd[w[i]]) {
                p = static_cast<int>(i);
                squareCase = true;
                break;
            }
        }
        if (p < 0) {
            result.addTerm(monoOfSortedWord(t, w), c);
            continue;
        }
        int x = w[p], y = w[p + 1];
        auto withPairReplaced = [&](int z) {
            Word r;
            r.reserve(w.size() - 1);
            r.insert(r.end(), w.begin(), w.begin() + p);
            r.push_back(static_cast<std::int16_t>(z));
            r.insert(r.end(), w.begin() + p + 2, w.end());
            return r;
        };
        if (squareCase) {
            for (const auto& [r, z] : t.oddSquare[x]) {
                Word wz = withPairReplaced(z);
                auto [pos, inserted] = active.emplace(wz, c * r);
                if (!inserted) pos->second += c * r;
            }
        } else {
            Word ws = w;
            std::swap(ws[p], ws[p + 1]);
            Rat sc = (t.odd[x] && t.odd[y]) ? -c : c;
            auto [pos, inserted] = active.emplace(std::move(ws), sc);
            if (!inserted) pos->second += sc;
            for (const auto& [r, z] : t.brk[x][y]) {
                Word wz = withPairReplaced(z);
                auto [pos2, inserted2] = active.emplace(wz, c * r);
                if (!inserted2) pos2->second += c * r;
            }
        }
    }
    return result;
}

namespace {

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = 1469598103934665603ull;
        for (auto g : w) {
            h ^= static_cast<std::size_t>(g) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace

const UEAElement& multiplyMono(const GenTable& t, const Mono& a, const Mono& b) {
    thread_local std::unordered_map<Word, UEAElement, WordHash> cache;
    thread_local const GenTable* cacheTable = nullptr;
    if (cacheTable != &t) {
        cache.clear();
        cacheTable = &t;
    }
    Word w = wordOfMono(t, a);
    Word wb = wordOfMono(t, b);
    w.insert(w.end(), wb.begin(), wb.end());
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    UEAElement r = normalOrder(t, w);
    if (cache.size() > 500000) cache.clear();
    return cache.emplace(std::move(w), std::move(r)).first->second;
}

UEAElement multiply(const UEAElement& a, const UEAElement& b) {
    if (&a.table() != &b.table()) throw std::invalid_argument("multiply: kind mismatch");
    const GenTable& t = a.table();
    UEAElement out(t);
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            const UEAElement& prod = multiplyMono(t, ma, mb);
            Rat c = ca * cb;
            for (const auto& [m, k] : prod.terms()) out.addTerm(m, k * c);
        }
    return out;
}

UEAElement sigma(const UEAElement& a) {
    const GenTable& t = a.table();
    UEAElement out(t);
    for (const auto& [m, c] : a.terms()) {
        Word w = wordOfMono(t, m);
        int letters = static_cast<int>(w.size());
        int oddLetters = 0;
        for (auto g : w)
            if (t.odd[g]) ++oddLetters;
        // sigma(g1...gk) = (-1)^k (-1)^{C(odd,2)} gk...g1
        int sgn = (letters + oddLetters * (oddLetters - 1) / 2) % 2 ? -1 : 1;
        std::reverse(w.begin(), w.end());
        UEAElement rev = normalOrder(t, w);
        for (const auto& [mm, cc] : rev.terms()) out.addTerm(mm, cc * c * sgn);
    }
    return out;
}

UEAElement superCommutator(const UEAElement& a, const UEAElement& b) {
    bool aOdd = false, bOdd = false;
    if (!isParityHomogeneous(a, &aOdd) || !isParityHomogeneous(b, &bOdd))
        throw std::invalid_argument("superCommutator needs parity-homogeneous arguments");
    UEAElement ab = multiply(a, b);
    UEAElement ba = multiply(b, a);
    return (aOdd && bOdd) ? ab + ba : ab - ba;
}

UEAElement adPrime(const UEAElement& a, const UEAElement& b) {
    bool aOdd = false, bOdd = false;
    if (!isParityHomogeneous(a, &aOdd) || !isParityHomogeneous(b, &bOdd))
        throw std::invalid_argument("adPrime needs parity-homogeneous arguments");
    UEAElement ab = multiply(a, b);
    UEAElement ba = multiply(b, a);
    // (ad' a)(b) = ab - (-1)^{p(a)(p(b)+1)} ba; the sign flips iff a is odd
    // and b is even.
    bool plus = aOdd && !bOdd;
    return plus ? ab + ba : ab - ba;
}

bool monoIsOdd(const GenTable& t, const Mono& m) {
    int s = 0;
    for (int g = 0; g < t.size(); ++g)
        if (t.odd[g]) s += m[g];
    return s % 2 == 1;
}

int monoDegree(const Mono& m) {
    int d = 0;
    for (auto e : m) d += e;
    return d;
}

std::vector<int> monoWeightEps(const GenTable& t, const Mono& m) {
    std::vector<int> w(t.kind.n, 0);
    for (int g = 0; g < t.size(); ++g) {
        if (m[g] == 0) continue;
        for (int i = 0; i < t.kind.n; ++i) w[i] += m[g] * t.weightEps[g][i];
    }
    return w;
}

bool isWeightHomogeneous(const UEAElement& a, std::vector<int>* wt) {
    bool first = true;
    std::vector<int> w0;
    for (const auto& [m, c] : a.terms()) {
        (void)c;
        auto w = monoWeightEps(a.table(), m);
        if (first) {
            w0 = w;
            first = false;
        } else if (w != w0) {
            return false;
        }
    }
    if (wt) *wt = w0;
    return true;
}

bool isParityHomogeneous(const UEAElement& a, bool* oddOut) {
    bool first = true;
    bool o0 = false;
    for (const auto& [m, c] : a.terms()) {
        (void)c;
        bool o = monoIsOdd(a.table(), m);
        if (first) {
            o0 = o;
            first = false;
        } else if (o != o0) {
            return false;
        }
    }
    if (oddOut) *oddOut = o0;
    return true;
}

void monoLetterCounts(const GenTable& t, const Mono& m, int* neg, int* car, int* pos) {
    int a = 0, b = 0, c = 0;
    for (int g = 0; g < t.size(); ++g) {
        if (m[g] == 0) continue;
        switch (t.gens[g].s) {
            case Species::f:
            case Species::F: a += m[g]; break;
            case Species::h:
            case Species::H: b += m[g]; break;
            case Species::E:
            case Species::e: c += m[g]; break;
        }
    }
    if (neg) *neg = a;
    if (car) *car = b;
    if (pos) *pos = c;
}

cliff::CliffordElement hcProject(const UEAElement& a) {
    const GenTable& t = a.table();
    cliff::CliffordElement out(t.kind);
    const int hFirst = t.first(Species::h), hCount = t.count(Species::h);
    const int HFirst = t.first(Species::H), HCount = t.count(Species::H);
    for (const auto& [m, c] : a.terms()) {
        int neg = 0, pos = 0;
        monoLetterCounts(t, m, &neg, nullptr, &pos);
        if (neg || pos) continue;
        std::vector<unsigned> exps(t.kind.n, 0);
        for (int i = 0; i < hCount; ++i) exps[i] = m[hFirst + i];
        std::uint32_t mask = 0;
        for (int i = 0; i < HCount; ++i)
            if (m[HFirst + i]) mask |= 1u << i;
        out.add(mask, Polynomial::monomial(t.kind.n, exps, c));
    }
    return out;
}

UEAElement fromClifford(const GenTable& t, const cliff::CliffordElement& c) {
    if (!(t.kind == c.kind)) throw std::invalid_argument("fromClifford kind mismatch");
    UEAElement out(t);
    const int hFirst = t.first(Species::h);
    const int HFirst = t.first(Species::H);
    for (const auto& [mask, p] : c.comps) {
        for (const auto& term : p.terms()) {
            Mono m(t.size(), 0);
            for (int v = 0; v < t.kind.n; ++v)
                m[hFirst + v] = static_cast<std::uint8_t>(Polynomial::keyExp(term.key, v));
            for (int k = 0; k < t.count(Species::H); ++k)
                if (mask & (1u << k)) m[HFirst + k] = 1;
            out.addTerm(m, term.coef);
        }
    }
    return out;
}

UEAElement projectUbMinus(const UEAElement& a) {
    const GenTable& t = a.table();
    UEAElement out(t);
    for (const auto& [m, c] : a.terms()) {
        int pos = 0;
        monoLetterCounts(t, m, nullptr, nullptr, &pos);
        bool hasPositive = false;
        for (int g = t.first(Species::E); g < t.size(); ++g)
            if (m[g]) {
                hasPositive = true;
                break;
            }
        (void)pos;
        if (!hasPositive) out.addTerm(m, c);
    }
    return out;
}

int filtrationDegree(const UEAElement& a) {
    int d = -1;
    for (const auto& [m, c] : a.terms()) {
        (void)c;
        d = std::max(d, monoDegree(m));
    }
    return d;
}

}  // namespace qshap::uea
