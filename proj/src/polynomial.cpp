#include "qshap/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace qshap::alg {

Polynomial::Polynomial(int arity) : arity_(arity) {
    if (arity < 0 || arity > kMaxArity)
        throw ArityMismatch("arity out of range: " + std::to_string(arity));
}

Polynomial Polynomial::constant(int arity, const Rat& c) {
    Polynomial p(arity);
    if (c != 0) p.terms_.push_back({0, c});
    return p;
}

Polynomial Polynomial::variable(int arity, int var) {
    std::vector<unsigned> e(arity, 0);
    e.at(var) = 1;
    return monomial(arity, e, Rat(1));
}

Polynomial Polynomial::monomial(int arity, const std::vector<unsigned>& exps, const Rat& c) {
    Polynomial p(arity);
    if (static_cast<int>(exps.size()) != arity) throw ArityMismatch("monomial exponent size");
    if (c != 0) p.terms_.push_back({makeKey(exps), c});
    return p;
}

Polynomial::Key Polynomial::makeKey(const std::vector<unsigned>& exps) {
    unsigned deg = 0;
    Key k = 0;
    for (std::size_t v = 0; v < exps.size(); ++v) {
        if (exps[v] > 255) throw std::overflow_error("exponent exceeds 255");
        deg += exps[v];
        k |= static_cast<Key>(exps[v]) << (8 * (6 - v));
    }
    if (deg > 255) throw std::overflow_error("total degree exceeds 255");
    return k | (static_cast<Key>(deg) << 56);
}

std::vector<unsigned> Polynomial::expsOf(Key k) const {
    std::vector<unsigned> e(arity_);
    for (int v = 0; v < arity_; ++v) e[v] = keyExp(k, v);
    return e;
}

bool Polynomial::isConstant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].key == 0);
}

Rat Polynomial::constantValue() const {
    if (terms_.empty()) return Rat(0);
    if (!isConstant()) throw std::runtime_error("constantValue of non-constant polynomial");
    return terms_[0].coef;
}

int Polynomial::totalDegree() const {
    if (terms_.empty()) return -1;
    return keyDegree(terms_.front().key);
}

void Polynomial::checkSameArity(const Polynomial& o) const {
    if (arity_ != o.arity_)
        throw ArityMismatch("arity mismatch: " + std::to_string(arity_) + " vs " +
                            std::to_string(o.arity_));
}

// Merges `from` into `into`; both sorted descending. Coefficients are moved.
void Polynomial::mergeAdd(std::vector<Term>& into, std::vector<Term>&& from) {
    if (from.empty()) return;
    if (into.empty()) {
        into = std::move(from);
        return;
    }
    std::vector<Term> out;
    out.reserve(into.size() + from.size());
    std::size_t i = 0, j = 0;
    while (i < into.size() && j < from.size()) {
        if (into[i].key > from[j].key) {
            out.push_back(std::move(into[i++]));
        } else if (into[i].key < from[j].key) {
            out.push_back(std::move(from[j++]));
        } else {
            Rat c = into[i].coef + from[j].coef;
            if (c != 0) out.push_back({into[i].key, std::move(c)});
            ++i;
            ++j;
        }
    }
    for (; i < into.size(); ++i) out.push_back(std::move(into[i]));
    for (; j < from.size(); ++j) out.push_back(std::move(from[j]));
    into = std::move(out);
}

void Polynomial::normalizeSorted() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.key > b.key; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().key == t.key) {
            out.back().coef += t.coef;
            if (out.back().coef == 0) out.pop_back();
        } else if (t.coef != 0) {
            out.push_back(std::move(t));
        }
    }
    terms_ = std::move(out);
}

Polynomial Polynomial::fromTerms(int arity, std::vector<Term> terms) {
    Polynomial p(arity);
    p.terms_ = std::move(terms);
    p.normalizeSorted();
    return p;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r(*this);
    r += o;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r(*this);
    r -= o;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    checkSameArity(o);
    std::vector<Term> copy = o.terms_;
    mergeAdd(terms_, std::move(copy));
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    checkSameArity(o);
    std::vector<Term> copy;
    copy.reserve(o.terms_.size());
    for (const auto& t : o.terms_) copy.push_back({t.key, -t.coef});
    mergeAdd(terms_, std::move(copy));
    return *this;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (arity_ != o.arity_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].key != o.terms_[i].key || terms_[i].coef != o.terms_[i].coef) return false;
    return true;
}

Polynomial Polynomial::scaled(const Rat& c) const {
    Polynomial r(arity_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.key, t.coef * c});
    return r;
}

namespace {

// Divide-and-conquer product: each term of `a` times `b` is an already-sorted
// run (adding a fixed key preserves descending order), so the product is a
// balanced merge of those runs.
std::vector<Polynomial::Term> mulRange(const std::vector<Polynomial::Term>& a, std::size_t lo,
                                       std::size_t hi, const std::vector<Polynomial::Term>& b) {
    using Term = Polynomial::Term;
    if (lo >= hi) return {};
    if (hi - lo == 1) {
        std::vector<Term> run;
        run.reserve(b.size());
        const Term& ta = a[lo];
        for (const auto& tb : b) run.push_back({ta.key + tb.key, ta.coef * tb.coef});
        return run;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    std::vector<Term> left = mulRange(a, lo, mid, b);
    std::vector<Term> right = mulRange(a, mid, hi, b);
    std::vector<Term> out;
    out.reserve(left.size() + right.size());
    std::size_t i = 0, j = 0;
    while (i < left.size() && j < right.size()) {
        if (left[i].key > right[j].key) {
            out.push_back(std::move(left[i++]));
        } else if (left[i].key < right[j].key) {
            out.push_back(std::move(right[j++]));
        } else {
            Rat c = left[i].coef + right[j].coef;
            if (c != 0) out.push_back({left[i].key, std::move(c)});
            ++i;
            ++j;
        }
    }
    for (; i < left.size(); ++i) out.push_back(std::move(left[i]));
    for (; j < right.size(); ++j) out.push_back(std::move(right[j]));
    return out;
}

}  // namespace

Polynomial Polynomial::operator*(const Polynomial& o) const {
    checkSameArity(o);
    Polynomial r(arity_);
    if (terms_.empty() || o.terms_.empty()) return r;
    // Degree overflow check happens term by term via key addition invariants.
    if (totalDegree() + o.totalDegree() > 255) throw std::overflow_error("product degree exceeds 255");
    const auto& small = terms_.size() <= o.terms_.size() ? terms_ : o.terms_;
    const auto& large = terms_.size() <= o.terms_.size() ? o.terms_ : terms_;
    r.terms_ = mulRange(small, 0, small.size(), large);
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r = constant(arity_, Rat(1));
    Polynomial base(*this);
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

Polynomial Polynomial::substituteAll(const std::map<int, Polynomial>& subs, int newArity) const {
    for (const auto& [v, p] : subs) {
        (void)v;
        if (p.arity() != newArity) throw ArityMismatch("substitution value arity");
    }
    Polynomial result(newArity);
    // Cache powers of each substituted variable.
    std::map<int, std::vector<Polynomial>> powers;
    for (const auto& t : terms_) {
        Polynomial m = Polynomial::constant(newArity, t.coef);
        for (int v = 0; v < arity_; ++v) {
            unsigned e = keyExp(t.key, v);
            if (e == 0) continue;
            auto it = subs.find(v);
            if (it == subs.end())
                throw ArityMismatch("variable h" + std::to_string(v + 1) +
                                    " has no substitution value");
            auto& pw = powers[v];
            if (pw.empty()) pw.push_back(Polynomial::constant(newArity, Rat(1)));
            while (pw.size() <= e) pw.push_back(pw.back() * it->second);
            m = m * pw[e];
        }
        result += m;
    }
    return result;
}

Polynomial Polynomial::substituteVar(int var, const Polynomial& value) const {
    checkSameArity(value);
    std::map<int, Polynomial> subs;
    for (int v = 0; v < arity_; ++v)
        subs.emplace(v, v == var ? value : Polynomial::variable(arity_, v));
    return substituteAll(subs, arity_);
}

Rat Polynomial::evaluate(const std::vector<Rat>& point) const {
    if (static_cast<int>(point.size()) != arity_) throw ArityMismatch("evaluate point size");
    Rat sum(0);
    for (const auto& t : terms_) {
        Rat v = t.coef;
        for (int var = 0; var < arity_; ++var) {
            unsigned e = keyExp(t.key, var);
            for (unsigned i = 0; i < e; ++i) v *= point[var];
        }
        sum += v;
    }
    return sum;
}

Polynomial Polynomial::evaluateVar(int var, const Rat& c) const {
    Polynomial out(arity_);
    std::vector<Term> acc;
    std::vector<Rat> cpow{Rat(1)};
    for (const auto& t : terms_) {
        unsigned e = keyExp(t.key, var);
        while (cpow.size() <= e) cpow.push_back(cpow.back() * c);
        Key k = t.key - (static_cast<Key>(e) << (8 * (6 - var))) - (static_cast<Key>(e) << 56);
        acc.push_back({k, t.coef * cpow[e]});
    }
    return fromTerms(arity_, std::move(acc));
}

std::optional<Polynomial> Polynomial::tryDivide(const Polynomial& divisor) const {
    checkSameArity(divisor);
    if (divisor.isZero()) throw std::invalid_argument("division by zero polynomial");
    Polynomial rem(*this);
    std::vector<Term> quot;
    const Term& dl = divisor.terms_.front();
    while (!rem.terms_.empty()) {
        const Term& rl = rem.terms_.front();
        // Componentwise exponent comparison of the packed keys; the degree
        // byte subtracts consistently when every field does.
        Key q = rl.key - dl.key;
        bool ok = rl.key >= dl.key;
        if (ok) {
            for (int v = 0; v < arity_ && ok; ++v) ok = keyExp(rl.key, v) >= keyExp(dl.key, v);
        }
        if (!ok) return std::nullopt;
        Rat c = rl.coef / dl.coef;
        quot.push_back({q, c});
        // rem -= (c x^q) * divisor
        std::vector<Term> sub;
        sub.reserve(divisor.terms_.size());
        for (const auto& t : divisor.terms_) sub.push_back({t.key + q, -(t.coef * c)});
        mergeAdd(rem.terms_, std::move(sub));
    }
    return fromTerms(arity_, std::move(quot));
}

Polynomial Polynomial::divideExact(const Polynomial& divisor) const {
    auto q = tryDivide(divisor);
    if (!q) throw NotDivisible("no exact polynomial quotient");
    return *q;
}

Polynomial Polynomial::leadingHomogeneous() const {
    if (terms_.empty()) throw std::invalid_argument("leadingHomogeneous of zero polynomial");
    int d = totalDegree();
    Polynomial r(arity_);
    for (const auto& t : terms_) {
        if (keyDegree(t.key) != d) break;  // sorted by degree first
        r.terms_.push_back(t);
    }
    return r;
}

std::optional<unsigned> Polynomial::vanishingOrder() const {
    if (arity_ != 1) throw ArityMismatch("vanishingOrder requires a univariate polynomial");
    if (terms_.empty()) return std::nullopt;
    return keyExp(terms_.back().key, 0);  // smallest key = smallest exponent
}

std::pair<mpz_class, mpz_class> Polynomial::content() const {
    mpz_class g(0), l(1);
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_num().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den().get_mpz_t());
    }
    return {g, l};
}

unsigned Polynomial::maxExponent(int var) const {
    unsigned m = 0;
    for (const auto& t : terms_) m = std::max(m, keyExp(t.key, var));
    return m;
}

std::vector<std::string> hVarNames(int arity) {
    std::vector<std::string> names;
    for (int i = 1; i <= arity; ++i) names.push_back("h" + std::to_string(i));
    return names;
}

std::string Polynomial::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rat c = t.coef;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        bool anyVar = t.key != 0;
        if (!anyVar || c != 1) os << ratStr(c);
        bool needStar = !anyVar ? false : (c != 1);
        for (int v = 0; v < arity_; ++v) {
            unsigned e = keyExp(t.key, v);
            if (e == 0) continue;
            if (needStar) os << "*";
            os << names.at(v);
            if (e > 1) os << "^" << e;
            needStar = true;
        }
    }
    return os.str();
}

std::string Polynomial::str() const { return str(hVarNames(arity_)); }

std::string Polynomial::jsonArray() const {
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << ",";
        first = false;
        os << "{\"exps\":[";
        for (int v = 0; v < arity_; ++v) {
            if (v) os << ",";
            os << keyExp(t.key, v);
        }
        os << "],\"num\":\"" << t.coef.get_num().get_str() << "\",\"den\":\""
           << t.coef.get_den().get_str() << "\"}";
    }
    os << "]";
    return os.str();
}

}  // namespace qshap::alg
