#include "qshap/modrep.hpp"

#include <sstream>

namespace qshap::rep {

std::string HyperplaneId::str() const {
    std::ostringstream os;
    if (type == Type::corootSum)
        os << "h" << alpha.i << "+h" << alpha.j << "=0";
    else
        os << "h" << alpha.i << "-h" << alpha.j << "=" << r;
    return os.str();
}

std::string WeightClass::str() const {
    switch (status) {
        case Status::regular: return "regular";
        case Status::subregular: return "subregular(" + hyperplanes[0].str() + ")";
        default: {
            std::string s = "degenerate(";
            for (std::size_t i = 0; i < hyperplanes.size(); ++i) {
                if (i) s += ", ";
                s += hyperplanes[i].str();
            }
            return s + ")";
        }
    }
}

WeightClass classifyWeight(const AlgebraKind& kind, const Weight& lambda, int heightCutoff) {
    (void)heightCutoff;
    roots::checkWeight(kind, lambda);
    WeightClass out;
    for (const auto& alpha : roots::positiveRoots(kind.n)) {
        auto [ha, hab] = roots::corootValues(lambda, alpha);
        if (hab == 0) out.hyperplanes.push_back({HyperplaneId::Type::corootSum, alpha, 0});
        if (ha > 0 && alg::isInteger(ha))
            out.hyperplanes.push_back(
                {HyperplaneId::Type::rootInteger, alpha, static_cast<int>(ha.get_num().get_si())});
    }
    out.status = out.hyperplanes.empty()   ? WeightClass::Status::regular
                 : out.hyperplanes.size() == 1 ? WeightClass::Status::subregular
                                               : WeightClass::Status::degenerate;
    return out;
}

bool isSimpleWeyl(const AlgebraKind& kind, const Weight& lambda) {
    roots::checkWeight(kind, lambda);
    for (const auto& alpha : roots::positiveRoots(kind.n)) {
        auto [ha, hab] = roots::corootValues(lambda, alpha);
        if (hab == 0) return false;
        if (ha > 0 && alg::isInteger(ha)) return false;
    }
    return true;
}

bool simpleWithinCutoff(const AlgebraKind& kind, const Weight& lambda, int heightCutoff) {
    for (const auto& alpha : roots::positiveRoots(kind.n)) {
        int htAlpha = alpha.j - alpha.i;
        auto [ha, hab] = roots::corootValues(lambda, alpha);
        if (hab == 0 && htAlpha <= heightCutoff) return false;
        if (ha > 0 && alg::isInteger(ha) && ha.get_num().get_si() * htAlpha <= heightCutoff)
            return false;
    }
    return true;
}

std::map<RootVector, int> corankProfile(const AlgebraKind& kind, const Weight& lambda,
                                        int heightCutoff) {
    roots::checkWeight(kind, lambda);
    std::map<RootVector, int> out;
    for (const auto& nu : roots::rootVectorsUpToHeight(kind.n, heightCutoff, true)) {
        alg::PolyMatrix B = shap::shapovalovMatrix(kind, nu);
        out[nu] = B.cols() - alg::rankAtPoint(B, lambda);
    }
    return out;
}

Weight defaultRhoPrime(const AlgebraKind& kind) {
    Weight rho(kind.n);
    Rat base(1);
    for (int i = 0; i < kind.n; ++i) {
        rho[i] = base;
        base *= 3;
    }
    if (kind.isReduced()) {
        Rat avg(0);
        for (const auto& c : rho) avg += c;
        avg /= kind.n;
        for (auto& c : rho) c -= avg;
    }
    return rho;
}

void checkGenericVector(const AlgebraKind& kind, const Weight& rhoPrime) {
    for (const auto& alpha : roots::positiveRoots(kind.n)) {
        auto [ha, hab] = roots::corootValues(rhoPrime, alpha);
        if (ha == 0 || hab == 0)
            throw BadGenericVector("rho' is parallel to a degeneracy hyperplane at root (" +
                                   std::to_string(alpha.i) + "," + std::to_string(alpha.j) + ")");
    }
}

std::map<RootVector, unsigned> jantzenOrders(const AlgebraKind& kind, const Weight& lambda,
                                             const Weight& rhoPrime, int heightCutoff) {
    roots::checkWeight(kind, lambda);
    checkGenericVector(kind, rhoPrime);
    std::map<RootVector, unsigned> out;
    for (const auto& nu : roots::rootVectorsUpToHeight(kind.n, heightCutoff, false)) {
        alg::PolyMatrix B = shap::shapovalovMatrix(kind, nu);
        std::map<int, alg::Polynomial> subs;
        for (int v = 0; v < kind.n; ++v) {
            alg::Polynomial line = alg::Polynomial::constant(1, lambda[v]) +
                                   alg::Polynomial::variable(1, 0).scaled(rhoPrime[v]);
            subs.emplace(v, line);
        }
        alg::PolyMatrix Bx = B.mapEntries(
            [&](const alg::Polynomial& p) { return p.substituteAll(subs, 1); }, 1);
        alg::Polynomial det = alg::detFractionFree(Bx);
        auto ord = det.vanishingOrder();
        if (!ord)
            throw BadGenericVector("det B_nu vanishes along the line; (J1) fails for this rho'");
        out[nu] = *ord;
    }
    return out;
}

SumFormulaReport sumFormulaCheck(const AlgebraKind& kind, const Weight& lambda,
                                 const RootVector& nu, const Weight& rhoPrime) {
    SumFormulaReport rep;
    const long mult = 1L << kind.oddCartanDim();
    WeightClass cls = classifyWeight(kind, lambda);
    for (const auto& gamma : cls.hyperplanes) {
        if (gamma.type == HyperplaneId::Type::corootSum)
            rep.predicted += mult * shap::tauAlpha(kind.n, nu.minusRoot(gamma.alpha, 1), gamma.alpha);
        else
            rep.predicted += mult * shap::tau(kind.n, nu.minusRoot(gamma.alpha, gamma.r));
    }
    auto orders = jantzenOrders(kind, lambda, rhoPrime, nu.height());
    rep.computed = orders.at(nu);
    rep.ok = rep.predicted == rep.computed;
    return rep;
}

std::map<RootVector, long> characterCoefficients(const AlgebraKind& kind, const Weight& lambda,
                                                 ModuleFamily which, int heightCutoff) {
    roots::checkWeight(kind, lambda);
    long unit;
    if (which == ModuleFamily::Verma) {
        unit = 1L << kind.oddCartanDim();
    } else {
        unit = cliff::cliffordPointData(kind, lambda).dimE;
    }
    std::map<RootVector, long> out;
    for (const auto& nu : roots::rootVectorsUpToHeight(kind.n, heightCutoff, true))
        out[nu] = unit * shap::tau(kind.n, nu);
    return out;
}

int defaultHeightCutoff(int n) { return n == 2 ? 4 : 3; }

std::string weightClassJson(const WeightClass& c) {
    std::ostringstream os;
    os << "{\"class\":\"";
    switch (c.status) {
        case WeightClass::Status::regular: os << "regular"; break;
        case WeightClass::Status::subregular: os << "subregular"; break;
        default: os << "degenerate";
    }
    os << "\",\"hyperplanes\":[";
    for (std::size_t i = 0; i < c.hyperplanes.size(); ++i) {
        if (i) os << ",";
        os << "\"" << c.hyperplanes[i].str() << "\"";
    }
    os << "]}";
    return os.str();
}

}  // namespace qshap::rep
