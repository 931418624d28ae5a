#include <CLI11.hpp>

#include <iostream>

#include "qshap/accept.hpp"
#include "qshap/centre.hpp"
#include "qshap/modrep.hpp"
#include "qshap/parse.hpp"
#include "qshap/shapovalov.hpp"

using namespace qshap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct CommonArgs {
    std::string kind = "sq";
    int rank = 2;
    bool json = false;

    roots::AlgebraKind algebra() const {
        return roots::AlgebraKind(roots::familyParse(kind), rank);
    }
};

void addCommon(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--kind", args.kind, "algebra family: q|sq|pq|psq")
        ->check(CLI::IsMember({"q", "sq", "pq", "psq"}));
    cmd->add_option("--rank", args.rank, "rank n")->check(CLI::Range(2, 6));
    cmd->add_flag("--json", args.json, "emit JSON");
}

roots::Weight parseWeight(const roots::AlgebraKind& kind, const std::string& s) {
    auto coords = cli::parseRatList(s);
    roots::checkWeight(kind, coords);
    return coords;
}

std::string nuKey(const roots::RootVector& nu) { return nu.str(); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Shapovalov determinants and centres of Q-type Lie superalgebras"};
    app.require_subcommand(1);

    // ---- matrix / det / verify -------------------------------------------
    CommonArgs mArgs;
    std::string mNu;
    auto* matrixCmd = app.add_subcommand("matrix", "print the Shapovalov matrix B_nu");
    addCommon(matrixCmd, mArgs);
    matrixCmd->add_option("--nu", mNu, "simple-root coefficients, e.g. 1,1")->required();

    CommonArgs dArgs;
    std::string dNu;
    auto* detCmd = app.add_subcommand("det", "determinant and norm of B_nu with verification");
    addCommon(detCmd, dArgs);
    detCmd->add_option("--nu", dNu)->required();

    CommonArgs vArgs;
    int vMaxHeight = 2;
    auto* verifyCmd = app.add_subcommand("verify", "verify the factorization up to a height");
    addCommon(verifyCmd, vArgs);
    verifyCmd->add_option("--max-height", vMaxHeight)->check(CLI::Range(1, 8));

    // ---- weight classification --------------------------------------------
    CommonArgs sArgs;
    std::string sLambda;
    auto* simpleCmd = app.add_subcommand("simple", "Weyl module simplicity test");
    addCommon(simpleCmd, sArgs);
    simpleCmd->add_option("--lambda", sLambda, "weight coordinates, e.g. 1/3,0,-2")->required();

    CommonArgs cArgs;
    std::string cLambda;
    int cMaxHeight = 0;
    auto* classifyCmd = app.add_subcommand("classify", "regular/subregular/degenerate");
    addCommon(classifyCmd, cArgs);
    classifyCmd->add_option("--lambda", cLambda)->required();
    classifyCmd->add_option("--max-height", cMaxHeight);

    CommonArgs jArgs;
    std::string jLambda, jRho;
    int jMaxHeight = 0;
    auto* jantzenCmd = app.add_subcommand("jantzen", "Jantzen vanishing orders along a line");
    addCommon(jantzenCmd, jArgs);
    jantzenCmd->add_option("--lambda", jLambda)->required();
    jantzenCmd->add_option("--rho-prime", jRho, "generic direction (default 3^(i-1))");
    jantzenCmd->add_option("--max-height", jMaxHeight);

    CommonArgs scArgs;
    std::string scLambda, scRho, scNu;
    auto* sumCmd = app.add_subcommand("sumcheck", "Jantzen sum formula at one nu");
    addCommon(sumCmd, scArgs);
    sumCmd->add_option("--lambda", scLambda)->required();
    sumCmd->add_option("--nu", scNu)->required();
    sumCmd->add_option("--rho-prime", scRho);

    CommonArgs chArgs;
    std::string chLambda, chWhich = "Verma";
    int chMaxHeight = 0;
    auto* charCmd = app.add_subcommand("char", "character coefficients up to a height");
    addCommon(charCmd, chArgs);
    charCmd->add_option("--lambda", chLambda)->required();
    charCmd->add_option("--module", chWhich, "Verma|Weyl")->check(CLI::IsMember({"Verma", "Weyl"}));
    charCmd->add_option("--max-height", chMaxHeight);

    // ---- centre -------------------------------------------------------------
    CommonArgs zArgs;
    std::string zPoly;
    auto* centreCmd = app.add_subcommand("centre-check", "centre image membership of a polynomial");
    addCommon(centreCmd, zArgs);
    centreCmd->add_option("--poly", zPoly, "polynomial in h1..hn")->required();

    CommonArgs tgArgs;
    auto* tgCmd = app.add_subcommand("tg", "the polynomial t_g");
    addCommon(tgCmd, tgArgs);

    CommonArgs searchArgs;
    int searchDegree = 2;
    bool searchTwisted = false;
    auto* searchCmd = app.add_subcommand("search", "brute-force (anti)centre search");
    addCommon(searchCmd, searchArgs);
    searchCmd->add_option("--degree", searchDegree)->check(CLI::Range(0, 6));
    searchCmd->add_flag("--twisted", searchTwisted, "twisted adjoint action (anticentre)");

    CommonArgs conArgs;
    std::string conPoly;
    int conMaxHeight = 2;
    auto* constructCmd = app.add_subcommand("construct", "Kac-style central element construction");
    addCommon(constructCmd, conArgs);
    constructCmd->add_option("--poly", conPoly)->required();
    constructCmd->add_option("--max-height", conMaxHeight)->check(CLI::Range(0, 6));

    auto* selftestCmd = app.add_subcommand("selftest", "run the acceptance suite");
    std::vector<int> selftestOnly;
    selftestCmd->add_option("--only", selftestOnly, "criterion numbers to run");

    CLI11_PARSE(app, argc, argv);

    try {
        if (matrixCmd->parsed()) {
            auto kind = mArgs.algebra();
            auto nu = cli::parseRootVector(mNu, kind.n);
            alg::PolyMatrix B = shap::shapovalovMatrix(kind, nu);
            if (mArgs.json) {
                shap::ShapovalovReport rep = shap::verifyFactorization(kind, nu, true);
                std::cout << rep.json() << "\n";
            } else {
                std::cout << kind.str() << ", nu = " << nu.str() << ", size " << B.rows() << "\n"
                          << B.str(alg::hVarNames(kind.n));
            }
            return kExitOk;
        }
        if (detCmd->parsed()) {
            auto kind = dArgs.algebra();
            auto nu = cli::parseRootVector(dNu, kind.n);
            shap::ShapovalovReport rep = shap::verifyFactorization(kind, nu);
            if (dArgs.json) {
                std::cout << rep.json() << "\n";
            } else {
                std::cout << "det B_nu  = " << rep.detStr() << "\n"
                          << "Norm S_nu = " << rep.norm.str() << "\n"
                          << "scalar    = " << alg::ratStr(rep.scalar)
                          << ", leadingOk = " << (rep.leadingOk ? "yes" : "no")
                          << ", degreeOk = " << (rep.degreeOk ? "yes" : "no") << "\n";
            }
            return rep.leadingOk && rep.degreeOk ? kExitOk : kExitMismatch;
        }
        if (verifyCmd->parsed()) {
            auto kind = vArgs.algebra();
            bool ok = true;
            for (const auto& nu : roots::rootVectorsUpToHeight(kind.n, vMaxHeight, false)) {
                try {
                    shap::ShapovalovReport rep = shap::verifyFactorization(kind, nu);
                    bool good = rep.leadingOk && rep.degreeOk && rep.scalar != 0;
                    ok = ok && good;
                    std::cout << (good ? "ok   " : "FAIL ") << kind.str() << " nu=" << nuKey(nu)
                              << " scalar=" << alg::ratStr(rep.scalar) << "\n";
                } catch (const shap::FactorizationMismatch& ex) {
                    ok = false;
                    std::cout << "FAIL " << kind.str() << " nu=" << nuKey(nu) << ": " << ex.what()
                              << "\n";
                }
            }
            return ok ? kExitOk : kExitMismatch;
        }
        if (simpleCmd->parsed()) {
            auto kind = sArgs.algebra();
            auto lambda = parseWeight(kind, sLambda);
            bool simple = rep::isSimpleWeyl(kind, lambda);
            rep::WeightClass cls = rep::classifyWeight(kind, lambda);
            if (sArgs.json) {
                std::cout << "{\"schema\":\"qshap/1\",\"simple\":" << (simple ? "true" : "false")
                          << ",\"witness\":" << rep::weightClassJson(cls) << "}\n";
            } else {
                std::cout << (simple ? "simple" : "not simple") << "; " << cls.str() << "\n";
            }
            return kExitOk;
        }
        if (classifyCmd->parsed()) {
            auto kind = cArgs.algebra();
            auto lambda = parseWeight(kind, cLambda);
            rep::WeightClass cls = rep::classifyWeight(kind, lambda, cMaxHeight);
            std::cout << (cArgs.json ? rep::weightClassJson(cls) : cls.str()) << "\n";
            return kExitOk;
        }
        if (jantzenCmd->parsed()) {
            auto kind = jArgs.algebra();
            auto lambda = parseWeight(kind, jLambda);
            auto rho = jRho.empty() ? rep::defaultRhoPrime(kind) : parseWeight(kind, jRho);
            int cutoff = jMaxHeight ? jMaxHeight : rep::defaultHeightCutoff(kind.n);
            auto orders = rep::jantzenOrders(kind, lambda, rho, cutoff);
            auto coranks = rep::corankProfile(kind, lambda, cutoff);
            if (jArgs.json) {
                std::cout << "{\"schema\":\"qshap/1\",\"class\":"
                          << rep::weightClassJson(rep::classifyWeight(kind, lambda))
                          << ",\"coranks\":{";
                bool first = true;
                for (const auto& [nu, ck] : coranks) {
                    if (nu.isZero()) continue;
                    std::cout << (first ? "" : ",") << "\"" << nuKey(nu) << "\":" << ck;
                    first = false;
                }
                std::cout << "},\"orders\":{";
                first = true;
                for (const auto& [nu, m] : orders) {
                    std::cout << (first ? "" : ",") << "\"" << nuKey(nu) << "\":" << m;
                    first = false;
                }
                std::cout << "}}\n";
            } else {
                for (const auto& [nu, m] : orders)
                    std::cout << "nu=" << nuKey(nu) << "  order=" << m
                              << "  corank=" << coranks.at(nu) << "\n";
            }
            return kExitOk;
        }
        if (sumCmd->parsed()) {
            auto kind = scArgs.algebra();
            auto lambda = parseWeight(kind, scLambda);
            auto nu = cli::parseRootVector(scNu, kind.n);
            auto rho = scRho.empty() ? rep::defaultRhoPrime(kind) : parseWeight(kind, scRho);
            rep::SumFormulaReport r = rep::sumFormulaCheck(kind, lambda, nu, rho);
            if (scArgs.json) {
                std::cout << "{\"schema\":\"qshap/1\",\"sumFormulaOk\":" << (r.ok ? "true" : "false")
                          << ",\"predicted\":" << r.predicted << ",\"computed\":" << r.computed
                          << "}\n";
            } else {
                std::cout << "predicted " << r.predicted << ", computed " << r.computed << " -> "
                          << (r.ok ? "ok" : "mismatch") << "\n";
            }
            return r.ok ? kExitOk : kExitMismatch;
        }
        if (charCmd->parsed()) {
            auto kind = chArgs.algebra();
            auto lambda = parseWeight(kind, chLambda);
            int cutoff = chMaxHeight ? chMaxHeight : rep::defaultHeightCutoff(kind.n);
            auto which = chWhich == "Verma" ? rep::ModuleFamily::Verma : rep::ModuleFamily::Weyl;
            auto coeffs = rep::characterCoefficients(kind, lambda, which, cutoff);
            if (chArgs.json) {
                std::cout << "{\"schema\":\"qshap/1\",\"coefficients\":{";
                bool first = true;
                for (const auto& [nu, d] : coeffs) {
                    std::cout << (first ? "" : ",") << "\"" << nuKey(nu) << "\":" << d;
                    first = false;
                }
                std::cout << "}}\n";
            } else {
                for (const auto& [nu, d] : coeffs)
                    std::cout << "nu=" << nuKey(nu) << "  dim=" << d << "\n";
            }
            return kExitOk;
        }
        if (centreCmd->parsed()) {
            auto kind = zArgs.algebra();
            alg::Polynomial phi = cli::parsePoly(zPoly, kind.n);
            cent::ZMembershipResult r = cent::zMembership(kind, phi);
            if (zArgs.json) {
                std::cout << "{\"schema\":\"qshap/1\",\"member\":" << (r.ok ? "true" : "false")
                          << ",\"witness\":\"" << r.witness << "\"}\n";
            } else {
                std::cout << (r.ok ? "in the centre image" : "not in the centre image: " + r.witness)
                          << "\n";
            }
            return r.ok ? kExitOk : kExitMismatch;
        }
        if (tgCmd->parsed()) {
            auto kind = tgArgs.algebra();
            std::cout << cent::tG(kind).str() << "\n";
            return kExitOk;
        }
        if (searchCmd->parsed()) {
            auto kind = searchArgs.algebra();
            cent::InvariantSearchResult r = cent::invariantSearch(kind, searchDegree, searchTwisted);
            if (searchArgs.json) {
                std::cout << "{\"schema\":\"qshap/1\",\"twisted\":"
                          << (r.twisted ? "true" : "false") << ",\"dimension\":" << r.basis.size()
                          << ",\"hcImages\":[";
                for (std::size_t i = 0; i < r.hcImages.size(); ++i)
                    std::cout << (i ? "," : "") << "\"" << r.hcImages[i].str() << "\"";
                std::cout << "]}\n";
            } else {
                std::cout << "found " << r.basis.size() << " invariants, HC images:\n";
                for (const auto& hc : r.hcImages) std::cout << "  " << hc.str() << "\n";
            }
            return kExitOk;
        }
        if (constructCmd->parsed()) {
            auto kind = conArgs.algebra();
            alg::Polynomial phi = cli::parsePoly(conPoly, kind.n);
            cent::CentralTruncation tr = cent::centralTruncation(kind, phi, conMaxHeight);
            if (conArgs.json) {
                std::cout << "{\"schema\":\"qshap/1\",\"residualZero\":"
                          << (tr.residualZero ? "true" : "false") << ",\"terms\":{";
                bool first = true;
                for (const auto& [nu, z] : tr.zs) {
                    std::cout << (first ? "" : ",") << "\"" << nuKey(nu) << "\":\"" << z.str()
                              << "\"";
                    first = false;
                }
                std::cout << "}}\n";
            } else {
                for (const auto& [nu, z] : tr.zs)
                    std::cout << "z[" << nuKey(nu) << "] = " << z.str() << "\n";
                std::cout << "residual " << (tr.residualZero ? "zero" : "NONZERO") << "\n";
            }
            return tr.residualZero ? kExitOk : kExitMismatch;
        }
        if (selftestCmd->parsed()) {
            bool ok = accept::runAcceptance(std::cout, selftestOnly);
            return ok ? kExitOk : kExitMismatch;
        }
    } catch (const cli::ParseError& ex) {
        std::cerr << "parse error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const shap::FactorizationMismatch& ex) {
        std::cerr << "verification mismatch: " << ex.what() << "\n";
        return kExitMismatch;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitMismatch;
    }
    return kExitUsage;
}
