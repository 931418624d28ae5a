#ifndef QSHAP_ACCEPT_HPP
#define QSHAP_ACCEPT_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qshap::accept {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    double seconds;
    std::string detail;
};

// Runs every acceptance criterion (or the listed subset) and prints one
// pass/fail line per criterion. Returns true when all selected pass.
bool runAcceptance(std::ostream& out, const std::vector<int>& only = {});

}  // namespace qshap::accept

#endif
