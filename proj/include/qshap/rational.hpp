#ifndef QSHAP_RATIONAL_HPP
#define QSHAP_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qshap::alg {

// Exact rational scalar. mpq_class keeps gcd(|num|,den)=1 and den>0 after
// canonicalize(), which every constructor below guarantees.
using Rat = mpq_class;

inline Rat ratOf(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "-3", "3/4", "-3/4".
inline Rat ratParse(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    if (r.get_den() <= 0) throw std::invalid_argument("bad rational literal: " + s);
    return r;
}

inline std::string ratStr(const Rat& r) { return r.get_str(); }

inline bool isInteger(const Rat& r) { return r.get_den() == 1; }

// Floor of log2-ish magnitude is not needed; tests only compare exactly.

}  // namespace qshap::alg

#endif
