#pragma once

#include <gmpxx.h>

#include <string>

#include "defalg/error.hpp"

namespace defalg {

/* Exact rational scalar.  Canonical form (lowest terms, positive denominator) is
 * maintained by GMP for all arithmetic; direct (num,den) construction goes through
 * rat_frac which canonicalizes. */
using Rat = mpq_class;

inline Rat rat_frac(long num, long den) {
    require(den != 0, "rational: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

/* Parse "a" or "a/b" with optional sign.  Round-trips with rat_str. */
inline Rat rat_parse(const std::string& s) {
    require(!s.empty(), "rational: empty string");
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && i == 0) || (c == '+' && i == 0);
        require(ok, "rational: bad character in '" + s + "'");
    }
    Rat r;
    int rc = r.set_str(s, 10);
    require(rc == 0, "rational: unparsable '" + s + "'");
    require(r.get_den() != 0, "rational: zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

} // namespace defalg
