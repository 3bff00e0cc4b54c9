#ifndef PVA_RATIONAL_HPP
#define PVA_RATIONAL_HPP

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pva {

/// Exact rational number. All arithmetic in the library is exact; there is
/// no floating point anywhere.
using Rat = mpq_class;

/// Thrown on malformed input (expressions, configs, tables).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an operation is outside the supported domain
/// (e.g. D != 1 where required, FuncSym-bearing input where refused).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat rat_of(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "n" or "n/d" with optional sign.
inline Rat rat_parse(const std::string& s) {
    try {
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal: '" + s + "'");
    }
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline Rat rat_pow(const Rat& base, unsigned e) {
    Rat acc = 1, b = base;
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

/// Exact binomial coefficient, n choose k, as a rational.
inline Rat rat_binom(unsigned n, unsigned k) {
    if (k > n) return 0;
    Rat acc = 1;
    for (unsigned i = 0; i < k; ++i) {
        acc *= rat_of(long(n - i));
        acc /= rat_of(long(i + 1));
    }
    return acc;
}

inline Rat rat_factorial(unsigned n) {
    Rat acc = 1;
    for (unsigned i = 2; i <= n; ++i) acc *= rat_of(long(i));
    return acc;
}

} // namespace pva

#endif
