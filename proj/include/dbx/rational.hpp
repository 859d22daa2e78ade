#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace dbx {

// Exact rational scalar. GMP's mpq_class keeps values canonical (reduced,
// positive denominator) as long as raw constructions go through the helpers
// below, which call canonicalize().
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parse separate decimal strings for numerator and denominator.
inline Rat rat_parse(const std::string& num, const std::string& den) {
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw std::invalid_argument("rat_parse: zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

// Parse "p" or "p/q".
inline Rat rat_parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return rat_parse(s, "1");
    return rat_parse(s.substr(0, slash), s.substr(slash + 1));
}

inline std::string num_string(const Rat& r) { return r.get_num().get_str(); }
inline std::string den_string(const Rat& r) { return r.get_den().get_str(); }

// "p" when the denominator is 1, otherwise "p/q".
inline std::string rat_string(const Rat& r) {
    if (r.get_den() == 1) return num_string(r);
    return num_string(r) + "/" + den_string(r);
}

inline double to_double(const Rat& r) { return r.get_d(); }

// Combined bit length of numerator and denominator; used for pivot selection.
inline size_t rat_bits(const Rat& r) {
    return mpz_sizeinbase(r.get_num().get_mpz_t(), 2) +
           mpz_sizeinbase(r.get_den().get_mpz_t(), 2);
}

}  // namespace dbx
