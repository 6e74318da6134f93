#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace harmjet {

// Exact rational scalar. Canonical form (lowest terms, positive denominator)
// is maintained by GMP for every arithmetic result; the constructors below
// canonicalize explicitly because mpq_class(n, d) does not.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

// Strict "p" / "p/q" syntax, q > 0 after canonicalization. Anything else
// (floats, spaces, empty fields, zero denominator) is rejected.
inline Rational rat_from_string(const std::string& s) {
    const auto bad = [&] { return std::invalid_argument("malformed rational '" + s + "'"); };
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
    if (digits == 0) throw bad();
    if (i < s.size()) {
        if (s[i] != '/') throw bad();
        ++i;
        digits = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
        if (digits == 0 || i != s.size()) throw bad();
    }
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0) throw bad();
    if (sgn(Rational(r.get_den())) == 0) throw bad();
    r.canonicalize();
    return r;
}

// Always "p/q", even for integers, so exactness is visible at the interface.
inline std::string rat_to_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace harmjet
