#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace complexlab {

using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parse "num/den" or a plain integer string.
inline Rational parse_rational(const std::string& text) {
    Rational r;
    if (r.set_str(text, 10) != 0 || (text.find('/') != std::string::npos && r.get_den() == 0))
        throw std::invalid_argument("parse_rational: bad rational literal '" + text + "'");
    if (r.get_den() == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

inline std::string rational_str(const Rational& r) { return r.get_str(); }

inline bool is_probability(const Rational& r) { return r >= 0 && r <= 1; }

/// Exact rational value of a double (every finite double is rational).
inline Rational rational_from_double(double x) {
    if (!(x == x) || x > 1e300 || x < -1e300)
        throw std::invalid_argument("rational_from_double: not a finite value");
    return Rational(x);
}

} // namespace complexlab
