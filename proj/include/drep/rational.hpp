#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace drep {

// Exact rational coefficients. mpq_class keeps values canonical
// (reduced fraction, positive denominator) through arithmetic.
using Rational = mpq_class;

inline Rational rational_from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0)
        throw std::runtime_error("bad rational literal: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) {
    return q.get_str();
}

// Pivot magnitude used by the exact solver: |numerator| * |denominator|.
inline mpz_class pivot_magnitude(const Rational& q) {
    return abs(q.get_num()) * q.get_den();
}

} // namespace drep
