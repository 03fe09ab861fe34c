#ifndef MODULI_RATIONAL_HPP
#define MODULI_RATIONAL_HPP

#include <gmpxx.h>
#include <string>

namespace moduli {

// Exact rational arithmetic. mpq_class keeps values canonical (reduced,
// positive denominator) after every arithmetic operation, which is what the
// exact-equality tests throughout this project rely on.
using Rational = mpq_class;
using Integer = mpz_class;

// Canonicalizing constructor helper: mpq_class(num, den) does NOT reduce.
inline Rational rat(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rat(long num, long den) { return rat(Integer(num), Integer(den)); }

// Serialized as "p/q", or just "p" for integers.
inline std::string rat_str(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational rat_parse(const std::string& s) {
    Rational q(s);
    q.canonicalize();
    return q;
}

} // namespace moduli

#endif // MODULI_RATIONAL_HPP
