#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ytf {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator), which is exactly the invariant we need.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string rat_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Parses "p/q" or "p". Throws on malformed input or zero denominator.
inline Rational rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

inline double rat_to_double(const Rational& q) { return q.get_d(); }

}  // namespace ytf
