#ifndef IDEALAB_RATIONAL_HPP
#define IDEALAB_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace idealab {

/// Exact arbitrary-precision rational. Every quantity in the core is a Rat;
/// no floating point enters any computation or comparison.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline BigInt rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

/// Canonical "p/q" rendering used by every JSON surface.
inline std::string rat_str(const Rat& q) {
    return rat_num(q).str() + "/" + rat_den(q).str();
}

/// Parses "p/q" or a bare integer "p".
inline Rat rat_parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(BigInt(s));
        }
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational: " + s);
    }
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

/// 2^-k as an exact rational.
inline Rat pow2_inv(unsigned k) {
    BigInt d = 1;
    d <<= k;
    return Rat(1, d);
}

inline Rat pow2(unsigned k) {
    BigInt n = 1;
    n <<= k;
    return Rat(n);
}

} // namespace idealab

#endif
