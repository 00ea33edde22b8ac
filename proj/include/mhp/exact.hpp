#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mhp {

// Exact rational scalar backing all coefficient tables. Kept in lowest terms
// with positive denominator by cpp_rational; floating point enters only at
// evaluation time.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline BigInt factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial of negative integer");
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt b = 1;
    for (int i = 0; i < k; ++i) { b *= (n - i); b /= (i + 1); }
    return b;
}

inline Rational pow_rat(const Rational& base, int e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("0 to negative power");
        return 1 / pow_rat(base, -e);
    }
    Rational out = 1, b = base;
    while (e) {
        if (e & 1) out *= b;
        b *= b;
        e >>= 1;
    }
    return out;
}

// "num/den" decimal strings, the on-disk format for table caches.
inline std::string rat_to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational rat_from_string(const std::string& s) {
    auto pos = s.find('/');
    if (pos == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, pos)), den(s.substr(pos + 1));
    if (den == 0) throw std::invalid_argument("rational string with zero denominator: " + s);
    return Rational(num, den);
}

}  // namespace mhp
