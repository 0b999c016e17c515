#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace lfa {

/// Exact rational scalar. Used wherever a value is genuinely rational:
/// Haar measures, characteristic-2 character sums, rational weight cells,
/// ball averages of rational data.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// q^e as an exact rational, e may be negative.
inline Rational rat_pow(std::int64_t base, std::int64_t e) {
    BigInt b(base);
    BigInt num = 1;
    std::int64_t a = e < 0 ? -e : e;
    for (std::int64_t i = 0; i < a; ++i) num *= b;
    if (e >= 0) return Rational(num);
    return Rational(BigInt(1), num);
}

/// r^e for integer e (r nonzero when e < 0).
inline Rational rat_pow(const Rational& r, std::int64_t e) {
    Rational acc = 1;
    Rational b = e < 0 ? Rational(denominator(r), numerator(r)) : r;
    std::int64_t a = e < 0 ? -e : e;
    for (std::int64_t i = 0; i < a; ++i) acc *= b;
    return acc;
}

/// "num/den" form used for rational-exact CLI output.
inline std::string rat_str(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace lfa
