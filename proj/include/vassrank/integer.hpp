#pragma once

// Arbitrary-precision integers and rationals shared by every module.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vassrank {

using Integer = mpz_class;
/// GMP rationals; every arithmetic result is kept in lowest terms with a
/// positive denominator.
using Rat = mpq_class;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rat>;

inline Rat make_rat(const Integer& numerator, const Integer& denominator) {
    if (denominator == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rat q(numerator, denominator);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Integer& x) { return x.get_str(); }
inline std::string to_string(const Rat& x) { return x.get_str(); }

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

inline bool fits_int64(const Integer& x) {
    return x >= Integer(std::numeric_limits<long>::min()) && x <= Integer(std::numeric_limits<long>::max());
}

inline std::int64_t to_int64(const Integer& x) {
    if (!fits_int64(x)) {
        throw std::overflow_error("integer " + x.get_str() + " does not fit in 64 bits");
    }
    return x.get_si();
}

inline bool all_nonnegative(std::span<const Integer> v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x >= 0; });
}

inline Integer max_abs(std::span<const Integer> v) {
    Integer m = 0;
    for (const auto& x : v) {
        if (abs(x) > m) m = abs(x);
    }
    return m;
}

inline IntVector& add_into(IntVector& acc, std::span<const Integer> v) {
    if (acc.size() != v.size()) {
        throw std::invalid_argument("vector length mismatch");
    }
    for (std::size_t i = 0; i < v.size(); ++i) acc[i] += v[i];
    return acc;
}

inline Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("vector length mismatch");
    }
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace vassrank
