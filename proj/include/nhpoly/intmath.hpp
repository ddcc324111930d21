#pragma once

#include <vector>

#include "nhpoly/rational.hpp"

namespace nhpoly {

/// Binomial coefficient with the convention C(a,b) = 0 unless 0 <= b <= a.
inline i64 binom(i64 a, i64 b) {
    if (b < 0 || b > a) return 0;
    if (b > a - b) b = a - b;
    __int128 r = 1;
    for (i64 i = 1; i <= b; ++i) {
        r = r * (a - b + i) / i;
        if (r > INT64_MAX) throw ArithmeticOverflow("binomial exceeds 64-bit range");
    }
    return (i64)r;
}

inline bool is_prime_i64(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline i64 lcm_of(const std::vector<i64>& xs) {
    i64 l = 1;
    for (i64 x : xs) l = lcm_i64(l, x);
    return l;
}

inline i64 ipow(i64 b, int e) {
    __int128 r = 1;
    for (int i = 0; i < e; ++i) {
        r *= b;
        if (r > INT64_MAX) throw ArithmeticOverflow("power exceeds 64-bit range");
    }
    return (i64)r;
}

} // namespace nhpoly
