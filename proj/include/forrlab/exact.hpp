#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace forrlab {

// Exact arbitrary-precision arithmetic backing every counting formula and
// probability bound. No floating point on any bound-checking path.
using BigCount = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;

inline BigCount big_pow(const BigCount& base, unsigned e) {
    BigCount r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

inline BigCount pow2(unsigned e) { return BigCount{1} << e; }

// C(n, k) as an exact integer; 0 when k > n.
inline BigCount binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigCount r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

} // namespace forrlab
