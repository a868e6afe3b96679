#pragma once

// Floating-point recomputation of the coupling symbols at a fixed MPFR
// precision: factorials, triangle coefficients, Racah sums, the 9j x-sum and
// the reduced SU(3) coefficient are all evaluated in `prec`-bit floats from
// scratch. Entirely separate from the exact big-rational backend; used to
// cross-check it.

#include <algorithm>

#include "solidspin/exact.hpp"
#include "solidspin/half_int.hpp"

namespace testsupport {

using solidspin::BigFloat;
using solidspin::HalfInt;

inline BigFloat fact_f(int n, mpfr_prec_t prec) {
    BigFloat f = BigFloat::from(1.0, prec);
    for (int i = 2; i <= n; ++i) f *= BigFloat::from(double(i), prec);
    return f;
}

inline BigFloat delta_f(HalfInt a, HalfInt b, HalfInt c, mpfr_prec_t prec) {
    BigFloat d = fact_f((a + b - c).to_int(), prec);
    d *= fact_f((a - b + c).to_int(), prec);
    d *= fact_f((-a + b + c).to_int(), prec);
    d /= fact_f((a + b + c).to_int() + 1, prec);
    return BigFloat::sqrt(d);
}

inline BigFloat sixj_f(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6,
                       mpfr_prec_t prec) {
    if (!solidspin::triangle(j1, j2, j3) || !solidspin::triangle(j1, j5, j6) ||
        !solidspin::triangle(j4, j2, j6) || !solidspin::triangle(j4, j5, j3))
        return BigFloat(prec);
    const int t1 = (j1 + j2 + j3).to_int();
    const int t2 = (j1 + j5 + j6).to_int();
    const int t3 = (j4 + j2 + j6).to_int();
    const int t4 = (j4 + j5 + j3).to_int();
    const int q1 = (j1 + j2 + j4 + j5).to_int();
    const int q2 = (j2 + j3 + j5 + j6).to_int();
    const int q3 = (j1 + j3 + j4 + j6).to_int();
    BigFloat sum(prec);
    for (int nu = std::max({t1, t2, t3, t4}); nu <= std::min({q1, q2, q3}); ++nu) {
        BigFloat term = fact_f(nu + 1, prec);
        term /= fact_f(nu - t1, prec);
        term /= fact_f(nu - t2, prec);
        term /= fact_f(nu - t3, prec);
        term /= fact_f(nu - t4, prec);
        term /= fact_f(q1 - nu, prec);
        term /= fact_f(q2 - nu, prec);
        term /= fact_f(q3 - nu, prec);
        if (nu % 2 != 0) term.negate();
        sum += term;
    }
    sum *= delta_f(j1, j2, j3, prec);
    sum *= delta_f(j1, j5, j6, prec);
    sum *= delta_f(j4, j2, j6, prec);
    sum *= delta_f(j4, j5, j3, prec);
    return sum;
}

inline BigFloat ninej_f(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6,
                        HalfInt j7, HalfInt j8, HalfInt j9, mpfr_prec_t prec) {
    BigFloat sum(prec);
    const int lo = std::max({std::abs(j1.twice() - j9.twice()), std::abs(j4.twice() - j8.twice()),
                             std::abs(j2.twice() - j6.twice())});
    const int hi = std::min({j1.twice() + j9.twice(), j4.twice() + j8.twice(),
                             j2.twice() + j6.twice()});
    for (int tx = lo; tx <= hi; tx += 2) {
        const HalfInt x = HalfInt::from_twice(tx);
        BigFloat term = sixj_f(j1, j4, j7, j8, j9, x, prec);
        term *= sixj_f(j2, j5, j8, j4, x, j6, prec);
        term *= sixj_f(j3, j6, j9, x, j1, j2, prec);
        term *= BigFloat::from(double(tx + 1), prec);
        if (tx % 2 != 0) term.negate();
        sum += term;
    }
    return sum;
}

/// Reduced coefficient A^{sigma,k}_{N,J}, all-float route at `prec` bits.
inline BigFloat reduced_a_f(int n, HalfInt j, int sigma, HalfInt k, mpfr_prec_t prec) {
    const int n2j = n - j.twice();
    BigFloat sum(prec);
    for (int nu = std::max(n2j, sigma); nu <= std::min(n, n2j + sigma); ++nu) {
        BigFloat r = fact_f(nu, prec);
        r *= fact_f(n - nu + sigma + 1, prec);
        r /= fact_f(nu - n2j, prec);
        r /= fact_f(n2j + sigma - nu, prec);
        r /= fact_f(n - nu, prec);
        r /= fact_f(nu - sigma, prec);
        if (nu % 2 != 0) r.negate();
        r *= ninej_f(HalfInt::from_twice(n + sigma - nu), HalfInt::from_twice(n - nu),
                     HalfInt::from_twice(sigma), HalfInt::from_twice(sigma - nu + n2j),
                     HalfInt::from_twice(nu - n2j), HalfInt::from_twice(sigma), j, j, k, prec);
        sum += r;
    }
    BigFloat pre = BigFloat::from(2.0 * (j.twice() + 1), prec);
    pre *= fact_f(n - sigma, prec);
    pre *= fact_f(sigma - k.to_int(), prec);
    pre *= fact_f(sigma + k.to_int() + 1, prec);
    pre /= fact_f(n + sigma + 2, prec);
    sum *= BigFloat::sqrt(pre);
    sum *= BigFloat::from(double(sigma + 1), prec);
    sum /= fact_f(sigma, prec);
    if (n % 2 != 0) sum.negate();
    return sum;
}

}  // namespace testsupport
