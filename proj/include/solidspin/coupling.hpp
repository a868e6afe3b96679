#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>

#include "solidspin/exact.hpp"
#include "solidspin/half_int.hpp"

namespace solidspin {

namespace detail {

/// Racah sum and triangle factors of a 6j symbol, kept separate so that the
/// 9j x-summation can pool the square-root-free part. For {a b c; d e f} the
/// value is sum * sqrt(d2_abc * d2_aef * d2_dbf * d2_dec).
struct SixJParts {
    bool nonzero = false;
    BigRat d2_abc, d2_aef, d2_dbf, d2_dec;
    BigRat sum;
};

inline SixJParts six_j_parts(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f) {
    SixJParts p;
    if (!triangle(a, b, c) || !triangle(a, e, f) || !triangle(d, b, f) || !triangle(d, e, c))
        return p;
    p.nonzero = true;
    p.d2_abc = delta2(a, b, c);
    p.d2_aef = delta2(a, e, f);
    p.d2_dbf = delta2(d, b, f);
    p.d2_dec = delta2(d, e, c);

    const int t1 = (a + b + c).to_int();
    const int t2 = (a + e + f).to_int();
    const int t3 = (d + b + f).to_int();
    const int t4 = (d + e + c).to_int();
    const int q1 = (a + b + d + e).to_int();
    const int q2 = (b + c + e + f).to_int();
    const int q3 = (a + c + d + f).to_int();

    const int lo = std::max({t1, t2, t3, t4});
    const int hi = std::min({q1, q2, q3});
    BigRat sum = 0;
    for (int nu = lo; nu <= hi; ++nu) {
        BigRat term(factorial(nu + 1));
        term /= factorial(nu - t1);
        term /= factorial(nu - t2);
        term /= factorial(nu - t3);
        term /= factorial(nu - t4);
        term /= factorial(q1 - nu);
        term /= factorial(q2 - nu);
        term /= factorial(q3 - nu);
        if (nu % 2 != 0) term = -term;
        sum += term;
    }
    p.sum = sum;
    return p;
}

}  // namespace detail

/// Wigner 3j symbol, exact. Racah single-sum formula.
inline ExactCoefficient wigner_3j_exact(HalfInt j1, HalfInt j2, HalfInt j3,
                                        HalfInt m1, HalfInt m2, HalfInt m3) {
    detail::require_jm(j1, m1, "wigner_3j");
    detail::require_jm(j2, m2, "wigner_3j");
    detail::require_jm(j3, m3, "wigner_3j");
    if ((m1 + m2 + m3).twice() != 0) return ExactCoefficient::zero();
    if (!triangle(j1, j2, j3)) return ExactCoefficient::zero();

    BigRat pre2 = delta2(j1, j2, j3);
    pre2 *= factorial(j1 + m1);
    pre2 *= factorial(j1 - m1);
    pre2 *= factorial(j2 + m2);
    pre2 *= factorial(j2 - m2);
    pre2 *= factorial(j3 + m3);
    pre2 *= factorial(j3 - m3);

    const int klo = std::max({0, -(j3 - j2 + m1).to_int(), -(j3 - j1 - m2).to_int()});
    const int khi = std::min({(j1 + j2 - j3).to_int(), (j1 - m1).to_int(), (j2 + m2).to_int()});
    BigRat sum = 0;
    for (int k = klo; k <= khi; ++k) {
        BigRat term = 1;
        term /= factorial(k);
        term /= factorial((j1 + j2 - j3).to_int() - k);
        term /= factorial((j1 - m1).to_int() - k);
        term /= factorial((j2 + m2).to_int() - k);
        term /= factorial((j3 - j2 + m1).to_int() + k);
        term /= factorial((j3 - j1 - m2).to_int() + k);
        if (k % 2 != 0) term = -term;
        sum += term;
    }
    if (parity_phase(j1 - j2 - m3) < 0) sum = -sum;
    return ExactCoefficient::from_rational_times_sqrt(sum, pre2);
}

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> with the Condon-Shortley
/// phase, exact.
inline ExactCoefficient clebsch_gordan_exact(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                                             HalfInt J, HalfInt M) {
    detail::require_jm(J, M, "clebsch_gordan");
    ExactCoefficient w = wigner_3j_exact(j1, j2, J, m1, m2, -M);
    if (w.is_zero()) return w;
    w.magnitude_squared *= (J.twice() + 1);
    if (parity_phase(j1 - j2 + M) < 0) w.sign = -w.sign;
    return w;
}

inline double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                             HalfInt J, HalfInt M) {
    return clebsch_gordan_exact(j1, m1, j2, m2, J, M).to_double();
}

/// Wigner 6j symbol {j1 j2 j3; j4 j5 j6}, exact (Racah single sum).
inline ExactCoefficient wigner_6j_exact(HalfInt j1, HalfInt j2, HalfInt j3,
                                        HalfInt j4, HalfInt j5, HalfInt j6) {
    for (HalfInt j : {j1, j2, j3, j4, j5, j6}) detail::require_nonnegative_j(j, "wigner_6j");
    detail::SixJParts p = detail::six_j_parts(j1, j2, j3, j4, j5, j6);
    if (!p.nonzero) return ExactCoefficient::zero();
    BigRat d2 = p.d2_abc * p.d2_aef;
    d2 *= p.d2_dbf;
    d2 *= p.d2_dec;
    return ExactCoefficient::from_rational_times_sqrt(p.sum, d2);
}

inline double wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3,
                        HalfInt j4, HalfInt j5, HalfInt j6) {
    return wigner_6j_exact(j1, j2, j3, j4, j5, j6).to_double();
}

/// Wigner 9j symbol (row-major arguments), exact.
///
/// Evaluated through the single sum over triple 6j products. Each x-dependent
/// triangle coefficient appears in exactly two of the three 6j symbols, so the
/// summand is rational once the six x-independent triangle factors are pulled
/// out front; the whole symbol stays in sign * sqrt(rational) form.
inline ExactCoefficient wigner_9j_exact(HalfInt j1, HalfInt j2, HalfInt j3,
                                        HalfInt j4, HalfInt j5, HalfInt j6,
                                        HalfInt j7, HalfInt j8, HalfInt j9) {
    for (HalfInt j : {j1, j2, j3, j4, j5, j6, j7, j8, j9})
        detail::require_nonnegative_j(j, "wigner_9j");
    if (!triangle(j1, j2, j3) || !triangle(j4, j5, j6) || !triangle(j7, j8, j9) ||
        !triangle(j1, j4, j7) || !triangle(j2, j5, j8) || !triangle(j3, j6, j9))
        return ExactCoefficient::zero();

    // All three x-coupled pairs must admit a common x parity.
    const int xpar = (j1 + j9).twice() % 2;
    if ((j4 + j8).twice() % 2 != xpar || (j2 + j6).twice() % 2 != xpar)
        return ExactCoefficient::zero();
    const HalfInt xlo = std::max({abs(j1 - j9), abs(j4 - j8), abs(j2 - j6)});
    const HalfInt xhi = std::min({j1 + j9, j4 + j8, j2 + j6});
    if (xlo > xhi) return ExactCoefficient::zero();

    BigRat common = delta2(j1, j4, j7) * delta2(j8, j9, j7);
    common *= delta2(j2, j5, j8);
    common *= delta2(j4, j5, j6);
    common *= delta2(j3, j6, j9);
    common *= delta2(j3, j1, j2);

    BigRat sum = 0;
    for (HalfInt x = xlo; x <= xhi; x += 1) {
        detail::SixJParts p1 = detail::six_j_parts(j1, j4, j7, j8, j9, x);
        detail::SixJParts p2 = detail::six_j_parts(j2, j5, j8, j4, x, j6);
        detail::SixJParts p3 = detail::six_j_parts(j3, j6, j9, x, j1, j2);
        if (!p1.nonzero || !p2.nonzero || !p3.nonzero) continue;
        BigRat term = p1.sum * p2.sum;
        term *= p3.sum;
        term *= p1.d2_aef;  // delta2(j1, j9, x), shared with p3
        term *= p1.d2_dbf;  // delta2(j8, j4, x), shared with p2
        term *= p2.d2_aef;  // delta2(j2, x, j6), shared with p3
        term *= (x.twice() + 1);
        sum += term;
    }
    if (xlo.twice() % 2 != 0) sum = -sum;  // (-1)^{2x}, constant over the sum
    return ExactCoefficient::from_rational_times_sqrt(sum, common);
}

inline double wigner_9j(HalfInt j1, HalfInt j2, HalfInt j3,
                        HalfInt j4, HalfInt j5, HalfInt j6,
                        HalfInt j7, HalfInt j8, HalfInt j9) {
    return wigner_9j_exact(j1, j2, j3, j4, j5, j6, j7, j8, j9).to_double();
}

}  // namespace solidspin
