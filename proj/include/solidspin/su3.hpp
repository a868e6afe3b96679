#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "solidspin/collective.hpp"
#include "solidspin/coupling.hpp"
#include "solidspin/exact.hpp"
#include "solidspin/half_int.hpp"

namespace solidspin {

/// SU(3) irrep label by Dynkin indices. Only (N, 0) and (sigma, sigma) occur
/// here.
struct DynkinLabel {
    int lambda = 0;
    int mu = 0;
};

/// Weight-state label by gl(3) occupation numbers plus the SU(2) multiplicity
/// label I.
struct OccupationLabel {
    int nu1 = 0;
    int nu2 = 0;
    int nu3 = 0;
    HalfInt i;
};

/// (J, M, N) -> occupation label in the convention that embeds the physical
/// SU(2) in the {12} subgroup (the convention of the ladder matrices below):
///   nu = (J+M, J-M, N-2J),  I = (N-J-M)/2.
inline OccupationLabel label_translate(HalfInt j, HalfInt m, int n) {
    validate_spin_label(j, m, n);
    OccupationLabel o;
    o.nu1 = (j + m).to_int();
    o.nu2 = (j - m).to_int();
    o.nu3 = n - j.twice();
    o.i = HalfInt::from_twice((2 * n - j.twice() - m.twice()) / 2);
    if (o.nu1 < 0 || o.nu2 < 0 || o.nu3 < 0)
        throw std::invalid_argument("label_translate: negative occupation");
    return o;
}

inline SpinLabel label_translate_inverse(const OccupationLabel& o, int n) {
    if (o.nu1 < 0 || o.nu2 < 0 || o.nu3 < 0)
        throw std::invalid_argument("label_translate_inverse: negative occupation");
    if (o.nu1 + o.nu2 + o.nu3 != n)
        throw std::invalid_argument("label_translate_inverse: occupations do not sum to N");
    SpinLabel s;
    s.n = n;
    s.j = HalfInt::from_twice(o.nu1 + o.nu2);
    s.m = HalfInt::from_twice(o.nu1 - o.nu2);
    validate_spin_label(s.j, s.m, n);
    return s;
}

/// Same translation in the rotated convention used by the kernel, where the
/// physical SU(2) sits in the {23} subgroup and I coincides with J:
///   nu = (N-2J, J+M, J-M),  I = J.
/// The two conventions are related by the fixed relabeling
/// (nu1, nu2, nu3) -> (nu3, nu1, nu2).
inline OccupationLabel label_translate_23(HalfInt j, HalfInt m, int n) {
    OccupationLabel o = label_translate(j, m, n);
    return OccupationLabel{o.nu3, o.nu1, o.nu2, j};
}

enum class LadderIndex { s12, s21, s13, s31, s23, s32 };

/// The six gl(3) ladder operators on the vectorized collective space, with
/// matrix elements as functions of (J, M, N):
///   S12 |J,M> -> sqrt((J-M)(J+M+1))     |J,M+1>
///   S21 |J,M> -> sqrt((J+M)(J-M+1))     |J,M-1>
///   S13 |J,M> -> sqrt((N-2J)(J+M+1))    |J+1/2,M+1/2>
///   S31 |J,M> -> sqrt((N-2J+1)(J+M))    |J-1/2,M-1/2>
///   S23 |J,M> -> sqrt((N-2J)(J-M+1))    |J+1/2,M-1/2>
///   S32 |J,M> -> sqrt((N-2J+1)(J-M))    |J-1/2,M+1/2>
inline GeneralOperator ladder(LadderIndex which, int n) {
    if (n < 0) throw std::invalid_argument("ladder: negative N");
    GeneralOperator op(n);
    const HalfInt half = HalfInt::from_twice(1);
    for (int tj = 0; tj <= n; ++tj) {
        const HalfInt j = HalfInt::from_twice(tj);
        for (int tm = -tj; tm <= tj; tm += 2) {
            const HalfInt m = HalfInt::from_twice(tm);
            HalfInt jp = j, mp = m;
            double amp2 = 0.0;
            switch (which) {
                case LadderIndex::s12:
                    jp = j; mp = m + 1;
                    amp2 = (j - m).value() * (j + m + 1).value();
                    break;
                case LadderIndex::s21:
                    jp = j; mp = m - 1;
                    amp2 = (j + m).value() * (j - m + 1).value();
                    break;
                case LadderIndex::s13:
                    jp = j + half; mp = m + half;
                    amp2 = double(n - tj) * (j + m + 1).value();
                    break;
                case LadderIndex::s31:
                    jp = j - half; mp = m - half;
                    amp2 = double(n - tj + 1) * (j + m).value();
                    break;
                case LadderIndex::s23:
                    jp = j + half; mp = m - half;
                    amp2 = double(n - tj) * (j - m + 1).value();
                    break;
                case LadderIndex::s32:
                    jp = j - half; mp = m + half;
                    amp2 = double(n - tj + 1) * (j - m).value();
                    break;
            }
            if (amp2 <= 0.0) continue;
            if (jp < HalfInt(0) || jp.twice() > n || !valid_jm(jp, mp)) continue;
            op.block(jp, j)(SpaceIndex::m_index(jp, mp), SpaceIndex::m_index(j, m)) =
                std::sqrt(amp2);
        }
    }
    return op;
}

/// Cartan operator h1 = S11 - S22, diagonal with eigenvalue nu1 - nu2 = 2M.
inline BlockOperator cartan_h1(int n) {
    BlockOperator op(n);
    for (int tj = 0; tj <= n; ++tj) {
        const HalfInt j = HalfInt::from_twice(tj);
        Matrix& blk = op.block(j);
        for (int tm = -tj; tm <= tj; tm += 2)
            blk(SpaceIndex::m_index(j, HalfInt::from_twice(tm)),
                SpaceIndex::m_index(j, HalfInt::from_twice(tm))) = double(tm);
    }
    return op;
}

/// Cartan operator h2 = S22 - S33, diagonal with eigenvalue nu2 - nu3 = 3J - M - N.
inline BlockOperator cartan_h2(int n) {
    BlockOperator op(n);
    for (int tj = 0; tj <= n; ++tj) {
        const HalfInt j = HalfInt::from_twice(tj);
        Matrix& blk = op.block(j);
        for (int tm = -tj; tm <= tj; tm += 2)
            blk(SpaceIndex::m_index(j, HalfInt::from_twice(tm)),
                SpaceIndex::m_index(j, HalfInt::from_twice(tm))) =
                0.5 * (3 * tj - tm) - double(n);
    }
    return op;
}

/// Hypercharge, diagonal with eigenvalue 2J - 2N/3.
inline BlockOperator hypercharge(int n) {
    BlockOperator op(n);
    for (int tj = 0; tj <= n; ++tj) {
        const HalfInt j = HalfInt::from_twice(tj);
        Matrix& blk = op.block(j);
        const double y = double(tj) - 2.0 * n / 3.0;
        for (int tm = -tj; tm <= tj; tm += 2)
            blk(SpaceIndex::m_index(j, HalfInt::from_twice(tm)),
                SpaceIndex::m_index(j, HalfInt::from_twice(tm))) = y;
    }
    return op;
}

/// su(3) generator G_i (i = 1..8) built from the ladder and Cartan operators;
/// at N = 1 these are exactly the halved Gell-Mann matrices.
inline GeneralOperator gell_mann_rep(int i, int n) {
    auto L = [n](LadderIndex w) { return ladder(w, n); };
    switch (i) {
        case 1: return Complex(0.5) * (L(LadderIndex::s12) + L(LadderIndex::s21));
        case 2: return Complex(0.0, -0.5) * (L(LadderIndex::s12) - L(LadderIndex::s21));
        case 3: return Complex(0.5) * GeneralOperator::from_block_diagonal(cartan_h1(n));
        case 4: return Complex(0.5) * (L(LadderIndex::s13) + L(LadderIndex::s31));
        case 5: return Complex(0.0, -0.5) * (L(LadderIndex::s13) - L(LadderIndex::s31));
        case 6: return Complex(0.5) * (L(LadderIndex::s23) + L(LadderIndex::s32));
        case 7: return Complex(0.0, -0.5) * (L(LadderIndex::s23) - L(LadderIndex::s32));
        case 8:
            return Complex(std::sqrt(3.0) / 2.0) *
                   GeneralOperator::from_block_diagonal(hypercharge(n));
        default:
            throw std::invalid_argument("gell_mann_rep: index must be 1..8");
    }
}

/// Kernel normalization factor F_sigma^N = sqrt(2 (sigma+1)^3 / ((N+1)(N+2))).
inline double normalization_f(int sigma, int n) {
    if (n < 0) throw std::invalid_argument("normalization_f: negative N");
    if (sigma < 0 || sigma > n)
        throw std::invalid_argument("normalization_f: need 0 <= sigma <= N");
    const double sp1 = sigma + 1.0;
    return std::sqrt(2.0 * sp1 * sp1 * sp1 / (double(n + 1) * double(n + 2)));
}

/// Reduced SU(3) coupling coefficient A^{sigma,k}_{N,J}: the double-barred
/// factor that multiplies the SU(2) CG coefficient in the (N,0) x (0,N) ->
/// (sigma,sigma) coupling. Alternating factorial sum over 9j symbols; the 9j
/// values enter exactly and the sum is accumulated at `prec` bits.
///
/// The sign convention keeps the leading (-1)^N factor so that the rank-0
/// column assembles to +identity/dim and the kernel has unit (not (-1)^N)
/// trace for every N.
inline BigFloat reduced_a_bigfloat(int n, HalfInt j, int sigma, HalfInt k,
                                   mpfr_prec_t prec = BigFloat::kDefaultPrec) {
    if (n < 0) throw std::invalid_argument("reduced_a: negative N");
    BigFloat zero(prec);
    if (sigma < 0 || sigma > n) return zero;
    if (j < HalfInt(0) || j.twice() > n) return zero;
    if (!k.is_integer() || k < HalfInt(0)) return zero;
    if (k.twice() > 2 * j.twice() || k.to_int() > sigma) return zero;

    const int n2j = n - j.twice();  // N - 2J
    const int lo = std::max(n2j, sigma);
    const int hi = std::min(n, n2j + sigma);

    BigFloat sum(prec);
    for (int nu = lo; nu <= hi; ++nu) {
        BigRat r(factorial(nu) * factorial(n - nu + sigma + 1));
        r /= factorial(nu - n2j);
        r /= factorial(n2j + sigma - nu);
        r /= factorial(n - nu);
        r /= factorial(nu - sigma);
        if (nu % 2 != 0) r = -r;

        const ExactCoefficient ninej = wigner_9j_exact(
            HalfInt::from_twice(n + sigma - nu), HalfInt::from_twice(n - nu),
            HalfInt::from_twice(sigma),
            HalfInt::from_twice(sigma - nu + n2j), HalfInt::from_twice(nu - n2j),
            HalfInt::from_twice(sigma),
            j, j, k);
        if (ninej.is_zero()) continue;

        BigFloat term = BigFloat::from(r, prec) * BigFloat::sqrt(ninej.magnitude_squared, prec);
        if (ninej.sign < 0) term.negate();
        sum += term;
    }

    BigRat pre2(2 * (j.twice() + 1));
    pre2 *= factorial(n - sigma);
    pre2 *= factorial(sigma - k.to_int());
    pre2 *= factorial(sigma + k.to_int() + 1);
    pre2 /= factorial(n + sigma + 2);

    BigRat q(sigma + 1);
    q /= factorial(sigma);
    if (n % 2 != 0) q = -q;

    sum *= BigFloat::from(q, prec);
    sum *= BigFloat::sqrt(pre2, prec);
    return sum;
}

inline double reduced_a(int n, HalfInt j, int sigma, HalfInt k) {
    return reduced_a_bigfloat(n, j, sigma, k).to_double();
}

}  // namespace solidspin
