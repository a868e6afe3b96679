#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstddef>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "solidspin/half_int.hpp"

namespace solidspin {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Shared factorial table. Grows lazily under a mutex and entries are
/// immutable once computed; returned references stay valid for the process
/// lifetime (deque storage never relocates).
inline const BigInt& factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial of negative argument");
    static std::deque<BigInt> table{BigInt(1)};
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while (static_cast<int>(table.size()) <= n) {
        table.push_back(table.back() * static_cast<unsigned long>(table.size()));
    }
    return table[static_cast<std::size_t>(n)];
}

/// Factorial of an integral HalfInt.
inline const BigInt& factorial(HalfInt n) { return factorial(n.to_int()); }

/// Squared triangle coefficient
///   delta2(a,b,c) = (a+b-c)! (a-b+c)! (-a+b+c)! / (a+b+c+1)!
/// as an exact rational; the 6j/9j formulas use the square root of products
/// of these.
inline BigRat delta2(HalfInt a, HalfInt b, HalfInt c) {
    BigRat r(factorial(a + b - c) * factorial(a - b + c));
    r *= factorial(-a + b + c);
    r /= factorial((a + b + c).to_int() + 1);
    return r;
}

/// Value of the form sign * sqrt(magnitude_squared) with an exact rational
/// magnitude_squared >= 0. Conversion to double is the only lossy step.
struct ExactCoefficient {
    int sign = 0;  // -1, 0, +1
    BigRat magnitude_squared = 0;

    static ExactCoefficient zero() { return {}; }

    static ExactCoefficient from_sqrt(const BigRat& radicand, int sgn) {
        if (sgn == 0 || radicand == 0) return {};
        return {sgn, radicand};
    }

    /// sign * sqrt(q2) with q2 carrying the sign of the rational value q:
    /// value = q * sqrt(extra).
    static ExactCoefficient from_rational_times_sqrt(const BigRat& q, const BigRat& extra) {
        int s = sgn(q);
        if (s == 0 || extra == 0) return {};
        return {s, BigRat(q * q * extra)};
    }

    bool is_zero() const { return sign == 0; }

    double to_double() const;
};

/// Fixed-precision MPFR float with value semantics. Only the operations the
/// coupling backend needs are wrapped.
class BigFloat {
public:
    static constexpr mpfr_prec_t kDefaultPrec = 320;

    explicit BigFloat(mpfr_prec_t prec = kDefaultPrec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    BigFloat& operator=(BigFloat o) { mpfr_swap(v_, o.v_); return *this; }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    static BigFloat from(double x, mpfr_prec_t prec = kDefaultPrec) {
        BigFloat f(prec);
        mpfr_set_d(f.v_, x, MPFR_RNDN);
        return f;
    }
    static BigFloat from(const BigInt& z, mpfr_prec_t prec = kDefaultPrec) {
        BigFloat f(prec);
        mpfr_set_z(f.v_, z.get_mpz_t(), MPFR_RNDN);
        return f;
    }
    static BigFloat from(const BigRat& q, mpfr_prec_t prec = kDefaultPrec) {
        BigFloat f(prec);
        mpfr_set_q(f.v_, q.get_mpq_t(), MPFR_RNDN);
        return f;
    }

    BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend BigFloat operator+(BigFloat a, const BigFloat& b) { a += b; return a; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { a -= b; return a; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { a *= b; return a; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { a /= b; return a; }

    BigFloat& negate() { mpfr_neg(v_, v_, MPFR_RNDN); return *this; }

    static BigFloat sqrt(const BigFloat& a) {
        BigFloat f(mpfr_get_prec(a.v_));
        mpfr_sqrt(f.v_, a.v_, MPFR_RNDN);
        return f;
    }
    static BigFloat sqrt(const BigRat& q, mpfr_prec_t prec = kDefaultPrec) {
        return sqrt(from(q, prec));
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    int sign() const { return mpfr_sgn(v_); }

private:
    mpfr_t v_;
};

inline double ExactCoefficient::to_double() const {
    if (sign == 0) return 0.0;
    return sign * BigFloat::sqrt(magnitude_squared).to_double();
}

}  // namespace solidspin
