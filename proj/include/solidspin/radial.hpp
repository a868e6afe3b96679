#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "solidspin/coupling.hpp"
#include "solidspin/exact.hpp"
#include "solidspin/functions.hpp"
#include "solidspin/su3.hpp"

namespace solidspin {

/// Radial functions R_{J,k}(r) of the kernel as Legendre expansions,
///   R_{J,k}(r) = sum_{J'} c[J][k][J'] P_{J'}(1 - 2r),
/// plus the reduced-kernel weights gamma[J][k] = int_0^1 R_{J,k}(r) r dr.
/// Coefficients are assembled in extended precision from the exact 6j and
/// reduced-A backends, then rounded once.
class RadialTable {
public:
    explicit RadialTable(int n) : n_(n) {
        if (n < 0) throw std::invalid_argument("RadialTable: negative N");
        c_.resize(static_cast<std::size_t>(n + 1));
        gamma_.resize(static_cast<std::size_t>(n + 1));
        const BigRat dim_rat = BigRat(BigInt(n + 1) * (n + 2)) / 2;  // d = (N+1)(N+2)/2

        for (int tj = 0; tj <= n; ++tj) {
            const HalfInt j = HalfInt::from_twice(tj);
            const int kmax = std::min(tj, n);
            c_[static_cast<std::size_t>(tj)].assign(static_cast<std::size_t>(kmax + 1),
                                                    std::vector<double>(static_cast<std::size_t>(n + 1), 0.0));
            gamma_[static_cast<std::size_t>(tj)].assign(static_cast<std::size_t>(kmax + 1), 0.0);

            for (int k = 0; k <= kmax; ++k) {
                std::vector<BigFloat> acc(static_cast<std::size_t>(n + 1));
                BigFloat gacc;
                for (int sigma = std::max(k, 0); sigma <= n; ++sigma) {
                    if (k > sigma) continue;
                    const BigFloat a = reduced_a_bigfloat(n, j, sigma, HalfInt(k));
                    if (a.sign() == 0) continue;
                    BigRat f2(2 * (sigma + 1));
                    f2 *= (sigma + 1);
                    f2 *= (sigma + 1);
                    f2 /= BigInt(n + 1) * (n + 2);
                    const BigFloat fa = BigFloat::sqrt(f2) * a;

                    for (int jp = 0; jp <= sigma; ++jp) {
                        const ExactCoefficient sixj =
                            wigner_6j_exact(HalfInt::from_twice(sigma), HalfInt::from_twice(sigma),
                                            HalfInt(k), HalfInt::from_twice(sigma),
                                            HalfInt::from_twice(sigma), HalfInt(jp));
                        if (sixj.is_zero()) continue;
                        BigFloat term = fa * BigFloat::sqrt(sixj.magnitude_squared);
                        if (sixj.sign < 0) term.negate();
                        term *= BigFloat::from(double(2 * jp + 1) / double(sigma + 1));
                        if ((sigma + jp + tj) % 2 != 0) term.negate();
                        acc[static_cast<std::size_t>(jp)] += term;
                    }

                    // reduced weights: the sigma >= max(k,1) tail
                    if (sigma >= 1 && k >= 1) {
                        BigRat w(k * (k + 1));
                        w /= BigInt(sigma) * (sigma + 1) * (sigma + 1) * (sigma + 2);
                        BigFloat term = fa * BigFloat::from(w);
                        if ((tj + k) % 2 != 0) term.negate();
                        gacc += term;
                    }
                }
                for (int jp = 0; jp <= n; ++jp)
                    c_[static_cast<std::size_t>(tj)][static_cast<std::size_t>(k)]
                      [static_cast<std::size_t>(jp)] = acc[static_cast<std::size_t>(jp)].to_double();
                if (k == 0)
                    gacc += BigFloat::sqrt(BigRat(tj + 1)) / BigFloat::from(BigRat(2) * dim_rat);
                gamma_[static_cast<std::size_t>(tj)][static_cast<std::size_t>(k)] = gacc.to_double();
            }
        }
    }

    int n() const { return n_; }
    int kmax(HalfInt j) const { return std::min(j.twice(), n_); }

    double coefficient(HalfInt j, int k, int jprime) const {
        check(j, k);
        if (jprime < 0 || jprime > n_) throw std::invalid_argument("RadialTable: J' out of range");
        return c_[static_cast<std::size_t>(j.twice())][static_cast<std::size_t>(k)]
                 [static_cast<std::size_t>(jprime)];
    }

    double gamma(HalfInt j, int k) const {
        check(j, k);
        return gamma_[static_cast<std::size_t>(j.twice())][static_cast<std::size_t>(k)];
    }

    /// R_{J,k}(r) for r in [0,1].
    double eval(HalfInt j, int k, double r) const {
        check(j, k);
        const auto p = legendre_all(n_, 1.0 - 2.0 * r);
        return eval_with_basis(j, k, p);
    }

    /// R_{J,k} evaluated against a precomputed P_{J'}(1-2r) table.
    double eval_with_basis(HalfInt j, int k, const std::vector<double>& p) const {
        const auto& row =
            c_[static_cast<std::size_t>(j.twice())][static_cast<std::size_t>(k)];
        double s = 0.0;
        for (int jp = 0; jp <= n_; ++jp)
            s += row[static_cast<std::size_t>(jp)] * p[static_cast<std::size_t>(jp)];
        return s;
    }

    std::vector<double> legendre_basis(double r) const {
        if (r < 0.0 || r > 1.0) throw std::invalid_argument("RadialTable: r outside [0,1]");
        return legendre_all(n_, 1.0 - 2.0 * r);
    }

private:
    void check(HalfInt j, int k) const {
        if (j.twice() < 0 || j.twice() > n_)
            throw std::invalid_argument("RadialTable: J out of range");
        if (k < 0 || k > kmax(j)) throw std::invalid_argument("RadialTable: k out of range");
    }

    int n_;
    std::vector<std::vector<std::vector<double>>> c_;
    std::vector<std::vector<double>> gamma_;
};

/// Closed-form reference values W_0 and W_pi for the symmetric-subspace
/// mixed state and the lowest-weight mixture, as functions of the linearized
/// polar coordinate s and the radial coordinate r.
inline std::pair<double, double> reference_w0_wpi(const RadialTable& table, double s, double r) {
    const int n = table.n();
    const HalfInt jmax = HalfInt::from_twice(n);
    const double w0 = table.eval(jmax, 0, r) / std::sqrt(n + 1.0);

    const auto pk = legendre_all(n, 1.0 - 2.0 * s);
    const auto pr = table.legendre_basis(r);
    double wpi = 0.0;
    for (int tj = 0; tj <= n; ++tj) {
        const HalfInt j = HalfInt::from_twice(tj);
        for (int k = 0; k <= table.kmax(j); ++k) {
            BigRat f2(factorial(tj) * factorial(tj));
            f2 /= factorial(tj - k);
            f2 /= factorial(tj + k + 1);
            double term = (2 * k + 1) * BigFloat::sqrt(f2).to_double();
            if (k % 2 != 0) term = -term;
            wpi += term * table.eval_with_basis(j, k, pr) * pk[static_cast<std::size_t>(k)];
        }
    }
    wpi /= (n + 1.0);
    return {w0, wpi};
}

}  // namespace solidspin
