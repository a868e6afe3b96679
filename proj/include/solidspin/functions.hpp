#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "solidspin/exact.hpp"
#include "solidspin/half_int.hpp"

namespace solidspin {

inline constexpr double kPi = std::numbers::pi;

/// Legendre polynomial P_n(x) by the Bonnet recurrence.
inline double legendre_p(int n, double x) {
    if (n < 0) throw std::invalid_argument("legendre_p: negative degree");
    if (x < -1.0 || x > 1.0) throw std::invalid_argument("legendre_p: x outside [-1,1]");
    double pm1 = 1.0, p = x;
    if (n == 0) return pm1;
    for (int m = 1; m < n; ++m) {
        double pnext = ((2 * m + 1) * x * p - m * pm1) / (m + 1);
        pm1 = p;
        p = pnext;
    }
    return p;
}

/// P_0(x) .. P_nmax(x) in one recurrence pass.
inline std::vector<double> legendre_all(int nmax, double x) {
    if (nmax < 0) throw std::invalid_argument("legendre_all: negative degree");
    if (x < -1.0 || x > 1.0) throw std::invalid_argument("legendre_all: x outside [-1,1]");
    std::vector<double> p(static_cast<std::size_t>(nmax) + 1);
    p[0] = 1.0;
    if (nmax >= 1) p[1] = x;
    for (int m = 1; m < nmax; ++m)
        p[m + 1] = ((2 * m + 1) * x * p[m] - m * p[m - 1]) / (m + 1);
    return p;
}

namespace detail {

/// Normalized associated Legendre table Ptilde[l][m] for 0 <= m <= l <= lmax,
/// where Y_l^m(theta, phi) = Ptilde_l^m(theta) e^{i m phi}. Condon-Shortley
/// phase included. Stable normalized forward recurrence.
inline std::vector<std::vector<double>> sph_legendre_table(int lmax, double theta) {
    const double x = std::cos(theta);
    const double s = std::sin(theta);
    std::vector<std::vector<double>> P(static_cast<std::size_t>(lmax) + 1);
    for (int l = 0; l <= lmax; ++l) P[l].resize(static_cast<std::size_t>(l) + 1);
    P[0][0] = 1.0 / std::sqrt(4.0 * kPi);
    for (int m = 1; m <= lmax; ++m)
        P[m][m] = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * P[m - 1][m - 1];
    for (int m = 0; m < lmax; ++m)
        P[m + 1][m] = std::sqrt(2.0 * m + 3.0) * x * P[m][m];
    for (int m = 0; m <= lmax; ++m) {
        for (int l = m + 2; l <= lmax; ++l) {
            const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
            const double b =
                std::sqrt((double(l - 1) * (l - 1) - double(m) * m) / (4.0 * double(l - 1) * (l - 1) - 1.0));
            P[l][m] = a * (x * P[l - 1][m] - b * P[l - 2][m]);
        }
    }
    return P;
}

}  // namespace detail

/// Orthonormal spherical harmonic Y_k^q(theta, phi), Condon-Shortley phase.
/// Satisfies Y(k,-q) = (-1)^q conj(Y(k,q)).
inline std::complex<double> spherical_harmonic(HalfInt k, HalfInt q, double theta, double phi) {
    if (!k.is_integer() || !q.is_integer())
        throw std::invalid_argument("spherical_harmonic: k and q must be integers");
    const int l = k.to_int();
    const int m = q.to_int();
    if (l < 0 || std::abs(m) > l)
        throw std::invalid_argument("spherical_harmonic: need k >= 0 and |q| <= k");
    const auto table = detail::sph_legendre_table(l, theta);
    const int ma = std::abs(m);
    const double p = table[l][ma];
    std::complex<double> y = p * std::polar(1.0, ma * phi);
    if (m < 0) {
        y = std::conj(y);
        if (ma % 2 != 0) y = -y;
    }
    return y;
}

/// Wigner small-d matrix element d^j_{mp,m}(beta) from the standard sum
/// formula. Adequate in double precision for the block sizes used here.
inline double wigner_small_d(HalfInt j, HalfInt mp, HalfInt m, double beta) {
    detail::require_jm(j, mp, "wigner_small_d");
    detail::require_jm(j, m, "wigner_small_d");
    if (!(mp - m).is_integer())
        throw std::invalid_argument("wigner_small_d: mp and m have mismatched integrality");

    const double c = std::cos(0.5 * beta);
    const double s = std::sin(0.5 * beta);
    const int jpm = (j + m).to_int();
    const int jmm = (j - m).to_int();
    const int jpmp = (j + mp).to_int();
    const int jmmp = (j - mp).to_int();
    const int dm = (mp - m).to_int();

    const double norm = std::sqrt(
        BigFloat::from(BigInt(factorial(jpm) * factorial(jmm) * factorial(jpmp) * factorial(jmmp)))
            .to_double());
    const int slo = std::max(0, -dm);
    const int shi = std::min(jpm, jmmp);
    double sum = 0.0;
    for (int k = slo; k <= shi; ++k) {
        const double denom = BigFloat::from(BigInt(factorial(jpm - k) * factorial(k) *
                                                   factorial(dm + k) * factorial(jmmp - k)))
                                 .to_double();
        double term = norm / denom;
        const int cpow = jpm - k + jmmp - k;   // 2j - 2k + m - mp
        const int spow = dm + 2 * k;
        term *= std::pow(c, cpow) * std::pow(s, spow);
        if ((dm + k) % 2 != 0) term = -term;
        sum += term;
    }
    return sum;
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussLegendre gauss_legendre(int n) {
    if (n <= 0) throw std::invalid_argument("gauss_legendre: need n >= 1");
    GaussLegendre g;
    g.nodes.resize(static_cast<std::size_t>(n));
    g.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const double p = legendre_p(n, x);
            const double pm1 = legendre_p(n - 1, x);
            const double dp = n * (x * p - pm1) / (x * x - 1.0);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double pm1 = legendre_p(n - 1, x);
        const double dp = n * (x * legendre_p(n, x) - pm1) / (x * x - 1.0);
        g.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        g.weights[static_cast<std::size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return g;
}

}  // namespace solidspin
