#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "solidspin/collective.hpp"
#include "solidspin/parallel.hpp"
#include "solidspin/quadrature.hpp"
#include "solidspin/radial.hpp"

namespace solidspin {

/// Point Omega = (theta, phi, r) on the solid-ball manifold; r relates to the
/// underlying group angle beta through r = (1 - cos beta)/2.
struct PhasePoint {
    double theta = 0.0;
    double phi = 0.0;
    double r = 0.0;
};

struct NormalizationConstants {
    int dim = 1;          // d = (N+1)(N+2)/2
    double volume = 0.0;  // script-N = 4 pi^2 / d, the integral of any unit-trace symbol
};

/// Tensor-component cache rho[J][k][q] = Tr((T^{(J)}_{k,q})^dagger rho); the
/// working representation for phase-space evaluation.
class TensorComponents {
public:
    TensorComponents(int n, std::vector<std::vector<std::vector<Complex>>> data)
        : n_(n), data_(std::move(data)) {}

    int n() const { return n_; }

    Complex at(int twoJ, int k, int q) const {
        return data_[static_cast<std::size_t>(twoJ)][static_cast<std::size_t>(k)]
                    [static_cast<std::size_t>(q + k)];
    }

    const std::vector<std::vector<std::vector<Complex>>>& raw() const { return data_; }

    /// All q != 0 components below tol: the state is azimuthally symmetric.
    bool phi_independent(double tol = 1e-10) const {
        for (const auto& byk : data_)
            for (std::size_t k = 0; k < byk.size(); ++k)
                for (std::size_t iq = 0; iq < byk[k].size(); ++iq)
                    if (iq != k && std::abs(byk[k][iq]) > tol) return false;
        return true;
    }

private:
    int n_;
    std::vector<std::vector<std::vector<Complex>>> data_;
};

/// The solid spin Wigner transform for N spin-1/2 particles: immutable
/// per-N tables (radial functions and tensor coefficients), evaluation of
/// Wigner functions and Weyl symbols, the reduced (sphere) symbol, overlap
/// quadrature and negativity.
class WignerTransform {
public:
    explicit WignerTransform(int n) : n_(n), radial_(n) {
        if (n < 0) throw std::invalid_argument("WignerTransform: negative N");
        cg_.resize(static_cast<std::size_t>(n + 1));
        for (int tj = 0; tj <= n; ++tj) {
            const HalfInt j = HalfInt::from_twice(tj);
            auto& byk = cg_[static_cast<std::size_t>(tj)];
            byk.resize(static_cast<std::size_t>(tj + 1));
            for (int k = 0; k <= tj; ++k) {
                auto& byq = byk[static_cast<std::size_t>(k)];
                byq.resize(static_cast<std::size_t>(2 * k + 1));
                const double norm = std::sqrt((2.0 * k + 1.0) / (tj + 1.0));
                for (int q = -k; q <= k; ++q) {
                    auto& col = byq[static_cast<std::size_t>(q + k)];
                    col.assign(static_cast<std::size_t>(tj + 1), 0.0);
                    for (int tm = -tj; tm <= tj; tm += 2) {
                        const HalfInt m = HalfInt::from_twice(tm);
                        const HalfInt mq = m + HalfInt(q);
                        if (!valid_jm(j, mq)) continue;
                        col[static_cast<std::size_t>(SpaceIndex::m_index(j, m))] =
                            norm * clebsch_gordan(j, m, HalfInt(k), HalfInt(q), j, mq);
                    }
                }
            }
        }
    }

    int n() const { return n_; }
    const RadialTable& radial() const { return radial_; }

    NormalizationConstants normalization() const {
        NormalizationConstants c;
        c.dim = dim_v(n_);
        c.volume = 4.0 * kPi * kPi / c.dim;
        return c;
    }

    TensorComponents components(const BlockOperator& op) const {
        if (op.n() != n_) throw std::invalid_argument("components: mismatched N");
        std::vector<std::vector<std::vector<Complex>>> data(static_cast<std::size_t>(n_ + 1));
        for (int tj = 0; tj <= n_; ++tj) {
            const HalfInt j = HalfInt::from_twice(tj);
            auto& byk = data[static_cast<std::size_t>(tj)];
            byk.resize(static_cast<std::size_t>(tj + 1));
            const Matrix* blk = op.block_if(j);
            for (int k = 0; k <= tj; ++k) {
                auto& byq = byk[static_cast<std::size_t>(k)];
                byq.assign(static_cast<std::size_t>(2 * k + 1), Complex(0.0));
                if (!blk) continue;
                for (int q = -k; q <= k; ++q) {
                    const auto& col = cg_coeffs(tj, k, q);
                    Complex acc = 0.0;
                    for (int tm = -tj; tm <= tj; tm += 2) {
                        const int mi = SpaceIndex::m_index(j, HalfInt::from_twice(tm));
                        const double c = col[static_cast<std::size_t>(mi)];
                        if (c == 0.0) continue;
                        acc += c * (*blk)(mi + q, mi);
                    }
                    byq[static_cast<std::size_t>(q + k)] = acc;
                }
            }
        }
        return TensorComponents(n_, std::move(data));
    }

    TensorComponents components(const DensityMatrixV& rho) const { return components(rho.op()); }

    /// Inverse of components(): the tensor basis is orthonormal per block, so
    /// A_J = sum_{k,q} comp[J][k][q] T^{(J)}_{k,q}.
    BlockOperator operator_from_components(const TensorComponents& comp) const {
        if (comp.n() != n_) throw std::invalid_argument("operator_from_components: mismatched N");
        BlockOperator out(n_);
        for (int tj = 0; tj <= n_; ++tj) {
            const HalfInt j = HalfInt::from_twice(tj);
            Matrix& blk = out.block(j);
            for (int k = 0; k <= tj; ++k) {
                for (int q = -k; q <= k; ++q) {
                    const Complex c = comp.at(tj, k, q);
                    if (c == Complex(0.0)) continue;
                    const auto& col = cg_coeffs(tj, k, q);
                    for (int mi = 0; mi <= tj; ++mi) {
                        const double w = col[static_cast<std::size_t>(mi)];
                        if (w != 0.0) blk(mi + q, mi) += c * w;
                    }
                }
            }
        }
        return out;
    }

    /// Weyl symbol W_A(Omega) = Tr(omega(Omega) A), evaluated from cached
    /// components: sqrt(4 pi) sum R_{J,k}(r) Y^k_q(theta,phi) comp[J][k][q].
    Complex weyl(const TensorComponents& comp, const PhasePoint& pt) const {
        if (comp.n() != n_) throw std::invalid_argument("weyl: mismatched N");
        const auto ptab = radial_.legendre_basis(pt.r);
        const auto ytab = detail::sph_legendre_table(n_, pt.theta);
        std::vector<Complex> phase(static_cast<std::size_t>(2 * n_ + 1));
        for (int q = -n_; q <= n_; ++q)
            phase[static_cast<std::size_t>(q + n_)] = std::polar(1.0, q * pt.phi);

        Complex acc = 0.0;
        for (int tj = 0; tj <= n_; ++tj) {
            const HalfInt j = HalfInt::from_twice(tj);
            for (int k = 0; k <= tj; ++k) {
                const double rjk = radial_.eval_with_basis(j, k, ptab);
                if (rjk == 0.0) continue;
                Complex angsum = 0.0;
                for (int q = -k; q <= k; ++q) {
                    const Complex c = comp.at(tj, k, q);
                    if (c == Complex(0.0)) continue;
                    const int qa = std::abs(q);
                    double p = ytab[static_cast<std::size_t>(k)][static_cast<std::size_t>(qa)];
                    if (q < 0 && qa % 2 != 0) p = -p;
                    angsum += c * p * phase[static_cast<std::size_t>(q + n_)];
                }
                acc += rjk * angsum;
            }
        }
        return std::sqrt(4.0 * kPi) * acc;
    }

    /// Wigner function of a Hermitian operator; the imaginary part of the
    /// symbol is below 1e-12 and dropped.
    double wigner(const TensorComponents& comp, const PhasePoint& pt) const {
        return weyl(comp, pt).real();
    }

    double wigner(const DensityMatrixV& rho, const PhasePoint& pt) const {
        return wigner(components(rho), pt);
    }

    /// Radial marginal int_0^1 W(theta, phi, r) r dr via the reduced-kernel
    /// weights gamma[J][k].
    double reduced(const TensorComponents& comp, double theta, double phi) const {
        if (comp.n() != n_) throw std::invalid_argument("reduced: mismatched N");
        const auto ytab = detail::sph_legendre_table(n_, theta);
        Complex acc = 0.0;
        for (int tj = 0; tj <= n_; ++tj) {
            const HalfInt j = HalfInt::from_twice(tj);
            for (int k = 0; k <= tj; ++k) {
                const double g = radial_.gamma(j, k);
                if (g == 0.0) continue;
                for (int q = -k; q <= k; ++q) {
                    const Complex c = comp.at(tj, k, q);
                    if (c == Complex(0.0)) continue;
                    const int qa = std::abs(q);
                    double p = ytab[static_cast<std::size_t>(k)][static_cast<std::size_t>(qa)];
                    if (q < 0 && qa % 2 != 0) p = -p;
                    acc += g * c * p * std::polar(1.0, q * phi);
                }
            }
        }
        return std::sqrt(4.0 * kPi) * acc.real();
    }

    double reduced(const DensityMatrixV& rho, double theta, double phi) const {
        return reduced(components(rho), theta, phi);
    }

    /// The kernel as an explicit block matrix (testing aid; evaluation goes
    /// through components instead).
    BlockOperator kernel_matrix(const PhasePoint& pt) const {
        const auto ptab = radial_.legendre_basis(pt.r);
        const auto ytab = detail::sph_legendre_table(n_, pt.theta);
        const double root4pi = std::sqrt(4.0 * kPi);
        BlockOperator out(n_);
        for (int tj = 0; tj <= n_; ++tj) {
            const HalfInt j = HalfInt::from_twice(tj);
            Matrix& blk = out.block(j);
            for (int k = 0; k <= tj; ++k) {
                const double rjk = radial_.eval_with_basis(j, k, ptab);
                if (rjk == 0.0) continue;
                for (int q = -k; q <= k; ++q) {
                    const int qa = std::abs(q);
                    double p = ytab[static_cast<std::size_t>(k)][static_cast<std::size_t>(qa)];
                    if (q < 0 && qa % 2 != 0) p = -p;
                    const Complex y = p * std::polar(1.0, q * pt.phi);
                    const auto& col = cg_coeffs(tj, k, q);
                    for (int mi = 0; mi <= tj; ++mi) {
                        const double w = col[static_cast<std::size_t>(mi)];
                        if (w != 0.0) blk(mi, mi + q) += root4pi * rjk * y * w;
                    }
                }
            }
        }
        return out;
    }

    /// Integral of the symbol over the solid ball.
    double integral(const TensorComponents& comp, const QuadratureGrid& grid) const {
        double acc = 0.0;
        for (int it = 0; it < grid.n_theta(); ++it)
            for (int ip = 0; ip < grid.n_phi(); ++ip)
                for (int ir = 0; ir < grid.n_r(); ++ir)
                    acc += grid.weight(it, ir) *
                           wigner(comp, {grid.theta[static_cast<std::size_t>(it)],
                                         grid.phi[static_cast<std::size_t>(ip)],
                                         grid.r[static_cast<std::size_t>(ir)]});
        return acc;
    }

    struct OverlapResult {
        double value = 0.0;
        bool grid_sufficient = true;  // band-limit check, not an error
    };

    /// int W_A W_B dOmega; equals volume * Tr(A B) on a sufficient grid.
    OverlapResult overlap(const BlockOperator& a, const BlockOperator& b,
                          const QuadratureGrid& grid) const {
        const TensorComponents ca = components(a);
        const TensorComponents cb = components(b);
        const std::size_t npts = grid.size();
        std::vector<double> cell(npts);
        parallel_for(npts, [&](std::size_t idx) {
            const auto [it, ip, ir] = split(grid, idx);
            const PhasePoint pt{grid.theta[it], grid.phi[ip], grid.r[ir]};
            cell[idx] = grid.weight(static_cast<int>(it), static_cast<int>(ir)) *
                        std::real(weyl(ca, pt) * weyl(cb, pt));
        });
        OverlapResult res;
        for (double v : cell) res.value += v;
        res.grid_sufficient = grid.sufficient_for(n_);
        return res;
    }

    /// Normalized negative volume (1/volume) int max(0, -W) dOmega.
    double negativity(const TensorComponents& comp, const QuadratureGrid& grid) const {
        const std::size_t npts = grid.size();
        std::vector<double> cell(npts);
        parallel_for(npts, [&](std::size_t idx) {
            const auto [it, ip, ir] = split(grid, idx);
            const PhasePoint pt{grid.theta[it], grid.phi[ip], grid.r[ir]};
            const double w = wigner(comp, pt);
            cell[idx] = w < 0.0
                            ? -w * grid.weight(static_cast<int>(it), static_cast<int>(ir))
                            : 0.0;
        });
        double acc = 0.0;
        for (double v : cell) acc += v;
        return acc / normalization().volume;
    }

    double negativity(const DensityMatrixV& rho, const QuadratureGrid& grid) const {
        return negativity(components(rho), grid);
    }

private:
    static std::tuple<std::size_t, std::size_t, std::size_t> split(const QuadratureGrid& g,
                                                                   std::size_t idx) {
        const std::size_t nr = static_cast<std::size_t>(g.n_r());
        const std::size_t np = static_cast<std::size_t>(g.n_phi());
        const std::size_t ir = idx % nr;
        const std::size_t ip = (idx / nr) % np;
        const std::size_t it = idx / (nr * np);
        return {it, ip, ir};
    }

    const std::vector<double>& cg_coeffs(int tj, int k, int q) const {
        return cg_[static_cast<std::size_t>(tj)][static_cast<std::size_t>(k)]
                  [static_cast<std::size_t>(q + k)];
    }

    int n_;
    RadialTable radial_;
    // cg_[twoJ][k][q+k][m_index] = sqrt((2k+1)/(2J+1)) C^{J,M+q}_{J,M;k,q}
    std::vector<std::vector<std::vector<std::vector<double>>>> cg_;
};

/// Coordinate image of a pi-pulse about the {12} y-axis on azimuthally
/// symmetric states, in the linearized coordinates s = (1-cos theta)/2 and r:
///   r' = 1 + r (s - 1),  s' = r s / r'.
/// r' = 0 only at (s, r) = (0, 1), where s' = 0 by continuity.
inline std::pair<double, double> pi_pulse_transform(double s, double r) {
    if (s < 0.0 || s > 1.0 || r < 0.0 || r > 1.0)
        throw std::invalid_argument("pi_pulse_transform: inputs must lie in [0,1]");
    const double rp = 1.0 + r * (s - 1.0);
    const double sp = rp == 0.0 ? 0.0 : r * s / rp;
    return {sp, rp};
}

}  // namespace solidspin
