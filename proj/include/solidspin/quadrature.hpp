#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "solidspin/functions.hpp"

namespace solidspin {

/// Product quadrature grid for the solid-ball measure
///   dOmega = 2 pi sin(theta) r dr dtheta dphi:
/// Gauss-Legendre in cos(theta), uniform phi, Gauss-Legendre in r with the
/// linear r weight folded into the weights. Total weight is 4 pi^2.
struct QuadratureGrid {
    std::vector<double> theta;
    std::vector<double> wtheta;  // includes the 2 pi measure prefactor
    std::vector<double> phi;
    double wphi = 0.0;
    std::vector<double> r;
    std::vector<double> wr;  // includes the linear r factor

    int n_theta() const { return static_cast<int>(theta.size()); }
    int n_phi() const { return static_cast<int>(phi.size()); }
    int n_r() const { return static_cast<int>(r.size()); }
    std::size_t size() const { return theta.size() * phi.size() * r.size(); }

    double weight(int it, int ir) const {
        return wtheta[static_cast<std::size_t>(it)] * wphi * wr[static_cast<std::size_t>(ir)];
    }

    double total_weight() const {
        double st = 0.0, sr = 0.0;
        for (double w : wtheta) st += w;
        for (double w : wr) sr += w;
        return st * wphi * static_cast<double>(phi.size()) * sr;
    }

    static QuadratureGrid make(int ntheta, int nphi, int nr) {
        if (ntheta < 1 || nphi < 1 || nr < 1)
            throw std::invalid_argument("QuadratureGrid: need at least one node per axis");
        QuadratureGrid g;
        const auto glt = gauss_legendre(ntheta);
        for (int i = 0; i < ntheta; ++i) {
            g.theta.push_back(std::acos(glt.nodes[static_cast<std::size_t>(i)]));
            g.wtheta.push_back(2.0 * kPi * glt.weights[static_cast<std::size_t>(i)]);
        }
        for (int j = 0; j < nphi; ++j) g.phi.push_back(2.0 * kPi * j / nphi);
        g.wphi = 2.0 * kPi / nphi;
        const auto glr = gauss_legendre(nr);
        for (int i = 0; i < nr; ++i) {
            const double rr = 0.5 * (glr.nodes[static_cast<std::size_t>(i)] + 1.0);
            g.r.push_back(rr);
            g.wr.push_back(0.5 * glr.weights[static_cast<std::size_t>(i)] * rr);
        }
        return g;
    }

    /// Smallest grid integrating products of two band-limited symbols exactly.
    static QuadratureGrid exactness(int n) { return make(n + 2, 2 * n + 1, n + 2); }

    /// Exactness grid scaled up for non-band-limited integrands.
    static QuadratureGrid refined(int n, int factor) {
        return make(factor * (n + 2), factor * (2 * n + 1), factor * (n + 2));
    }

    /// Band-limit sufficiency for degree-N symbol products.
    bool sufficient_for(int n) const {
        return n_phi() >= 2 * n + 1 && n_theta() >= n + 1 && n_r() >= n + 1;
    }
};

}  // namespace solidspin
