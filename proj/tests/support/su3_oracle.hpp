#pragma once

// Brute-force SU(3) coupling oracle, independent of the library's coupling
// machinery. Builds (N,0) as the symmetric subspace of N copies of the
// hand-coded fundamental rep, couples with the conjugate rep, projects onto
// (sigma,sigma) by diagonalizing the quadratic Casimir of the product, and
// reads coupling coefficients as overlaps.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "solidspin/half_int.hpp"

namespace testsupport {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using solidspin::HalfInt;

inline std::vector<Mat> gell_mann_fundamental() {
    const Cx I(0.0, 1.0);
    std::vector<Mat> lam(8, Mat::Zero(3, 3));
    lam[0] << 0, 1, 0, 1, 0, 0, 0, 0, 0;
    lam[1] << 0, -I, 0, I, 0, 0, 0, 0, 0;
    lam[2] << 1, 0, 0, 0, -1, 0, 0, 0, 0;
    lam[3] << 0, 0, 1, 0, 0, 0, 1, 0, 0;
    lam[4] << 0, 0, -I, 0, 0, 0, I, 0, 0;
    lam[5] << 0, 0, 0, 0, 0, 1, 0, 1, 0;
    lam[6] << 0, 0, 0, 0, 0, -I, 0, I, 0;
    const double s3 = 1.0 / std::sqrt(3.0);
    lam[7] << s3, 0, 0, 0, s3, 0, 0, 0, -2.0 * s3;
    return lam;
}

/// Eight su(3) generators on some carrier space.
struct Su3Rep {
    std::vector<Mat> gen;  // G_1 .. G_8
    int dim() const { return static_cast<int>(gen[0].rows()); }

    Mat casimir() const {
        Mat c = Mat::Zero(dim(), dim());
        for (const Mat& g : gen) c += g * g;
        return c;
    }
};

inline Su3Rep fundamental_rep() {
    Su3Rep r;
    for (const Mat& l : gell_mann_fundamental()) r.gen.push_back(0.5 * l);
    return r;
}

inline Su3Rep conjugate_rep(const Su3Rep& r) {
    Su3Rep c;
    for (const Mat& g : r.gen) c.gen.push_back(-g.transpose());
    return c;
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat k(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

inline Su3Rep product_rep(const Su3Rep& a, const Su3Rep& b) {
    Su3Rep p;
    const Mat ia = Mat::Identity(a.dim(), a.dim());
    const Mat ib = Mat::Identity(b.dim(), b.dim());
    for (int i = 0; i < 8; ++i) p.gen.push_back(kron(a.gen[i], ib) + kron(ia, b.gen[i]));
    return p;
}

/// (N,0) as the totally symmetric occupation basis of N fundamental factors.
/// In the {23}-subgroup convention the state (J,M) has occupation
/// (N-2J, J+M, J-M).
struct SymmetricRep {
    int n = 0;
    Su3Rep rep;
    std::vector<std::array<int, 3>> occupations;  // basis labels
    std::map<std::array<int, 3>, int> index;

    int state_index(HalfInt j, HalfInt m) const {
        std::array<int, 3> occ{n - j.twice(), (j + m).to_int(), (j - m).to_int()};
        auto it = index.find(occ);
        if (it == index.end()) throw std::invalid_argument("symmetric rep: bad (J,M)");
        return it->second;
    }
};

inline SymmetricRep symmetric_power_rep(int n) {
    SymmetricRep out;
    out.n = n;
    const Su3Rep fund = fundamental_rep();

    Su3Rep full = fund;
    for (int i = 1; i < n; ++i) full = product_rep(full, fund);

    // Symmetrized basis vector per occupation: sum of all product strings
    // with the given letter counts.
    const int dim_full = full.dim();
    std::vector<Vec> basis;
    for (int n1 = n; n1 >= 0; --n1) {
        for (int n2 = n - n1; n2 >= 0; --n2) {
            const int n3 = n - n1 - n2;
            Vec v = Vec::Zero(dim_full);
            for (int s = 0; s < dim_full; ++s) {
                int digits[3] = {0, 0, 0};
                int code = s;
                for (int p = 0; p < n; ++p) {
                    digits[code % 3]++;
                    code /= 3;
                }
                if (digits[0] == n1 && digits[1] == n2 && digits[2] == n3) v(s) = 1.0;
            }
            v.normalize();
            out.occupations.push_back({n1, n2, n3});
            out.index[{n1, n2, n3}] = static_cast<int>(basis.size());
            basis.push_back(v);
        }
    }

    const int d = static_cast<int>(basis.size());
    Mat proj(dim_full, d);
    for (int c = 0; c < d; ++c) proj.col(c) = basis[static_cast<std::size_t>(c)];
    for (const Mat& g : full.gen) out.rep.gen.push_back(proj.adjoint() * g * proj);
    return out;
}

inline double su3_casimir_eigenvalue(int lambda, int mu) {
    return (lambda * lambda + mu * mu + lambda * mu) / 3.0 + lambda + mu;
}

/// Coupled (sigma,sigma) states inside (N,0) x (0,N) whose first occupation
/// equals sigma, organized as SU(2)_{23} multiplets of spin k (each k occurs
/// exactly once; the slice spans (sigma+1)^2 states). Multiplets are
/// normalized with standard ladder phases; the overall sign of each is
/// arbitrary until pinned by the caller.
struct CoupledSigmaStates {
    int sigma = 0;
    std::map<int, std::vector<Vec>> multiplets;  // k -> states indexed by m+k
};

inline CoupledSigmaStates coupled_sigma_states(const Su3Rep& prod, int sigma,
                                               double tol = 1e-8) {
    CoupledSigmaStates out;
    out.sigma = sigma;
    const int dim = prod.dim();

    Eigen::SelfAdjointEigenSolver<Mat> es(prod.casimir());
    const double target = su3_casimir_eigenvalue(sigma, sigma);
    std::vector<int> cols;
    for (int i = 0; i < dim; ++i)
        if (std::abs(es.eigenvalues()(i) - target) < tol) cols.push_back(i);
    if (cols.empty()) throw std::runtime_error("coupled_sigma_states: irrep not found");
    Mat sub(dim, static_cast<int>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i)
        sub.col(static_cast<int>(i)) = es.eigenvectors().col(cols[i]);

    // nu1 = sigma selects the kernel of 2 h1 + h2 (= 3(nu1 - sigma)).
    const Mat h1 = 2.0 * prod.gen[2];
    const Mat h2 = std::sqrt(3.0) * prod.gen[7] - prod.gen[2];
    const Mat slice_in = sub.adjoint() * (2.0 * h1 + h2) * sub;
    Eigen::SelfAdjointEigenSolver<Mat> ess(slice_in);
    std::vector<int> zc;
    for (int i = 0; i < slice_in.rows(); ++i)
        if (std::abs(ess.eigenvalues()(i)) < tol) zc.push_back(i);
    if (zc.empty()) return out;
    Mat slice(dim, static_cast<int>(zc.size()));
    for (std::size_t i = 0; i < zc.size(); ++i)
        slice.col(static_cast<int>(i)) = sub * ess.eigenvectors().col(zc[i]);

    // SU(2)_{23} structure: I^2 eigenspaces, then jz within each, ladder from
    // the top with S32 = (S23)^dagger.
    const Mat jz23 = 0.5 * h2;
    const Mat i2 = prod.gen[5] * prod.gen[5] + prod.gen[6] * prod.gen[6] + jz23 * jz23;
    const Mat s23 = prod.gen[5] + Cx(0.0, 1.0) * prod.gen[6];

    const Mat i2_in = slice.adjoint() * i2 * slice;
    Eigen::SelfAdjointEigenSolver<Mat> esi(i2_in);
    std::map<int, std::vector<int>> by_k;
    for (int i = 0; i < i2_in.rows(); ++i) {
        const double ev = esi.eigenvalues()(i);
        const int kk = static_cast<int>(std::lround(0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * ev))));
        if (std::abs(double(kk) * (kk + 1) - ev) > 1e-6)
            throw std::runtime_error("coupled_sigma_states: non-integer spin in slice");
        by_k[kk].push_back(i);
    }

    for (const auto& [kk, ids] : by_k) {
        if (static_cast<int>(ids.size()) != 2 * kk + 1)
            throw std::runtime_error("coupled_sigma_states: unexpected multiplet size");
        Mat basis(dim, static_cast<int>(ids.size()));
        for (std::size_t i = 0; i < ids.size(); ++i)
            basis.col(static_cast<int>(i)) = slice * esi.eigenvectors().col(ids[i]);
        const Mat jz_in = basis.adjoint() * jz23 * basis;
        Eigen::SelfAdjointEigenSolver<Mat> esz(jz_in);
        int top = -1;
        for (int i = 0; i < jz_in.rows(); ++i)
            if (std::abs(esz.eigenvalues()(i) - kk) < 1e-6) top = i;
        if (top < 0) throw std::runtime_error("coupled_sigma_states: top state not found");

        std::vector<Vec> mult(static_cast<std::size_t>(2 * kk + 1));
        mult[static_cast<std::size_t>(2 * kk)] = (basis * esz.eigenvectors().col(top)).normalized();
        for (int mm = kk; mm > -kk; --mm) {
            const double c = std::sqrt(double(kk) * (kk + 1) - double(mm) * (mm - 1));
            mult[static_cast<std::size_t>(mm - 1 + kk)] =
                (s23.adjoint() * mult[static_cast<std::size_t>(mm + kk)]) / c;
        }
        out.multiplets[kk] = std::move(mult);
    }
    return out;
}

}  // namespace testsupport
