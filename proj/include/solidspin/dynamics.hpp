#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "solidspin/collective.hpp"
#include "solidspin/su3.hpp"
#include "solidspin/wigner.hpp"

namespace solidspin {

/// Weighting of the atom-loss jump matrices.
///   paper_literal: S31 and S32 exactly, with the sqrt(N-2J+1) factor.
///   per_atom: the same matrices with that factor stripped, so block J loses
///   population at total rate 2J gamma (N gamma from the symmetric subspace,
///   which both profiles share).
enum class LossProfile { paper_literal, per_atom };

struct Channel {
    struct Jump {
        GeneralOperator op;
        double rate = 0.0;
    };
    int n = 0;
    std::vector<Jump> jumps;

    double max_rate() const {
        double m = 0.0;
        for (const auto& j : jumps) m = std::max(m, j.rate);
        return m;
    }
};

namespace detail {

/// Lowering jump with per-block amplitude sqrt((J +/- M adjustments)) and the
/// loss factor chosen by the profile.
inline GeneralOperator loss_jump(int n, bool lower_m, LossProfile profile) {
    GeneralOperator op(n);
    const HalfInt half = HalfInt::from_twice(1);
    for (int tj = 1; tj <= n; ++tj) {
        const HalfInt j = HalfInt::from_twice(tj);
        const HalfInt jp = j - half;
        for (int tm = -tj; tm <= tj; tm += 2) {
            const HalfInt m = HalfInt::from_twice(tm);
            const HalfInt mp = lower_m ? m - half : m + half;
            if (!valid_jm(jp, mp)) continue;
            double amp2 = lower_m ? (j + m).value() : (j - m).value();
            if (profile == LossProfile::paper_literal) amp2 *= double(n - tj + 1);
            if (amp2 <= 0.0) continue;
            op.block(jp, j)(SpaceIndex::m_index(jp, mp), SpaceIndex::m_index(j, m)) =
                std::sqrt(amp2);
        }
    }
    return op;
}

}  // namespace detail

/// Atom-loss channel: jumps sqrt(gamma) S31 and sqrt(gamma) S32 (or their
/// per-atom-weighted variants), both lowering J and M by 1/2.
inline Channel atom_loss_channel(int n, double gamma, LossProfile profile = LossProfile::per_atom) {
    if (gamma < 0.0) throw std::invalid_argument("atom_loss_channel: negative rate");
    Channel ch;
    ch.n = n;
    ch.jumps.push_back({detail::loss_jump(n, true, profile), gamma});
    ch.jumps.push_back({detail::loss_jump(n, false, profile), gamma});
    return ch;
}

/// Lindblad generator
///   d rho/dt = -i [H, rho] + sum_j rate_j (L rho L^dag - {L^dag L, rho}/2).
/// Half-step jumps shift bra and ket blocks together, so the image of a
/// block-diagonal rho is block-diagonal; this is asserted, not assumed.
inline BlockOperator lindblad_rhs(const BlockOperator& rho, const BlockOperator* hamiltonian,
                                  const Channel& ch) {
    if (ch.n != rho.n()) throw std::invalid_argument("lindblad_rhs: mismatched N");
    BlockOperator out(rho.n());
    if (hamiltonian) {
        if (hamiltonian->n() != rho.n())
            throw std::invalid_argument("lindblad_rhs: Hamiltonian dimension mismatch");
        out += Complex(0.0, -1.0) * (*hamiltonian * rho - rho * *hamiltonian);
    }
    const GeneralOperator rho_g = GeneralOperator::from_block_diagonal(rho);
    for (const auto& jump : ch.jumps) {
        if (jump.rate == 0.0) continue;
        const GeneralOperator sandwich = jump.op * rho_g * jump.op.adjoint();
        const BlockOperator gain = sandwich.to_block_diagonal(1e-12);
        const BlockOperator ldl = (jump.op.adjoint() * jump.op).to_block_diagonal(1e-12);
        BlockOperator term = gain;
        term -= Complex(0.5) * (ldl * rho + rho * ldl);
        term *= jump.rate;
        out += term;
    }
    return out;
}

struct EvolveOptions {
    double dt = 0.0;      // 0: use 1/(50 N gamma_max)
    int max_halvings = 10;
    double positivity_tol = 1e-8;
};

struct IntegrationError : std::runtime_error {
    IntegrationError(const std::string& msg, double t)
        : std::runtime_error(msg), time(t) {}
    double time;
};

/// Time series of states and derived scalars along a noise evolution.
struct Trajectory {
    struct Snapshot {
        double time = 0.0;  // in gamma t units when rates carry gamma
        DensityMatrixV state;
        double trace_value = 0.0;
        double jz = 0.0;
        std::optional<double> negativity;  // filled by annotate_negativity
    };
    std::vector<Snapshot> snapshots;
    double dt_used = 0.0;
    double max_hermiticity_drift = 0.0;
};

/// Fill the per-snapshot negativity column of a trajectory.
inline void annotate_negativity(Trajectory& traj, const WignerTransform& wt,
                                const QuadratureGrid& grid) {
    for (auto& s : traj.snapshots) s.negativity = wt.negativity(wt.components(s.state), grid);
}

namespace detail {

inline double min_block_eigenvalue(const BlockOperator& rho) {
    double m = 0.0;
    for (int tj = 0; tj <= rho.n(); ++tj) {
        const Matrix* b = rho.block_if(HalfInt::from_twice(tj));
        if (!b) continue;
        Eigen::SelfAdjointEigenSolver<Matrix> es(*b, Eigen::EigenvaluesOnly);
        m = std::min(m, es.eigenvalues().minCoeff());
    }
    return m;
}

}  // namespace detail

/// Fixed-step RK4 integration with snapshots at the requested times. The
/// trace is never renormalized (drift is a diagnostic); Hermiticity is
/// restored by symmetrization each step and the worst drift is reported.
/// Positivity violations halve the step, up to a floor.
inline Trajectory evolve(const DensityMatrixV& rho0, const BlockOperator* hamiltonian,
                         const Channel& ch, const std::vector<double>& t_grid,
                         EvolveOptions options = {}) {
    if (t_grid.empty()) throw std::invalid_argument("evolve: empty time grid");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (t_grid[i] < 0.0 || (i > 0 && t_grid[i] <= t_grid[i - 1]))
            throw std::invalid_argument("evolve: time grid must ascend from 0");
    }
    const int n = rho0.n();
    double dt = options.dt;
    if (dt <= 0.0) {
        double scale = ch.max_rate() * std::max(1, n);
        if (hamiltonian) scale = std::max(scale, hamiltonian->max_abs());
        dt = 1.0 / (50.0 * std::max(1e-12, scale));
    }

    Trajectory traj;
    traj.dt_used = dt;
    const BlockOperator jz = collective_jz(n);

    BlockOperator rho = rho0.op();
    double t = 0.0;
    int halvings = 0;

    auto snapshot = [&](double time) {
        DensityMatrixV state(rho, 1e-7);
        Trajectory::Snapshot s{time, state, std::real(rho.trace()),
                               std::real(trace_product(rho, jz)), std::nullopt};
        traj.snapshots.push_back(std::move(s));
    };

    auto rk4_step = [&](const BlockOperator& x, double h) {
        BlockOperator k1 = lindblad_rhs(x, hamiltonian, ch);
        BlockOperator x2 = x;
        x2 += Complex(0.5 * h) * k1;
        BlockOperator k2 = lindblad_rhs(x2, hamiltonian, ch);
        BlockOperator x3 = x;
        x3 += Complex(0.5 * h) * k2;
        BlockOperator k3 = lindblad_rhs(x3, hamiltonian, ch);
        BlockOperator x4 = x;
        x4 += Complex(h) * k3;
        BlockOperator k4 = lindblad_rhs(x4, hamiltonian, ch);
        BlockOperator out = x;
        k1 += k4;
        k2 += k3;
        k1 += Complex(2.0) * k2;
        out += Complex(h / 6.0) * k1;
        return out;
    };

    for (double target : t_grid) {
        while (t < target - 1e-15) {
            const double h = std::min(dt, target - t);
            BlockOperator next = rk4_step(rho, h);
            // restore Hermiticity, recording the drift
            BlockOperator herm = next;
            herm += next.adjoint();
            herm *= Complex(0.5);
            BlockOperator drift = next;
            drift -= herm;
            traj.max_hermiticity_drift = std::max(traj.max_hermiticity_drift, drift.max_abs());

            if (detail::min_block_eigenvalue(herm) < -options.positivity_tol) {
                if (++halvings > options.max_halvings)
                    throw IntegrationError("evolve: positivity violated at the step-size floor",
                                           t + h);
                dt *= 0.5;
                continue;
            }
            rho = std::move(herm);
            t += h;
        }
        snapshot(target);
    }
    return traj;
}

}  // namespace solidspin
