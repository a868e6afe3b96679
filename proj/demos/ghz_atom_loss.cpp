// GHZ state of 8 atoms under atom loss: evolves the master equation, prints
// the negativity decay, and writes the reduced (sphere) Wigner function of
// the first and last snapshots.

#include <cstdio>
#include <fstream>

#include "solidspin/solidspin.hpp"

using namespace solidspin;

int main() {
    const int n = 8;
    WignerTransform wt(n);
    auto channel = atom_loss_channel(n, 1.0, LossProfile::per_atom);
    auto traj = evolve(ghz(n), nullptr, channel, {0.0, 0.02, 0.05, 0.1, 0.2});
    annotate_negativity(traj, wt, QuadratureGrid::refined(n, 4));

    std::printf("gamma_t   negativity   trace        <Jz>\n");
    for (const auto& s : traj.snapshots)
        std::printf("%-9.3f %-12.6f %-12.9f %.3e\n", s.time, *s.negativity, s.trace_value, s.jz);

    for (std::size_t idx : {std::size_t(0), traj.snapshots.size() - 1}) {
        const auto comp = wt.components(traj.snapshots[idx].state);
        std::ofstream out("ghz_sphere_" + std::to_string(idx) + ".csv");
        out << "theta,phi,w_reduced\n";
        const int ntheta = 40, nphi = 80;
        for (int it = 0; it < ntheta; ++it)
            for (int ip = 0; ip < nphi; ++ip) {
                const double theta = kPi * it / (ntheta - 1);
                const double phi = 2.0 * kPi * ip / nphi;
                out << theta << ',' << phi << ',' << wt.reduced(comp, theta, phi) << '\n';
            }
    }
    std::printf("wrote ghz_sphere_0.csv and ghz_sphere_%zu.csv\n", traj.snapshots.size() - 1);
    return 0;
}
