// Renders azimuthal slices of the solid spin Wigner function for every
// angular-momentum eigenstate |J,M> at N = 8, plus the two maximally mixed
// states, as CSV files in the current directory.

#include <cstdio>
#include <fstream>
#include <string>

#include "solidspin/solidspin.hpp"

using namespace solidspin;

namespace {

void render(const WignerTransform& wt, const DensityMatrixV& state, const std::string& name) {
    const auto comp = wt.components(state);
    std::ofstream out(name);
    out << "theta,r,w\n";
    const int ntheta = 60, nr = 30;
    for (int it = 0; it < ntheta; ++it) {
        const double theta = kPi * it / (ntheta - 1);
        for (int ir = 0; ir < nr; ++ir) {
            const double r = double(ir) / (nr - 1);
            out << theta << ',' << r << ',' << wt.wigner(comp, {theta, 0.0, r}) << '\n';
        }
    }
    std::printf("wrote %s\n", name.c_str());
}

}  // namespace

int main() {
    const int n = 8;
    WignerTransform wt(n);
    for (int tj = 0; tj <= n; tj += 2) {
        const HalfInt j = HalfInt::from_twice(tj);
        for (int tm = -tj; tm <= tj; tm += 2) {
            const HalfInt m = HalfInt::from_twice(tm);
            render(wt, dicke(n, j, m),
                   "dicke_" + std::to_string(tj / 2) + "_" + std::to_string(tm / 2) + ".csv");
        }
    }
    render(wt, mixed_spins(n), "mixed_spins.csv");
    render(wt, mixed_su3(n), "mixed_su3.csv");
    return 0;
}
