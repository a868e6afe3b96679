// solid_wigner: command-line front end emitting deterministic CSV/JSON
// artifacts: verification reports, Wigner-function grids (slices and sphere
// maps), and atom-loss evolution trajectories.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "solidspin/solidspin.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace solidspin;
namespace fs = std::filesystem;

constexpr int kExitUsage = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitIntegration = 4;
constexpr const char* kStateGrammarVersion = "1";
constexpr const char* kStateGrammar =
    "STATE  := dicke:J:M | ghz | scs:THETA:PHI | mixed-spins | mixed-su3\n"
    "J, M   := half-integers, written as '3', '3.5' or '7/2'\n"
    "THETA, PHI := floating-point angles in radians";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal representation.
std::string fmt(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

HalfInt parse_halfint(const std::string& text) {
    try {
        if (auto slash = text.find('/'); slash != std::string::npos) {
            const int num = std::stoi(text.substr(0, slash));
            const int den = std::stoi(text.substr(slash + 1));
            if (den != 2) throw UsageError("half-integer denominators must be 2: " + text);
            return HalfInt::from_twice(num);
        }
        if (text.find('.') != std::string::npos) {
            const double v = std::stod(text);
            const double twice = 2.0 * v;
            const long rounded = std::lround(twice);
            if (std::abs(twice - double(rounded)) > 1e-9)
                throw UsageError("not a half-integer: " + text);
            return HalfInt::from_twice(static_cast<int>(rounded));
        }
        return HalfInt(std::stoi(text));
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("cannot parse half-integer '" + text + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

DensityMatrixV parse_state(const std::string& spec, int n) {
    const auto parts = split(spec, ':');
    try {
        if (parts[0] == "ghz" && parts.size() == 1) return ghz(n);
        if (parts[0] == "mixed-spins" && parts.size() == 1) return mixed_spins(n);
        if (parts[0] == "mixed-su3" && parts.size() == 1) return mixed_su3(n);
        if (parts[0] == "dicke" && parts.size() == 3)
            return dicke(n, parse_halfint(parts[1]), parse_halfint(parts[2]));
        if (parts[0] == "scs" && parts.size() == 3)
            return scs(n, std::stod(parts[1]), std::stod(parts[2]));
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError("invalid state '" + spec + "': " + e.what());
    }
    throw UsageError("unrecognized state '" + spec + "'");
}

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

json manifest_skeleton(const std::string& command, const json& parameters) {
    json m;
    m["command"] = command;
    m["library_version"] = kVersion;
    m["state_grammar_version"] = kStateGrammarVersion;
    m["parameters"] = parameters;
    return m;
}

void finalize_manifest(json& m, const std::vector<std::string>& outputs, const Stopwatch& sw,
                       const fs::path& where) {
    m["outputs"] = outputs;
    m["wall_clock_ms"] = sw.ms();
    write_text_file(where, m.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// slice / sphere
// ---------------------------------------------------------------------------

struct GridArgs {
    int ntheta = 0;
    int nphi = 0;
    int nr = 0;

    void fill_defaults(int n) {
        if (ntheta <= 0) ntheta = 4 * n + 4;
        if (nphi <= 0) nphi = 4 * n + 4;
        if (nr <= 0) nr = 2 * n + 2;
    }
};

int cmd_slice(int n, const std::string& spec, double phi, GridArgs grid,
              const std::string& out) {
    Stopwatch sw;
    grid.fill_defaults(n);
    if (grid.ntheta < 2 || grid.nr < 2) throw UsageError("slice grids need at least 2 points");
    const WignerTransform wt(n);
    const auto comp = wt.components(parse_state(spec, n));

    const std::size_t total = std::size_t(grid.ntheta) * std::size_t(grid.nr);
    std::vector<double> w(total);
    parallel_for(total, [&](std::size_t idx) {
        const int it = static_cast<int>(idx / std::size_t(grid.nr));
        const int ir = static_cast<int>(idx % std::size_t(grid.nr));
        const double theta = kPi * it / (grid.ntheta - 1);
        const double r = double(ir) / (grid.nr - 1);
        w[idx] = wt.wigner(comp, {theta, phi, r});
    });

    std::string csv = "theta,r,w\n";
    for (int it = 0; it < grid.ntheta; ++it) {
        const double theta = kPi * it / (grid.ntheta - 1);
        for (int ir = 0; ir < grid.nr; ++ir) {
            const double r = double(ir) / (grid.nr - 1);
            csv += fmt(theta);
            csv += ',';
            csv += fmt(r);
            csv += ',';
            csv += fmt(w[std::size_t(it) * std::size_t(grid.nr) + std::size_t(ir)]);
            csv += '\n';
        }
    }
    write_text_file(out, csv);

    json m = manifest_skeleton("slice", {{"n", n},
                                         {"state", spec},
                                         {"phi", phi},
                                         {"ntheta", grid.ntheta},
                                         {"nr", grid.nr},
                                         {"out", out}});
    finalize_manifest(m, {fs::path(out).filename().string()}, sw,
                      fs::path(out).string() + ".manifest.json");
    return 0;
}

int cmd_sphere(int n, const std::string& spec, GridArgs grid, const std::string& out) {
    Stopwatch sw;
    grid.fill_defaults(n);
    if (grid.ntheta < 2 || grid.nphi < 1) throw UsageError("sphere grids need at least 2 points");
    const WignerTransform wt(n);
    const auto comp = wt.components(parse_state(spec, n));

    const std::size_t total = std::size_t(grid.ntheta) * std::size_t(grid.nphi);
    std::vector<double> w(total);
    parallel_for(total, [&](std::size_t idx) {
        const int it = static_cast<int>(idx / std::size_t(grid.nphi));
        const int ip = static_cast<int>(idx % std::size_t(grid.nphi));
        const double theta = kPi * it / (grid.ntheta - 1);
        const double phi = 2.0 * kPi * ip / grid.nphi;
        w[idx] = wt.reduced(comp, theta, phi);
    });

    std::string csv = "theta,phi,w_reduced\n";
    for (int it = 0; it < grid.ntheta; ++it) {
        const double theta = kPi * it / (grid.ntheta - 1);
        for (int ip = 0; ip < grid.nphi; ++ip) {
            const double phi = 2.0 * kPi * ip / grid.nphi;
            csv += fmt(theta);
            csv += ',';
            csv += fmt(phi);
            csv += ',';
            csv += fmt(w[std::size_t(it) * std::size_t(grid.nphi) + std::size_t(ip)]);
            csv += '\n';
        }
    }
    write_text_file(out, csv);

    json m = manifest_skeleton("sphere", {{"n", n},
                                          {"state", spec},
                                          {"ntheta", grid.ntheta},
                                          {"nphi", grid.nphi},
                                          {"out", out}});
    finalize_manifest(m, {fs::path(out).filename().string()}, sw,
                      fs::path(out).string() + ".manifest.json");
    return 0;
}

// ---------------------------------------------------------------------------
// evolve
// ---------------------------------------------------------------------------

int cmd_evolve(int n, const std::string& spec, const std::string& channel,
               const std::string& profile_name, std::vector<double> gamma_t,
               std::vector<std::string> emit, double phi, GridArgs grid,
               const std::string& out_dir) {
    Stopwatch sw;
    grid.fill_defaults(n);
    if (channel != "atom-loss") throw UsageError("unknown channel '" + channel + "'");
    LossProfile profile;
    if (profile_name == "per-atom")
        profile = LossProfile::per_atom;
    else if (profile_name == "paper-literal")
        profile = LossProfile::paper_literal;
    else
        throw UsageError("unknown profile '" + profile_name + "'");
    if (gamma_t.empty()) throw UsageError("need at least one --gamma-t value");
    bool emit_slice = false, emit_sphere = false;
    for (const auto& e : emit) {
        if (e == "slice")
            emit_slice = true;
        else if (e == "sphere")
            emit_sphere = true;
        else if (e == "negativity")
            ;  // negativity.csv is always produced
        else
            throw UsageError("unknown --emit option '" + e + "'");
    }

    fs::create_directories(out_dir);
    const WignerTransform wt(n);
    const auto ch = atom_loss_channel(n, 1.0, profile);
    auto traj = evolve(parse_state(spec, n), nullptr, ch, gamma_t);
    annotate_negativity(traj, wt, QuadratureGrid::refined(n, 4));

    std::vector<std::string> outputs;
    std::string neg_csv = "gamma_t,negativity,trace,jz\n";
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        const auto& snap = traj.snapshots[i];
        const auto comp = wt.components(snap.state);
        neg_csv += fmt(snap.time);
        neg_csv += ',';
        neg_csv += fmt(*snap.negativity);
        neg_csv += ',';
        neg_csv += fmt(snap.trace_value);
        neg_csv += ',';
        neg_csv += fmt(snap.jz);
        neg_csv += '\n';

        char tag[16];
        std::snprintf(tag, sizeof(tag), "%03zu", i);
        if (emit_slice) {
            std::string csv = "theta,r,w\n";
            const std::size_t total = std::size_t(grid.ntheta) * std::size_t(grid.nr);
            std::vector<double> w(total);
            parallel_for(total, [&](std::size_t idx) {
                const int it = static_cast<int>(idx / std::size_t(grid.nr));
                const int ir = static_cast<int>(idx % std::size_t(grid.nr));
                w[idx] = wt.wigner(comp, {kPi * it / (grid.ntheta - 1), phi,
                                          double(ir) / (grid.nr - 1)});
            });
            for (int it = 0; it < grid.ntheta; ++it)
                for (int ir = 0; ir < grid.nr; ++ir) {
                    csv += fmt(kPi * it / (grid.ntheta - 1));
                    csv += ',';
                    csv += fmt(double(ir) / (grid.nr - 1));
                    csv += ',';
                    csv += fmt(w[std::size_t(it) * std::size_t(grid.nr) + std::size_t(ir)]);
                    csv += '\n';
                }
            const std::string name = std::string("slice_") + tag + ".csv";
            write_text_file(fs::path(out_dir) / name, csv);
            outputs.push_back(name);
        }
        if (emit_sphere) {
            std::string csv = "theta,phi,w_reduced\n";
            const std::size_t total = std::size_t(grid.ntheta) * std::size_t(grid.nphi);
            std::vector<double> w(total);
            parallel_for(total, [&](std::size_t idx) {
                const int it = static_cast<int>(idx / std::size_t(grid.nphi));
                const int ip = static_cast<int>(idx % std::size_t(grid.nphi));
                w[idx] = wt.reduced(comp, kPi * it / (grid.ntheta - 1),
                                    2.0 * kPi * ip / grid.nphi);
            });
            for (int it = 0; it < grid.ntheta; ++it)
                for (int ip = 0; ip < grid.nphi; ++ip) {
                    csv += fmt(kPi * it / (grid.ntheta - 1));
                    csv += ',';
                    csv += fmt(2.0 * kPi * ip / grid.nphi);
                    csv += ',';
                    csv += fmt(w[std::size_t(it) * std::size_t(grid.nphi) + std::size_t(ip)]);
                    csv += '\n';
                }
            const std::string name = std::string("sphere_") + tag + ".csv";
            write_text_file(fs::path(out_dir) / name, csv);
            outputs.push_back(name);
        }
    }
    write_text_file(fs::path(out_dir) / "negativity.csv", neg_csv);
    outputs.push_back("negativity.csv");

    json m = manifest_skeleton("evolve", {{"n", n},
                                          {"state", spec},
                                          {"channel", channel},
                                          {"profile", profile_name},
                                          {"gamma_t", gamma_t},
                                          {"emit", emit},
                                          {"phi", phi},
                                          {"ntheta", grid.ntheta},
                                          {"nphi", grid.nphi},
                                          {"nr", grid.nr},
                                          {"dt", traj.dt_used},
                                          {"out", out_dir}});
    finalize_manifest(m, outputs, sw, fs::path(out_dir) / "manifest.json");
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    double deviation = 0.0;
};

BlockOperator seeded_hermitian(int n, std::mt19937& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    BlockOperator op(n);
    for (int tj = 0; tj <= n; ++tj) {
        Matrix m(tj + 1, tj + 1);
        for (int r = 0; r <= tj; ++r)
            for (int c = 0; c <= tj; ++c) m(r, c) = Complex(g(rng), g(rng));
        op.block(HalfInt::from_twice(tj)) = 0.5 * (m + m.adjoint());
    }
    return op;
}

BlockOperator seeded_density(int n, std::mt19937& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    BlockOperator op(n);
    double tr = 0.0;
    for (int tj = 0; tj <= n; ++tj) {
        Matrix m(tj + 1, tj + 1);
        for (int r = 0; r <= tj; ++r)
            for (int c = 0; c <= tj; ++c) m(r, c) = Complex(g(rng), g(rng));
        Matrix psd = m * m.adjoint();
        op.block(HalfInt::from_twice(tj)) = psd;
        tr += std::real(psd.trace());
    }
    op *= Complex(1.0 / tr);
    return op;
}

PhasePoint seeded_point(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {std::acos(2.0 * u(rng) - 1.0), 2.0 * kPi * u(rng), u(rng)};
}

int cmd_verify(int n, double tol, bool force, const std::string& out) {
    Stopwatch sw;
    if (n > 12 && !force) throw UsageError("verify: N > 12 is guarded; pass --force to override");

    std::mt19937 rng(12345u + static_cast<unsigned>(n));
    const WignerTransform wt(n);
    const auto& radial = wt.radial();
    const double volume = wt.normalization().volume;
    std::vector<CheckResult> checks;

    {  // kernel trace and hermiticity at 20 random points
        double dev_tr = 0.0, dev_h = 0.0;
        for (int rep = 0; rep < 20; ++rep) {
            const auto omega = wt.kernel_matrix(seeded_point(rng));
            dev_tr = std::max(dev_tr, std::abs(omega.trace() - Complex(1.0)));
            dev_h = std::max(dev_h, max_abs_diff(omega, omega.adjoint()));
        }
        checks.push_back({"kernel-unit-trace", dev_tr});
        checks.push_back({"kernel-hermiticity", dev_h});
    }

    const BlockOperator rho = seeded_density(n, rng);
    const auto comp = wt.components(rho);

    {  // z-rotation covariance
        std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
        const double chi = u(rng);
        auto rz = rotation_23(n, chi, 0.0, 0.0);
        const auto comp_rot = wt.components(rz * rho * rz.adjoint());
        double dev = 0.0;
        for (int rep = 0; rep < 10; ++rep) {
            const PhasePoint pt = seeded_point(rng);
            dev = std::max(dev, std::abs(wt.wigner(comp_rot, pt) -
                                         wt.wigner(comp, {pt.theta, pt.phi - chi, pt.r})));
        }
        checks.push_back({"z-rotation-covariance", dev});
    }

    {  // general rotation covariance via the SO(3) image of the Euler angles
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double alpha = 2.0 * kPi * u(rng), beta = kPi * u(rng),
                     gamma = 2.0 * kPi * u(rng);
        auto rg = rotation_23(n, alpha, beta, gamma);
        const auto comp_rot = wt.components(rg * rho * rg.adjoint());
        const double ca = std::cos(alpha), sa = std::sin(alpha);
        const double cb = std::cos(beta), sb = std::sin(beta);
        const double cg = std::cos(gamma), sg = std::sin(gamma);
        // R = Rz(alpha) Ry(beta) Rz(gamma) acting on vectors
        const double R[3][3] = {{ca * cb * cg - sa * sg, -ca * cb * sg - sa * cg, ca * sb},
                                {sa * cb * cg + ca * sg, -sa * cb * sg + ca * cg, sa * sb},
                                {-sb * cg, sb * sg, cb}};
        double dev = 0.0;
        for (int rep = 0; rep < 10; ++rep) {
            const PhasePoint pt = seeded_point(rng);
            const double v[3] = {std::sin(pt.theta) * std::cos(pt.phi),
                                 std::sin(pt.theta) * std::sin(pt.phi), std::cos(pt.theta)};
            double m[3] = {0, 0, 0};
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) m[r] += R[c][r] * v[c];  // R^T v
            const double theta2 = std::acos(std::clamp(m[2], -1.0, 1.0));
            const double phi2 = std::atan2(m[1], m[0]);
            dev = std::max(dev, std::abs(wt.wigner(comp_rot, pt) -
                                         wt.wigner(comp, {theta2, phi2, pt.r})));
        }
        checks.push_back({"rotation-covariance", dev});
    }

    {  // spherical tensor orthonormality (sampled block pairs)
        double dev = 0.0;
        std::uniform_int_distribution<int> pick(0, n);
        for (int rep = 0; rep < 6; ++rep) {
            const int tjp = pick(rng), tj = pick(rng);
            const HalfInt jp = HalfInt::from_twice(tjp), j = HalfInt::from_twice(tj);
            for (int k1 = std::abs(tjp - tj); k1 <= tjp + tj; k1 += 2) {
                for (int k2 = k1; k2 <= tjp + tj; k2 += 2) {
                    const HalfInt kk1 = HalfInt::from_twice(k1), kk2 = HalfInt::from_twice(k2);
                    if (!triangle(j, kk1, jp) || !triangle(j, kk2, jp)) continue;
                    const HalfInt q = HalfInt::from_twice(k1 % 2);  // integrality-compatible
                    auto t1 = spherical_tensor(n, jp, j, kk1, q);
                    auto t2 = spherical_tensor(n, jp, j, kk2, q);
                    const Complex tr = trace_product(t1.adjoint(), t2);
                    const double expect = (k1 == k2) ? 1.0 : 0.0;
                    dev = std::max(dev, std::abs(tr - expect));
                }
            }
        }
        checks.push_back({"tensor-orthonormality", dev});
    }

    {  // radial orthogonality at the exactness node count
        const auto gl = gauss_legendre(n + 2);
        const double expect_diag = 1.0 / ((n + 1.0) * (n + 2.0));
        double dev = 0.0;
        for (int k = 0; k <= n; ++k) {
            for (int tj1 = k; tj1 <= n; ++tj1) {
                for (int tj2 = tj1; tj2 <= n; ++tj2) {
                    double acc = 0.0;
                    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
                        const double r = 0.5 * (gl.nodes[i] + 1.0);
                        acc += 0.5 * gl.weights[i] * r *
                               radial.eval(HalfInt::from_twice(tj1), k, r) *
                               radial.eval(HalfInt::from_twice(tj2), k, r);
                    }
                    const double expect = (tj1 == tj2) ? expect_diag : 0.0;
                    dev = std::max(dev, std::abs(acc - expect));
                }
            }
        }
        checks.push_back({"radial-orthogonality", dev});
    }

    {  // trace sum rule at 21 radial samples
        double dev = 0.0;
        for (int i = 0; i <= 20; ++i) {
            const double r = i / 20.0;
            double s = 0.0;
            for (int tj = 0; tj <= n; ++tj)
                s += std::sqrt(tj + 1.0) * radial.eval(HalfInt::from_twice(tj), 0, r);
            dev = std::max(dev, std::abs(s - 1.0));
        }
        checks.push_back({"trace-sum-rule", dev});
    }

    {  // traciality on random Hermitian pairs
        const auto grid = QuadratureGrid::exactness(n);
        double dev = 0.0;
        for (int rep = 0; rep < 2; ++rep) {
            const auto a = seeded_hermitian(n, rng);
            const auto b = seeded_hermitian(n, rng);
            const auto res = wt.overlap(a, b, grid);
            dev = std::max(dev, std::abs(res.value - volume * trace_product(a, b).real()));
        }
        checks.push_back({"traciality", dev});
    }

    {  // su(3) commutators and Casimir
        std::vector<GeneralOperator> g1, g;
        for (int i = 1; i <= 8; ++i) g1.push_back(gell_mann_rep(i, 1));
        for (int i = 1; i <= 8; ++i) g.push_back(gell_mann_rep(i, n));
        double dev = 0.0;
        for (int i = 0; i < 8; ++i) {
            for (int j = i + 1; j < 8; ++j) {
                auto cij1 = g1[i] * g1[j] - g1[j] * g1[i];
                GeneralOperator expect(n);
                for (int k = 0; k < 8; ++k) {
                    const double f = std::real(Complex(0.0, -2.0) * trace_product(cij1, g1[k]));
                    if (std::abs(f) < 1e-14) continue;
                    expect += Complex(0.0, f) * g[k];
                }
                auto cij = g[i] * g[j] - g[j] * g[i];
                dev = std::max(dev, max_abs_diff(cij, expect));
            }
        }
        checks.push_back({"generator-commutators", dev});

        GeneralOperator cas(n);
        for (int i = 0; i < 8; ++i) cas += g[i] * g[i];
        const double ev = (double(n) * n + 3.0 * n) / 3.0;
        cas -= Complex(ev) * GeneralOperator::from_block_diagonal(BlockOperator::identity(n));
        checks.push_back({"casimir-eigenvalue", cas.max_abs()});
    }

    {  // radial reflection identity at 11 samples
        double dev = 0.0;
        const HalfInt jmax = HalfInt::from_twice(n);
        for (int i = 0; i <= 10; ++i) {
            const double r = i / 10.0;
            double rhs = 0.0;
            for (int tj = 0; tj <= n; ++tj) {
                const HalfInt j = HalfInt::from_twice(tj);
                for (int k = 0; k <= radial.kmax(j); ++k) {
                    BigRat f2(factorial(tj) * factorial(tj));
                    f2 /= factorial(tj - k);
                    f2 /= factorial(tj + k + 1);
                    double wgt = (2 * k + 1) * BigFloat::sqrt(f2).to_double();
                    if (k % 2 != 0) wgt = -wgt;
                    rhs += wgt * radial.eval(j, k, 1.0 - r);
                }
            }
            rhs /= std::sqrt(n + 1.0);
            dev = std::max(dev, std::abs(radial.eval(jmax, 0, r) - rhs));
        }
        checks.push_back({"radial-reflection-identity", dev});
    }

    {  // component map round trip
        const auto a = seeded_hermitian(n, rng);
        checks.push_back(
            {"components-roundtrip",
             max_abs_diff(a, wt.operator_from_components(wt.components(a)))});
    }

    {  // SU(3) maximally mixed state is flat
        const auto mm = wt.components(mixed_su3(n));
        const double expect = 2.0 / ((n + 1.0) * (n + 2.0));
        double dev = 0.0;
        for (int rep = 0; rep < 10; ++rep)
            dev = std::max(dev, std::abs(wt.wigner(mm, seeded_point(rng)) - expect));
        checks.push_back({"mixed-su3-constant", dev});
    }

    {  // volume normalization of a random state
        const auto grid = QuadratureGrid::exactness(n);
        checks.push_back({"volume-normalization",
                          std::abs(wt.integral(comp, grid) - volume)});
    }

    {  // reduced symbol equals the radial marginal
        const auto gl = gauss_legendre(n + 2);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double dev = 0.0;
        for (int rep = 0; rep < 5; ++rep) {
            const double theta = std::acos(2.0 * u(rng) - 1.0);
            const double phi = 2.0 * kPi * u(rng);
            double marginal = 0.0;
            for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
                const double r = 0.5 * (gl.nodes[i] + 1.0);
                marginal += 0.5 * gl.weights[i] * r * wt.wigner(comp, {theta, phi, r});
            }
            dev = std::max(dev, std::abs(wt.reduced(comp, theta, phi) - marginal));
        }
        checks.push_back({"reduced-marginal", dev});
    }

    json report;
    report["manifest"] = manifest_skeleton("verify", {{"n", n}, {"tol", tol}, {"force", force}});
    report["checks"] = json::array();
    bool all_pass = true;
    for (const auto& c : checks) {
        const bool pass = c.deviation < tol;
        all_pass = all_pass && pass;
        report["checks"].push_back(
            {{"name", c.name}, {"max_deviation", c.deviation}, {"pass", pass}});
    }
    report["all_pass"] = all_pass;
    report["manifest"]["wall_clock_ms"] = sw.ms();

    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!out.empty()) write_text_file(out, text);
    return all_pass ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"solid spin Wigner functions for noisy spin ensembles"};
    app.require_subcommand(1);

    int n = 0;
    double tol = 1e-9;
    bool force = false;
    std::string out;
    std::string spec;
    double phi = 0.0;
    GridArgs grid;
    std::string channel = "atom-loss";
    std::string profile = "per-atom";
    std::vector<double> gamma_t;
    std::vector<std::string> emit = {"negativity"};

    auto* verify = app.add_subcommand("verify", "run the invariant suite and report as JSON");
    verify->add_option("--n", n, "particle count")->required();
    verify->add_option("--tol", tol, "tolerance applied to every check")->capture_default_str();
    verify->add_flag("--force", force, "allow N > 12");
    verify->add_option("--out", out, "also write the JSON report to this file");

    auto* slice = app.add_subcommand("slice", "Wigner function on a fixed-phi half-plane");
    slice->add_option("--n", n, "particle count")->required();
    slice->add_option("--state", spec, "state spec")->required();
    slice->add_option("--phi", phi, "azimuthal angle of the slice")->capture_default_str();
    slice->add_option("--ntheta", grid.ntheta, "polar grid points (default 4N+4)");
    slice->add_option("--nr", grid.nr, "radial grid points (default 2N+2)");
    slice->add_option("--out", out, "output CSV path")->required();

    auto* sphere = app.add_subcommand("sphere", "radially reduced Wigner function on the sphere");
    sphere->add_option("--n", n, "particle count")->required();
    sphere->add_option("--state", spec, "state spec")->required();
    sphere->add_option("--ntheta", grid.ntheta, "polar grid points (default 4N+4)");
    sphere->add_option("--nphi", grid.nphi, "azimuthal grid points (default 4N+4)");
    sphere->add_option("--out", out, "output CSV path")->required();

    auto* evolvec = app.add_subcommand("evolve", "atom-loss trajectory with CSV snapshots");
    evolvec->add_option("--n", n, "particle count")->required();
    evolvec->add_option("--state", spec, "initial state spec")->default_val("ghz");
    evolvec->add_option("--channel", channel, "noise channel")->capture_default_str();
    evolvec->add_option("--profile", profile, "atom-loss weighting: per-atom | paper-literal")
        ->capture_default_str();
    evolvec->add_option("--gamma-t", gamma_t, "snapshot times in gamma*t units")
        ->required()
        ->delimiter(',');
    evolvec->add_option("--emit", emit, "artifacts: slice, sphere, negativity")->delimiter(',');
    evolvec->add_option("--phi", phi, "azimuthal angle for slice snapshots")->capture_default_str();
    evolvec->add_option("--ntheta", grid.ntheta, "polar grid points (default 4N+4)");
    evolvec->add_option("--nphi", grid.nphi, "azimuthal grid points (default 4N+4)");
    evolvec->add_option("--nr", grid.nr, "radial grid points (default 2N+2)");
    evolvec->add_option("--out", out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(verify)) return cmd_verify(n, tol, force, out);
        if (app.got_subcommand(slice)) return cmd_slice(n, spec, phi, grid, out);
        if (app.got_subcommand(sphere)) return cmd_sphere(n, spec, grid, out);
        if (app.got_subcommand(evolvec))
            return cmd_evolve(n, spec, channel, profile, gamma_t, emit, phi, grid, out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\nstate grammar:\n" << kStateGrammar << "\n";
        return kExitUsage;
    } catch (const IntegrationError& e) {
        std::cerr << "integration failure at gamma*t = " << e.time << ": " << e.what() << "\n";
        return kExitIntegration;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
