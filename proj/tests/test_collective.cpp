#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <random>

#include "solidspin/collective.hpp"
#include "solidspin/su3.hpp"
#include "support/full_space.hpp"

using namespace solidspin;
using Catch::Matchers::WithinAbs;

namespace {
const HalfInt half = HalfInt::from_twice(1);

BlockOperator jop_v(int n, int axis) {
    const Complex I(0.0, 1.0);
    switch (axis) {
        case 0:
            return (Complex(0.5) * (ladder(LadderIndex::s12, n) + ladder(LadderIndex::s21, n)))
                .to_block_diagonal();
        case 1:
            return (Complex(0.0, -0.5) *
                    (ladder(LadderIndex::s12, n) - ladder(LadderIndex::s21, n)))
                .to_block_diagonal();
        default:
            return collective_jz(n);
    }
}
}  // namespace

TEST_CASE("dimension and degeneracy") {
    CHECK(dim_v(0) == 1);
    CHECK(dim_v(4) == 15);
    CHECK(dim_v(9) == 55);

    CHECK(degeneracy(HalfInt::from_twice(4), 4) == 1);  // symmetric subspace
    CHECK(degeneracy(HalfInt::from_twice(7), 7) == 1);
    CHECK(degeneracy(1, 4) == 3);
    CHECK(degeneracy(0, 2) == 1);
    CHECK_THROWS_AS(degeneracy(half, 4), std::invalid_argument);
    CHECK_THROWS_AS(degeneracy(3, 4), std::invalid_argument);

    // count J=1 multiplets of 4 qubits by brute-force coupling
    auto tree = testsupport::coupling_tree(4);
    int count = 0;
    for (const auto& m : tree)
        if (m.j == HalfInt(1)) ++count;
    CHECK(count == 3);

    // binomial identity sum_J d_J^N (2J+1) = 2^N
    for (int n : {2, 5, 8}) {
        std::int64_t total = 0;
        for (int tj = n % 2; tj <= n; tj += 2)
            total += degeneracy(HalfInt::from_twice(tj), n) * (tj + 1);
        CHECK(total == (std::int64_t(1) << n));
    }
}

TEST_CASE("flat index ordering") {
    SpaceIndex idx(3);
    CHECK(idx.dim() == 10);
    CHECK(idx.index_of(0, 0) == 0);
    CHECK(idx.index_of(half, -half) == 1);
    CHECK(idx.index_of(half, half) == 2);
    CHECK(idx.index_of(1, -1) == 3);
    CHECK(idx.index_of(HalfInt::from_twice(3), HalfInt::from_twice(3)) == 9);
    CHECK_THROWS_AS(idx.index_of(2, 0), std::invalid_argument);
}

TEST_CASE("spherical tensor basics") {
    // rank-0 tensor is identity / sqrt(2J+1)
    for (int n : {2, 5}) {
        for (int tj = 0; tj <= n; ++tj) {
            const HalfInt j = HalfInt::from_twice(tj);
            auto t = spherical_tensor(n, j, j, 0, 0);
            const Matrix* blk = t.block_if(j, j);
            REQUIRE(blk != nullptr);
            CHECK((*blk - Matrix::Identity(tj + 1, tj + 1) / std::sqrt(tj + 1.0))
                      .cwiseAbs()
                      .maxCoeff() < 1e-14);
        }
    }

    // triangle violation gives the zero operator, bad labels throw
    CHECK(spherical_tensor(4, 2, 0, 1, 0).empty());
    CHECK(spherical_tensor(4, 1, 1, 1, 2).empty());
    CHECK_THROWS_AS(spherical_tensor(4, 3, 0, 1, 0), std::invalid_argument);
}

TEST_CASE("spherical tensor orthonormality") {
    for (int n : {4, 6}) {
        // Tensors sharing a block pair (J', J); cross-pairs vanish by block
        // structure (spot-checked below).
        double worst = 0.0;
        for (int tjp = 0; tjp <= n; ++tjp) {
            for (int tj = 0; tj <= n; ++tj) {
                const HalfInt jp = HalfInt::from_twice(tjp), j = HalfInt::from_twice(tj);
                std::map<std::pair<int, int>, GeneralOperator> tensors;
                for (int k = std::abs(tjp - tj) / 2 * 2; k <= 0 + tjp + tj; k += 2) {
                    // k in twice units must pair with q; use HalfInt ks
                    const HalfInt kk = HalfInt::from_twice(k);
                    if (!triangle(j, kk, jp)) continue;
                    for (int q = -k; q <= k; q += 2)
                        tensors.insert({{k, q}, spherical_tensor(n, jp, j, kk,
                                                                 HalfInt::from_twice(q))});
                }
                for (const auto& [kq1, t1] : tensors) {
                    for (const auto& [kq2, t2] : tensors) {
                        const Complex tr = trace_product(t1.adjoint(), t2);
                        const double expect = (kq1 == kq2) ? 1.0 : 0.0;
                        worst = std::max(worst, std::abs(tr - expect));
                    }
                }
            }
        }
        CHECK(worst < 1e-12);
    }

    // different block pairs: zero trace product structurally
    auto a = spherical_tensor(4, 1, 1, 1, 0);
    auto b = spherical_tensor(4, 2, 1, 1, 0);
    CHECK(std::abs(trace_product(a.adjoint(), b)) == 0.0);
}

TEST_CASE("rotation operators") {
    // identity at zero angles
    CHECK(max_abs_diff(rotation_23(4, 0, 0, 0), BlockOperator::identity(4)) < 1e-15);

    std::mt19937 rng(404);
    std::uniform_real_distribution<double> ang(-2.0, 2.0);
    for (int n : {3, 5}) {
        const double a = ang(rng), b = ang(rng), g = ang(rng);
        auto r = rotation_23(n, a, b, g);
        auto rinv = rotation_23(n, -g, -b, -a);
        CHECK(max_abs_diff(r * rinv, BlockOperator::identity(n)) < 1e-12);
        // unitarity
        CHECK(max_abs_diff(r * r.adjoint(), BlockOperator::identity(n)) < 1e-12);
    }
}

TEST_CASE("tensor rotation property") {
    // R T^{J',J}_{k,q} R^dag = sum_q' T^{J',J}_{k,q'} D^k_{q'q}
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    const int n = 5;
    const double alpha = ang(rng), beta = std::abs(ang(rng)), gamma = ang(rng);
    auto r = rotation_23(n, alpha, beta, gamma);
    auto rg = GeneralOperator::from_block_diagonal(r);
    auto rgd = rg.adjoint();

    double worst = 0.0;
    for (auto [tjp, tj] : std::vector<std::pair<int, int>>{{5, 5}, {4, 2}, {3, 5}, {0, 2}}) {
        const HalfInt jp = HalfInt::from_twice(tjp), j = HalfInt::from_twice(tj);
        for (int tk = std::abs(tjp - tj); tk <= tjp + tj; tk += 2) {
            const HalfInt k = HalfInt::from_twice(tk);
            for (int tq = -tk; tq <= tk; tq += 2) {
                const HalfInt q = HalfInt::from_twice(tq);
                auto lhs = rg * spherical_tensor(n, jp, j, k, q) * rgd;
                GeneralOperator rhs(n);
                for (int tqp = -tk; tqp <= tk; tqp += 2) {
                    const HalfInt qp = HalfInt::from_twice(tqp);
                    const Complex d = std::polar(1.0, -alpha * qp.value()) *
                                      wigner_small_d(k, qp, q, beta) *
                                      std::polar(1.0, -gamma * q.value());
                    rhs += d * spherical_tensor(n, jp, j, k, qp);
                }
                worst = std::max(worst, max_abs_diff(lhs, rhs));
            }
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("state constructors") {
    // mixed_spins: trace one, integer-compatible blocks only
    for (int n : {3, 6}) {
        auto ms = mixed_spins(n);
        CHECK_THAT(ms.op().trace().real(), WithinAbs(1.0, 1e-12));
        CHECK(ms.op().block_if(HalfInt::from_twice((n % 2) ^ 1)) == nullptr);
    }

    // mixed_su3: all diagonal entries 2/((N+1)(N+2))
    for (int n : {4, 7}) {
        auto mm = mixed_su3(n);
        const double expect = 2.0 / ((n + 1.0) * (n + 2.0));
        for (int tj = 0; tj <= n; ++tj) {
            const Matrix* b = mm.op().block_if(HalfInt::from_twice(tj));
            REQUIRE(b != nullptr);
            CHECK((*b - expect * Matrix::Identity(tj + 1, tj + 1)).cwiseAbs().maxCoeff() <
                  1e-15);
        }
    }

    // ghz is pure within V
    auto g = ghz(4);
    CHECK_THAT(trace_product(g.op(), g.op()).real(), WithinAbs(1.0, 1e-12));

    // scs(N,0,0) is the stretched state
    CHECK(max_abs_diff(scs(5, 0.0, 0.0).op(),
                       dicke(5, HalfInt::from_twice(5), HalfInt::from_twice(5)).op()) < 1e-14);

    CHECK_THROWS_AS(dicke(4, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(dicke(4, 1, 2), std::invalid_argument);
}

TEST_CASE("expectation values") {
    const int n = 6;
    auto jz = collective_jz(n);
    CHECK_THAT(expectation(dicke(n, 2, -1), jz).real(), WithinAbs(-1.0, 1e-13));
    CHECK_THAT(expectation(dicke(n, 2, -1), BlockOperator::identity(n)).real(),
               WithinAbs(1.0, 1e-13));
    CHECK_THAT(expectation(ghz(n), jz).real(), WithinAbs(0.0, 1e-13));

    // <Jz> of a coherent state
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> th(0.0, kPi);
    const double theta = th(rng);
    CHECK_THAT(expectation(scs(n, theta, 1.1), jz).real(),
               WithinAbs(0.5 * n * std::cos(theta), 1e-12));

    auto wrong = BlockOperator::identity(n + 1);
    CHECK_THROWS_AS(expectation(dicke(n, 2, -1), wrong), std::invalid_argument);
}

TEST_CASE("full-space oracle: canonical states") {
    // |up...up> maps to the stretched Dicke state
    for (int n : {2, 3, 4}) {
        auto tree = testsupport::coupling_tree(n);
        const Eigen::Index dim = Eigen::Index(1) << n;
        testsupport::FMat rho = testsupport::FMat::Zero(dim, dim);
        rho(0, 0) = 1.0;  // all bits 0 = all up
        auto v = testsupport::map_to_v(n, rho, tree);
        CHECK(max_abs_diff(v, dicke(n, HalfInt::from_twice(n), HalfInt::from_twice(n)).op()) <
              1e-12);

        // maximally mixed state maps to mixed_spins
        testsupport::FMat mm =
            testsupport::FMat::Identity(dim, dim) / double(dim);
        auto vm = testsupport::map_to_v(n, mm, tree);
        CHECK(max_abs_diff(vm, mixed_spins(n).op()) < 1e-12);
    }

    // two-qubit singlet maps to |0,0>
    {
        auto tree = testsupport::coupling_tree(2);
        testsupport::FVec s = testsupport::FVec::Zero(4);
        s(1) = 1.0 / std::sqrt(2.0);   // |up,down>
        s(2) = -1.0 / std::sqrt(2.0);  // |down,up>
        testsupport::FMat rho = s * s.adjoint();
        auto v = testsupport::map_to_v(2, rho, tree);
        CHECK(max_abs_diff(v, dicke(2, 0, 0).op()) < 1e-12);
    }

    // non-permutation-invariant input is rejected
    {
        auto tree = testsupport::coupling_tree(2);
        testsupport::FMat rho = testsupport::FMat::Zero(4, 4);
        rho(1, 1) = 1.0;  // |up,down><up,down|
        CHECK_THROWS_AS(testsupport::map_to_v(2, rho, tree), std::invalid_argument);
    }
}

TEST_CASE("full-space oracle: expectation equivalence and purity caveat") {
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<int> axis(0, 2);

    for (int n : {3, 4, 5}) {
        auto tree = testsupport::coupling_tree(n);
        const Eigen::Index dim = Eigen::Index(1) << n;

        // random permutation-invariant density from a twirl
        testsupport::FMat g = testsupport::FMat::Random(dim, dim);
        testsupport::FMat rho = g * g.adjoint();
        rho /= rho.trace();
        rho = testsupport::permutation_twirl(n, rho);
        auto rho_v = testsupport::map_to_v(n, rho, tree);
        CHECK_THAT(rho_v.trace().real(), WithinAbs(1.0, 1e-12));

        testsupport::FMat jfull[3] = {testsupport::collective_j_full(n, 0),
                                      testsupport::collective_j_full(n, 1),
                                      testsupport::collective_j_full(n, 2)};
        BlockOperator jv[3] = {jop_v(n, 0), jop_v(n, 1), jop_v(n, 2)};

        for (int rep = 0; rep < 10; ++rep) {
            // random collective observable: linear combination of products
            testsupport::FMat afull = testsupport::FMat::Zero(dim, dim);
            BlockOperator av(n);
            for (int term = 0; term < 3; ++term) {
                const int len = 1 + (rep + term) % 3;
                testsupport::FMat pf = testsupport::FMat::Identity(dim, dim);
                BlockOperator pv = BlockOperator::identity(n);
                for (int l = 0; l < len; ++l) {
                    const int ax = axis(rng);
                    pf = pf * jfull[ax];
                    pv = pv * jv[ax];
                }
                const Complex c(coeff(rng), coeff(rng));
                afull += c * pf;
                av += c * pv;
            }
            const Complex full_exp = (rho * afull).trace();
            const Complex v_exp = trace_product(rho_v, av);
            CHECK_THAT(std::abs(full_exp - v_exp), WithinAbs(0.0, 1e-10));
        }

        // purity caveat: the collective basis state has full-space purity
        // 1/d_J^N but maps to a pure state in V
        for (int tj = n % 2; tj <= n; tj += 2) {
            const HalfInt j = HalfInt::from_twice(tj);
            const auto d_j = double(degeneracy(j, n));
            testsupport::FMat cs = testsupport::FMat::Zero(dim, dim);
            for (const auto& mult : tree) {
                if (mult.j != j) continue;
                const auto& top = mult.states[static_cast<std::size_t>(tj)];
                cs += top * top.adjoint();
            }
            cs /= d_j;
            const double full_purity = std::real((cs * cs).trace());
            CHECK_THAT(full_purity, WithinAbs(1.0 / d_j, 1e-12));
            auto v = testsupport::map_to_v(n, cs, tree);
            CHECK_THAT(trace_product(v, v).real(), WithinAbs(1.0, 1e-12));
        }
    }
}
