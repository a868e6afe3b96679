#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "solidspin/coupling.hpp"
#include "solidspin/exact.hpp"
#include "solidspin/functions.hpp"
#include "solidspin/half_int.hpp"

namespace solidspin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Dimension of the vectorized collective state space for N spin-1/2
/// particles: blocks J = 0, 1/2, ..., N/2 of size 2J+1.
inline int dim_v(int n) {
    if (n < 0) throw std::invalid_argument("dim_v: negative N");
    return (n + 1) * (n + 2) / 2;
}

/// Multiplicity d_J^N of the spin-J irrep in the N-qubit decomposition,
///   d_J^N = (2J+1)/(N/2+J+1) * binom(N, N/2-J),
/// exact. Defined only for integer-compatible pairs (N/2 - J integral).
inline std::int64_t degeneracy(HalfInt j, int n) {
    if (n < 0 || j < HalfInt(0) || j.twice() > n)
        throw std::invalid_argument("degeneracy: need 0 <= J <= N/2");
    if ((n - j.twice()) % 2 != 0)
        throw std::invalid_argument("degeneracy: N/2 - J must be integral (J=" + j.to_string() +
                                    ", N=" + std::to_string(n) + ")");
    const int k = (n - j.twice()) / 2;  // N/2 - J
    BigInt binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    BigInt num = binom * (j.twice() + 1);
    const int denom = (n + j.twice()) / 2 + 1;  // N/2 + J + 1
    BigInt d = num / denom;
    if (d * denom != num) throw std::logic_error("degeneracy: non-integer result");
    if (!d.fits_slong_p()) throw std::overflow_error("degeneracy: result exceeds int64");
    return static_cast<std::int64_t>(d.get_si());
}

/// Label |J, M, N> in the vectorized collective state space.
struct SpinLabel {
    HalfInt j;
    HalfInt m;
    int n = 0;
};

inline void validate_spin_label(HalfInt j, HalfInt m, int n) {
    if (n < 0) throw std::invalid_argument("spin label: negative N");
    if (j < HalfInt(0) || j.twice() > n)
        throw std::invalid_argument("spin label: need 0 <= J <= N/2 (J=" + j.to_string() +
                                    ", N=" + std::to_string(n) + ")");
    if (!valid_jm(j, m))
        throw std::invalid_argument("spin label: invalid M for J (J=" + j.to_string() +
                                    ", M=" + m.to_string() + ")");
}

/// Flat indexing of the (J, M) labels: ascending J, then ascending M within
/// a block. Block J sits at offset 2J(2J+1)/2 with size 2J+1.
class SpaceIndex {
public:
    explicit SpaceIndex(int n) : n_(n) {
        if (n < 0) throw std::invalid_argument("SpaceIndex: negative N");
    }

    int n() const { return n_; }
    int dim() const { return dim_v(n_); }
    int num_blocks() const { return n_ + 1; }

    HalfInt block_j(int index) const { return HalfInt::from_twice(index); }
    static int block_size(HalfInt j) { return j.twice() + 1; }
    static int block_offset(HalfInt j) { return j.twice() * (j.twice() + 1) / 2; }
    static int m_index(HalfInt j, HalfInt m) { return (m + j).to_int(); }

    int index_of(HalfInt j, HalfInt m) const {
        validate_spin_label(j, m, n_);
        return block_offset(j) + m_index(j, m);
    }

private:
    int n_;
};

/// J-preserving operator: one dense complex block per J, absent blocks are
/// zero.
class BlockOperator {
public:
    explicit BlockOperator(int n) : n_(n), blocks_(static_cast<std::size_t>(n + 1)) {
        if (n < 0) throw std::invalid_argument("BlockOperator: negative N");
    }

    static BlockOperator identity(int n) {
        BlockOperator op(n);
        for (int t = 0; t <= n; ++t)
            op.blocks_[static_cast<std::size_t>(t)] = Matrix::Identity(t + 1, t + 1);
        return op;
    }

    int n() const { return n_; }
    int num_blocks() const { return n_ + 1; }

    bool has_block(HalfInt j) const {
        return j.twice() >= 0 && j.twice() <= n_ && blocks_[static_cast<std::size_t>(j.twice())].size() > 0;
    }

    /// Mutable access; allocates a zero block on first touch.
    Matrix& block(HalfInt j) {
        check_j(j);
        Matrix& b = blocks_[static_cast<std::size_t>(j.twice())];
        if (b.size() == 0) b = Matrix::Zero(j.twice() + 1, j.twice() + 1);
        return b;
    }

    /// Const access; nullptr when the block is zero.
    const Matrix* block_if(HalfInt j) const {
        if (j.twice() < 0 || j.twice() > n_) return nullptr;
        const Matrix& b = blocks_[static_cast<std::size_t>(j.twice())];
        return b.size() > 0 ? &b : nullptr;
    }

    Complex trace() const {
        Complex t = 0.0;
        for (const Matrix& b : blocks_)
            if (b.size() > 0) t += b.trace();
        return t;
    }

    BlockOperator adjoint() const {
        BlockOperator out(n_);
        for (int t = 0; t <= n_; ++t) {
            const Matrix& b = blocks_[static_cast<std::size_t>(t)];
            if (b.size() > 0) out.blocks_[static_cast<std::size_t>(t)] = b.adjoint();
        }
        return out;
    }

    BlockOperator& operator+=(const BlockOperator& o) {
        check_same(o);
        for (int t = 0; t <= n_; ++t) {
            const Matrix& b = o.blocks_[static_cast<std::size_t>(t)];
            if (b.size() > 0) block(HalfInt::from_twice(t)) += b;
        }
        return *this;
    }

    BlockOperator& operator-=(const BlockOperator& o) {
        check_same(o);
        for (int t = 0; t <= n_; ++t) {
            const Matrix& b = o.blocks_[static_cast<std::size_t>(t)];
            if (b.size() > 0) block(HalfInt::from_twice(t)) -= b;
        }
        return *this;
    }

    BlockOperator& operator*=(Complex c) {
        for (Matrix& b : blocks_)
            if (b.size() > 0) b *= c;
        return *this;
    }

    friend BlockOperator operator+(BlockOperator a, const BlockOperator& b) { a += b; return a; }
    friend BlockOperator operator-(BlockOperator a, const BlockOperator& b) { a -= b; return a; }
    friend BlockOperator operator*(Complex c, BlockOperator a) { a *= c; return a; }

    friend BlockOperator operator*(const BlockOperator& a, const BlockOperator& b) {
        a.check_same(b);
        BlockOperator out(a.n_);
        for (int t = 0; t <= a.n_; ++t) {
            const Matrix& x = a.blocks_[static_cast<std::size_t>(t)];
            const Matrix& y = b.blocks_[static_cast<std::size_t>(t)];
            if (x.size() > 0 && y.size() > 0) out.blocks_[static_cast<std::size_t>(t)] = x * y;
        }
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (const Matrix& b : blocks_)
            if (b.size() > 0) m = std::max(m, b.cwiseAbs().maxCoeff());
        return m;
    }

private:
    void check_j(HalfInt j) const {
        if (j.twice() < 0 || j.twice() > n_)
            throw std::invalid_argument("BlockOperator: block J out of range");
    }
    void check_same(const BlockOperator& o) const {
        if (o.n_ != n_) throw std::invalid_argument("BlockOperator: mismatched N");
    }

    int n_;
    std::vector<Matrix> blocks_;
};

inline double max_abs_diff(const BlockOperator& a, const BlockOperator& b) {
    BlockOperator d = a;
    d -= b;
    return d.max_abs();
}

inline Complex trace_product(const BlockOperator& a, const BlockOperator& b) {
    if (a.n() != b.n()) throw std::invalid_argument("trace_product: mismatched N");
    Complex t = 0.0;
    for (int tw = 0; tw <= a.n(); ++tw) {
        const Matrix* x = a.block_if(HalfInt::from_twice(tw));
        const Matrix* y = b.block_if(HalfInt::from_twice(tw));
        if (x && y) t += (*x * *y).trace();
    }
    return t;
}

/// Operator coupling different J blocks: sparse map (J', J) -> dense block of
/// shape (2J'+1) x (2J+1), acting from block J into block J'.
class GeneralOperator {
public:
    using Key = std::pair<int, int>;  // (twoJp, twoJ)

    explicit GeneralOperator(int n) : n_(n) {
        if (n < 0) throw std::invalid_argument("GeneralOperator: negative N");
    }

    static GeneralOperator from_block_diagonal(const BlockOperator& b) {
        GeneralOperator out(b.n());
        for (int t = 0; t <= b.n(); ++t) {
            const Matrix* blk = b.block_if(HalfInt::from_twice(t));
            if (blk) out.blocks_[{t, t}] = *blk;
        }
        return out;
    }

    int n() const { return n_; }
    const std::map<Key, Matrix>& blocks() const { return blocks_; }
    bool empty() const { return blocks_.empty(); }

    Matrix& block(HalfInt jp, HalfInt j) {
        check_j(jp);
        check_j(j);
        Matrix& b = blocks_[{jp.twice(), j.twice()}];
        if (b.size() == 0) b = Matrix::Zero(jp.twice() + 1, j.twice() + 1);
        return b;
    }

    const Matrix* block_if(HalfInt jp, HalfInt j) const {
        auto it = blocks_.find({jp.twice(), j.twice()});
        return it == blocks_.end() ? nullptr : &it->second;
    }

    GeneralOperator adjoint() const {
        GeneralOperator out(n_);
        for (const auto& [key, mat] : blocks_) out.blocks_[{key.second, key.first}] = mat.adjoint();
        return out;
    }

    GeneralOperator& operator+=(const GeneralOperator& o) {
        check_same(o);
        for (const auto& [key, mat] : o.blocks_) {
            auto it = blocks_.find(key);
            if (it == blocks_.end())
                blocks_[key] = mat;
            else
                it->second += mat;
        }
        return *this;
    }

    GeneralOperator& operator-=(const GeneralOperator& o) {
        check_same(o);
        GeneralOperator neg = o;
        neg *= Complex(-1.0, 0.0);
        return (*this += neg);
    }

    GeneralOperator& operator*=(Complex c) {
        for (auto& [key, mat] : blocks_) mat *= c;
        return *this;
    }

    friend GeneralOperator operator+(GeneralOperator a, const GeneralOperator& b) { a += b; return a; }
    friend GeneralOperator operator-(GeneralOperator a, const GeneralOperator& b) { a -= b; return a; }
    friend GeneralOperator operator*(Complex c, GeneralOperator a) { a *= c; return a; }

    friend GeneralOperator operator*(const GeneralOperator& a, const GeneralOperator& b) {
        a.check_same(b);
        GeneralOperator out(a.n_);
        for (const auto& [ka, ma] : a.blocks_) {
            for (const auto& [kb, mb] : b.blocks_) {
                if (ka.second != kb.first) continue;
                Key key{ka.first, kb.second};
                auto it = out.blocks_.find(key);
                if (it == out.blocks_.end())
                    out.blocks_[key] = ma * mb;
                else
                    it->second += ma * mb;
            }
        }
        return out;
    }

    Complex trace() const {
        Complex t = 0.0;
        for (const auto& [key, mat] : blocks_)
            if (key.first == key.second) t += mat.trace();
        return t;
    }

    friend GeneralOperator operator*(const GeneralOperator& a, const BlockOperator& b) {
        return a * GeneralOperator::from_block_diagonal(b);
    }
    friend GeneralOperator operator*(const BlockOperator& a, const GeneralOperator& b) {
        return GeneralOperator::from_block_diagonal(a) * b;
    }

    /// Extract the block-diagonal part; throws if any off-diagonal block is
    /// non-negligible.
    BlockOperator to_block_diagonal(double tol = 1e-12) const {
        BlockOperator out(n_);
        for (const auto& [key, mat] : blocks_) {
            if (key.first == key.second) {
                out.block(HalfInt::from_twice(key.first)) = mat;
            } else if (mat.cwiseAbs().maxCoeff() > tol) {
                throw std::invalid_argument("to_block_diagonal: off-diagonal support present");
            }
        }
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& [key, mat] : blocks_) m = std::max(m, mat.cwiseAbs().maxCoeff());
        return m;
    }

private:
    void check_j(HalfInt j) const {
        if (j.twice() < 0 || j.twice() > n_)
            throw std::invalid_argument("GeneralOperator: block J out of range");
    }
    void check_same(const GeneralOperator& o) const {
        if (o.n_ != n_) throw std::invalid_argument("GeneralOperator: mismatched N");
    }

    int n_;
    std::map<Key, Matrix> blocks_;
};

inline double max_abs_diff(const GeneralOperator& a, const GeneralOperator& b) {
    GeneralOperator d = a;
    d -= b;
    return d.max_abs();
}

inline Complex trace_product(const GeneralOperator& a, const GeneralOperator& b) {
    if (a.n() != b.n()) throw std::invalid_argument("trace_product: mismatched N");
    Complex t = 0.0;
    for (const auto& [ka, ma] : a.blocks()) {
        const Matrix* mb = b.block_if(HalfInt::from_twice(ka.second), HalfInt::from_twice(ka.first));
        if (mb) t += (ma * *mb).trace();
    }
    return t;
}

/// Generalized spherical tensor operator
///   T^{J',J}_{k,q} = sqrt((2k+1)/(2J'+1)) sum_M C^{J',M+q}_{J,M;k,q} |J',M+q><J,M|
/// as a single-block GeneralOperator. Triangle or |q|>k selection failure
/// yields the zero operator; labels out of range for N are an error.
inline GeneralOperator spherical_tensor(int n, HalfInt jp, HalfInt j, HalfInt k, HalfInt q) {
    if (n < 0) throw std::invalid_argument("spherical_tensor: negative N");
    if (jp < HalfInt(0) || jp.twice() > n || j < HalfInt(0) || j.twice() > n)
        throw std::invalid_argument("spherical_tensor: block labels out of range for N");
    if (k < HalfInt(0)) throw std::invalid_argument("spherical_tensor: negative rank");
    GeneralOperator op(n);
    if (!triangle(j, k, jp) || !valid_jm(k, q)) return op;
    const double norm = std::sqrt(double(k.twice() + 1) / double(jp.twice() + 1));
    Matrix& blk = op.block(jp, j);
    bool any = false;
    for (int tm = -j.twice(); tm <= j.twice(); tm += 2) {
        const HalfInt m = HalfInt::from_twice(tm);
        const HalfInt mpq = m + q;
        if (!valid_jm(jp, mpq)) continue;
        const double c = clebsch_gordan(j, m, k, q, jp, mpq);
        if (c == 0.0) continue;
        blk(SpaceIndex::m_index(jp, mpq), SpaceIndex::m_index(j, m)) = norm * c;
        any = true;
    }
    if (!any) return GeneralOperator(n);
    return op;
}

/// Block-diagonal SU(2) rotation with Euler angles (zyz):
/// block J = e^{-i alpha M'} d^J_{M'M}(beta) e^{-i gamma M}.
inline BlockOperator rotation_23(int n, double alpha, double beta, double gamma) {
    BlockOperator op(n);
    for (int t = 0; t <= n; ++t) {
        const HalfInt j = HalfInt::from_twice(t);
        Matrix& blk = op.block(j);
        for (int tmp = -t; tmp <= t; tmp += 2) {
            for (int tm = -t; tm <= t; tm += 2) {
                const HalfInt mp = HalfInt::from_twice(tmp);
                const HalfInt m = HalfInt::from_twice(tm);
                const double d = wigner_small_d(j, mp, m, beta);
                const Complex phase =
                    std::polar(1.0, -alpha * mp.value()) * std::polar(1.0, -gamma * m.value());
                blk(SpaceIndex::m_index(j, mp), SpaceIndex::m_index(j, m)) = phase * d;
            }
        }
    }
    return op;
}

/// Density operator on the vectorized space: Hermitian per block, unit trace,
/// blocks positive semidefinite to tolerance.
class DensityMatrixV {
public:
    explicit DensityMatrixV(BlockOperator op, double tol = 1e-9) : op_(std::move(op)) {
        const Complex tr = op_.trace();
        if (std::abs(tr.imag()) > tol || std::abs(tr.real() - 1.0) > tol)
            throw std::invalid_argument("DensityMatrixV: trace not 1 within tolerance");
        for (int t = 0; t <= op_.n(); ++t) {
            const Matrix* b = op_.block_if(HalfInt::from_twice(t));
            if (!b) continue;
            if ((*b - b->adjoint()).cwiseAbs().maxCoeff() > 1e2 * tol)
                throw std::invalid_argument("DensityMatrixV: block not Hermitian");
            Eigen::SelfAdjointEigenSolver<Matrix> es(*b, Eigen::EigenvaluesOnly);
            if (es.eigenvalues().minCoeff() < -1e2 * tol)
                throw std::invalid_argument("DensityMatrixV: block not positive semidefinite");
        }
    }

    int n() const { return op_.n(); }
    const BlockOperator& op() const { return op_; }

private:
    BlockOperator op_;
};

/// |J,M><J,M| as a state in V.
inline DensityMatrixV dicke(int n, HalfInt j, HalfInt m) {
    validate_spin_label(j, m, n);
    BlockOperator op(n);
    op.block(j)(SpaceIndex::m_index(j, m), SpaceIndex::m_index(j, m)) = 1.0;
    return DensityMatrixV(std::move(op));
}

/// (|J,J> + |J,-J>)/sqrt(2) with J = N/2.
inline DensityMatrixV ghz(int n) {
    if (n < 1) throw std::invalid_argument("ghz: need N >= 1");
    const HalfInt j = HalfInt::from_twice(n);
    BlockOperator op(n);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n + 1);
    v(SpaceIndex::m_index(j, j)) = 1.0 / std::sqrt(2.0);
    v(SpaceIndex::m_index(j, -j)) = 1.0 / std::sqrt(2.0);
    op.block(j) = v * v.adjoint();
    return DensityMatrixV(std::move(op));
}

/// Spin coherent state: R_z(phi) R_y(theta) applied to |N/2, N/2>.
inline DensityMatrixV scs(int n, double theta, double phi) {
    if (n < 0) throw std::invalid_argument("scs: negative N");
    const HalfInt j = HalfInt::from_twice(n);
    Eigen::VectorXcd v(n + 1);
    for (int tm = -n; tm <= n; tm += 2) {
        const HalfInt m = HalfInt::from_twice(tm);
        v(SpaceIndex::m_index(j, m)) =
            std::polar(1.0, -phi * m.value()) * wigner_small_d(j, m, j, theta);
    }
    BlockOperator op(n);
    op.block(j) = v * v.adjoint();
    return DensityMatrixV(std::move(op));
}

/// Image of the maximally mixed N-qubit state: degeneracy-weighted mixture
/// over the integer-compatible blocks.
inline DensityMatrixV mixed_spins(int n) {
    if (n < 0) throw std::invalid_argument("mixed_spins: negative N");
    BlockOperator op(n);
    const double denom = std::pow(2.0, n);
    for (int t = n % 2; t <= n; t += 2) {
        const HalfInt j = HalfInt::from_twice(t);
        const double w = static_cast<double>(degeneracy(j, n)) / denom;
        op.block(j) = w * Matrix::Identity(t + 1, t + 1);
    }
    return DensityMatrixV(std::move(op));
}

/// Maximally mixed state of the full vectorized space (all blocks, half
/// integer steps included).
inline DensityMatrixV mixed_su3(int n) {
    BlockOperator op = BlockOperator::identity(n);
    op *= Complex(1.0 / dim_v(n), 0.0);
    return DensityMatrixV(std::move(op));
}

inline Complex expectation(const DensityMatrixV& rho, const BlockOperator& a) {
    return trace_product(rho.op(), a);
}

/// Collective J_z, diagonal M per block.
inline BlockOperator collective_jz(int n) {
    BlockOperator op(n);
    for (int t = 0; t <= n; ++t) {
        const HalfInt j = HalfInt::from_twice(t);
        Matrix& blk = op.block(j);
        for (int tm = -t; tm <= t; tm += 2)
            blk(SpaceIndex::m_index(j, HalfInt::from_twice(tm)),
                SpaceIndex::m_index(j, HalfInt::from_twice(tm))) = 0.5 * tm;
    }
    return op;
}

}  // namespace solidspin
