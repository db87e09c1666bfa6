// Copyright 2026 The oodl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oodl/qcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <bit>
#include <cmath>

namespace oodl {

namespace {

void check_n(int n) {
    if (n < 0) {
        throw Error(Errc::InvalidDimension, "negative qubit count");
    }
    if (n > kMaxQubits) {
        throw Error(Errc::TooLarge, std::to_string(n) + " qubits exceeds cap " + std::to_string(kMaxQubits));
    }
}

// Scatter the low bits of `value` into the positions given by `positions`.
std::size_t deposit(std::size_t value, std::span<const int> positions) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if ((value >> i) & 1U) {
            out |= std::size_t{1} << positions[i];
        }
    }
    return out;
}

std::vector<int> mask_bits(QubitMask mask, int n) {
    std::vector<int> bits;
    for (int q = 0; q < n; ++q) {
        if ((mask >> q) & 1U) {
            bits.push_back(q);
        }
    }
    return bits;
}

std::vector<std::size_t> deposit_table(std::span<const int> positions) {
    std::vector<std::size_t> table(std::size_t{1} << positions.size());
    for (std::size_t v = 0; v < table.size(); ++v) {
        table[v] = deposit(v, positions);
    }
    return table;
}

}  // namespace

int qubits_for_dim(std::size_t dim) {
    if (dim < 1 || !std::has_single_bit(dim)) {
        throw Error(Errc::InvalidDimension, "dimension " + std::to_string(dim) + " is not a power of two");
    }
    const int n = std::countr_zero(dim);
    check_n(n);
    return n;
}

// ---------------------------------------------------------------- StateVec

StateVec::StateVec(int n, CVec amps) : n_(n), amps_(std::move(amps)) {
    check_n(n);
    if (static_cast<std::size_t>(amps_.size()) != dim_of(n)) {
        throw Error(Errc::DimMismatch, "amplitude vector length " + std::to_string(amps_.size()) + " != 2^" + std::to_string(n));
    }
    const double norm2 = amps_.squaredNorm();
    if (std::abs(norm2 - 1.0) > kStructTol) {
        throw Error(Errc::InvalidDimension, "state not normalized, |psi|^2 = " + std::to_string(norm2));
    }
}

StateVec StateVec::basis(int n, std::size_t index) {
    check_n(n);
    if (index >= dim_of(n)) {
        throw Error(Errc::BadSubset, "basis index out of range");
    }
    CVec v = CVec::Zero(static_cast<Eigen::Index>(dim_of(n)));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVec(n, std::move(v));
}

StateVec StateVec::normalized(int n, CVec amps) {
    const double norm = amps.norm();
    if (norm == 0.0) {
        throw Error(Errc::InvalidDimension, "cannot normalize zero vector");
    }
    amps /= norm;
    return StateVec(n, std::move(amps));
}

// ---------------------------------------------------------------- Op

Op::Op(int n, CMat elems) : n_(n), m_(std::move(elems)) {
    check_n(n);
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    if (m_.rows() != d || m_.cols() != d) {
        throw Error(Errc::DimMismatch, "operator is not 2^n square");
    }
}

Op Op::identity(int n) {
    check_n(n);
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    return Op(n, CMat::Identity(d, d));
}

Op Op::adjoint() const {
    return Op(n_, m_.adjoint());
}

Op Op::operator*(const Op &rhs) const {
    if (rhs.n_ != n_) {
        throw Error(Errc::DimMismatch, "operator product of different sizes");
    }
    return Op(n_, m_ * rhs.m_);
}

StateVec Op::apply(const StateVec &psi) const {
    if (psi.n() != n_) {
        throw Error(Errc::DimMismatch, "operator/state qubit count mismatch");
    }
    return StateVec::normalized(n_, m_ * psi.amps());
}

double Op::unitarity_residual() const {
    const CMat r = m_.adjoint() * m_ - CMat::Identity(m_.rows(), m_.cols());
    return r.cwiseAbs().maxCoeff();
}

double Op::hermiticity_residual() const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

void require_unitary(const Op &op, std::string_view what, double tol) {
    const double res = op.unitarity_residual();
    if (res > tol) {
        throw Error(Errc::NotUnitary, std::string(what) + " is not unitary (residual " + std::to_string(res) + ")");
    }
}

// ---------------------------------------------------------------- Paulis

PauliString::PauliString(std::string letters) : letters_(std::move(letters)) {
    check_n(static_cast<int>(letters_.size()));
    for (char &c : letters_) {
        if (c == 'i') {
            c = 'I';
        }
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw Error(Errc::BadSpec, std::string("bad Pauli letter '") + c + "'");
        }
    }
}

PauliString PauliString::from_index(int n, std::uint64_t index) {
    static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    std::string s(static_cast<std::size_t>(n), 'I');
    for (int q = 0; q < n; ++q) {
        s[static_cast<std::size_t>(q)] = kLetters[index & 3U];
        index >>= 2;
    }
    return PauliString(std::move(s));
}

QubitMask PauliString::flip_mask() const {
    QubitMask m = 0;
    for (int q = 0; q < n(); ++q) {
        if (at(q) == 'X' || at(q) == 'Y') {
            m |= QubitMask{1} << q;
        }
    }
    return m;
}

QubitMask PauliString::phase_mask() const {
    QubitMask m = 0;
    for (int q = 0; q < n(); ++q) {
        if (at(q) == 'Y' || at(q) == 'Z') {
            m |= QubitMask{1} << q;
        }
    }
    return m;
}

int PauliString::y_count() const {
    int c = 0;
    for (char l : letters_) {
        c += (l == 'Y');
    }
    return c;
}

Op pauli_matrix(const PauliString &p) {
    // P|j> = i^{#Y} (-1)^{|j & phase_mask|} |j ^ flip_mask>
    const int n = p.n();
    const std::size_t d = dim_of(n);
    const QubitMask flip = p.flip_mask();
    const QubitMask phase = p.phase_mask();
    static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx global = kIPow[p.y_count() % 4];
    CMat m = CMat::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) {
        const double sign = (std::popcount(j & phase) & 1) ? -1.0 : 1.0;
        m(static_cast<Eigen::Index>(j ^ flip), static_cast<Eigen::Index>(j)) = global * sign;
    }
    return Op(n, std::move(m));
}

namespace gates {

Mat2 pauli_x() {
    Mat2 m;
    m << 0, 1, 1, 0;
    return m;
}

Mat2 pauli_y() {
    Mat2 m;
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}

Mat2 pauli_z() {
    Mat2 m;
    m << 1, 0, 0, -1;
    return m;
}

Mat2 hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    Mat2 m;
    m << s, s, s, -s;
    return m;
}

Mat2 zxz(double b1, double b2, double b3) {
    auto rz = [](double b) {
        Mat2 m = Mat2::Zero();
        m(0, 0) = std::polar(1.0, -b);
        m(1, 1) = std::polar(1.0, b);
        return m;
    };
    Mat2 rx;
    rx << std::cos(b2), cplx(0, -std::sin(b2)), cplx(0, -std::sin(b2)), std::cos(b2);
    return rz(b1) * rx * rz(b3);
}

}  // namespace gates

// ---------------------------------------------------------------- kron / trace

Op kron(const Op &a, const Op &b) {
    const int n = a.n() + b.n();
    check_n(n);
    const CMat &am = a.mat();
    const CMat &bm = b.mat();
    const Eigen::Index db = bm.rows();
    CMat out(am.rows() * db, am.cols() * db);
    for (Eigen::Index i = 0; i < am.rows(); ++i) {
        for (Eigen::Index j = 0; j < am.cols(); ++j) {
            out.block(i * db, j * db, db, db) = am(i, j) * bm;
        }
    }
    return Op(n, std::move(out));
}

Op embed_1q(const Mat2 &g, int q, int n) {
    check_n(n);
    if (q < 0 || q >= n) {
        throw Error(Errc::BadSubset, "qubit index out of range");
    }
    Op out = Op::identity(n);
    CMat m = out.mat();
    apply_1q(m, q, g);
    return Op(n, std::move(m));
}

CMat partial_trace_mask(const CMat &w, int n, QubitMask keep) {
    const std::vector<int> kept = mask_bits(keep, n);
    const QubitMask all = n == 0 ? 0 : static_cast<QubitMask>((std::uint64_t{1} << n) - 1);
    const std::vector<int> traced = mask_bits(all & ~keep, n);
    const std::vector<std::size_t> kidx = deposit_table(kept);
    const std::vector<std::size_t> tidx = deposit_table(traced);
    const auto dk = static_cast<Eigen::Index>(kidx.size());
    CMat out = CMat::Zero(dk, dk);
    for (Eigen::Index b = 0; b < dk; ++b) {
        for (Eigen::Index a = 0; a < dk; ++a) {
            cplx acc = 0;
            const std::size_t ra = kidx[static_cast<std::size_t>(a)];
            const std::size_t cb = kidx[static_cast<std::size_t>(b)];
            for (std::size_t t : tidx) {
                acc += w(static_cast<Eigen::Index>(ra | t), static_cast<Eigen::Index>(cb | t));
            }
            out(a, b) = acc;
        }
    }
    return out;
}

Op partial_trace(const Op &w, std::span<const int> keep) {
    QubitMask mask = 0;
    for (int q : keep) {
        if (q < 0 || q >= w.n()) {
            throw Error(Errc::BadSubset, "qubit " + std::to_string(q) + " not in register of " + std::to_string(w.n()));
        }
        mask |= QubitMask{1} << q;
    }
    return Op(std::popcount(mask), partial_trace_mask(w.mat(), w.n(), mask));
}

double fidelity(const StateVec &psi, const StateVec &phi) {
    if (psi.n() != phi.n()) {
        throw Error(Errc::DimMismatch, "fidelity between different register sizes");
    }
    return std::norm(psi.amps().dot(phi.amps()));
}

// ---------------------------------------------------------------- Haar

CVec haar_vector(std::size_t dim, Rng &rng) {
    CVec v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        v(i) = cplx(re, im);
    }
    return v / v.norm();
}

Op haar_unitary(std::size_t dim, Rng &rng) {
    const int n = qubits_for_dim(dim);
    if (n < 1) {
        throw Error(Errc::InvalidDimension, "Haar unitary needs at least one qubit");
    }
    const auto d = static_cast<Eigen::Index>(dim);
    CMat z(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            z(i, j) = cplx(re, im) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<CMat> qr(z);
    CMat q = qr.householderQ();
    const CMat &r = qr.matrixQR();
    for (Eigen::Index j = 0; j < d; ++j) {
        const cplx rjj = r(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= mag > 0 ? rjj / mag : cplx(1.0);
    }
    return Op(n, std::move(q));
}

// ---------------------------------------------------------------- gates

void apply_1q(Eigen::Ref<CMat> target, int q, const Mat2 &g) {
    const std::size_t d = static_cast<std::size_t>(target.rows());
    const std::size_t stride = std::size_t{1} << q;
    const cplx g00 = g(0, 0), g01 = g(0, 1), g10 = g(1, 0), g11 = g(1, 1);
    for (Eigen::Index c = 0; c < target.cols(); ++c) {
        cplx *col = target.col(c).data();
        for (std::size_t base = 0; base < d; base += 2 * stride) {
            for (std::size_t i = base; i < base + stride; ++i) {
                const cplx a0 = col[i];
                const cplx a1 = col[i + stride];
                col[i] = g00 * a0 + g01 * a1;
                col[i + stride] = g10 * a0 + g11 * a1;
            }
        }
    }
}

void apply_2q(Eigen::Ref<CMat> target, int q0, int q1, const Mat4 &g) {
    const std::size_t d = static_cast<std::size_t>(target.rows());
    const std::size_t m0 = std::size_t{1} << q0;
    const std::size_t m1 = std::size_t{1} << q1;
    for (Eigen::Index c = 0; c < target.cols(); ++c) {
        cplx *col = target.col(c).data();
        for (std::size_t i = 0; i < d; ++i) {
            if (i & (m0 | m1)) {
                continue;
            }
            const std::size_t idx[4] = {i, i | m0, i | m1, i | m0 | m1};
            const cplx a[4] = {col[idx[0]], col[idx[1]], col[idx[2]], col[idx[3]]};
            for (int r = 0; r < 4; ++r) {
                col[idx[r]] = g(r, 0) * a[0] + g(r, 1) * a[1] + g(r, 2) * a[2] + g(r, 3) * a[3];
            }
        }
    }
}

void apply_cnot(Eigen::Ref<CMat> target, int control, int flip) {
    const std::size_t d = static_cast<std::size_t>(target.rows());
    const std::size_t mc = std::size_t{1} << control;
    const std::size_t mf = std::size_t{1} << flip;
    for (Eigen::Index c = 0; c < target.cols(); ++c) {
        cplx *col = target.col(c).data();
        for (std::size_t i = 0; i < d; ++i) {
            if ((i & mc) && !(i & mf)) {
                std::swap(col[i], col[i | mf]);
            }
        }
    }
}

void apply_diagonal(Eigen::Ref<CMat> target, const CVec &phases) {
    for (Eigen::Index c = 0; c < target.cols(); ++c) {
        target.col(c).array() *= phases.array();
    }
}

void apply_hadamard_all(Eigen::Ref<CMat> target, int n) {
    const std::size_t d = static_cast<std::size_t>(target.rows());
    const double scale = std::pow(2.0, -0.5 * n);
    for (Eigen::Index c = 0; c < target.cols(); ++c) {
        cplx *col = target.col(c).data();
        for (std::size_t stride = 1; stride < d; stride <<= 1) {
            for (std::size_t base = 0; base < d; base += 2 * stride) {
                for (std::size_t i = base; i < base + stride; ++i) {
                    const cplx a0 = col[i];
                    const cplx a1 = col[i + stride];
                    col[i] = a0 + a1;
                    col[i + stride] = a0 - a1;
                }
            }
        }
        for (std::size_t i = 0; i < d; ++i) {
            col[i] *= scale;
        }
    }
}

void apply_kq(Eigen::Ref<CMat> target, std::span<const int> qubits, const CMat &g) {
    const std::size_t k = qubits.size();
    const std::size_t dk = std::size_t{1} << k;
    if (static_cast<std::size_t>(g.rows()) != dk || static_cast<std::size_t>(g.cols()) != dk) {
        throw Error(Errc::ShapeMismatch, "gate size does not match qubit list");
    }
    std::size_t mask = 0;
    for (int q : qubits) {
        mask |= std::size_t{1} << q;
    }
    const std::vector<std::size_t> offs = deposit_table(qubits);
    const std::size_t d = static_cast<std::size_t>(target.rows());
    CVec in(static_cast<Eigen::Index>(dk));
    for (Eigen::Index c = 0; c < target.cols(); ++c) {
        cplx *col = target.col(c).data();
        for (std::size_t base = 0; base < d; ++base) {
            if (base & mask) {
                continue;
            }
            for (std::size_t a = 0; a < dk; ++a) {
                in(static_cast<Eigen::Index>(a)) = col[base | offs[a]];
            }
            const CVec out = g * in;
            for (std::size_t a = 0; a < dk; ++a) {
                col[base | offs[a]] = out(static_cast<Eigen::Index>(a));
            }
        }
    }
}

CMat reduced_density(const StateVec &psi, QubitMask keep) {
    const int n = psi.n();
    const std::vector<int> kept = mask_bits(keep, n);
    const QubitMask all = static_cast<QubitMask>((std::uint64_t{1} << n) - 1);
    const std::vector<int> traced = mask_bits(all & ~keep, n);
    const std::vector<std::size_t> kidx = deposit_table(kept);
    const std::vector<std::size_t> tidx = deposit_table(traced);
    const auto dk = static_cast<Eigen::Index>(kidx.size());
    const auto dt = static_cast<Eigen::Index>(tidx.size());
    // Reshape psi into dk x dt and form M M^dagger.
    CMat m(dk, dt);
    for (Eigen::Index t = 0; t < dt; ++t) {
        for (Eigen::Index a = 0; a < dk; ++a) {
            m(a, t) = psi.amps()(static_cast<Eigen::Index>(kidx[static_cast<std::size_t>(a)] | tidx[static_cast<std::size_t>(t)]));
        }
    }
    return m * m.adjoint();
}

double entropy_bits(const CMat &rho) {
    Eigen::SelfAdjointEigenSolver<CMat> es(rho, Eigen::EigenvaluesOnly);
    double s = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double p = es.eigenvalues()(i);
        if (p > 1e-15) {
            s -= p * std::log2(p);
        }
    }
    return s;
}

}  // namespace oodl
