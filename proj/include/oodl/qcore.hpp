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

/**
 * @file
 * Dense n-qubit linear algebra: state vectors, operators, Pauli strings,
 * Kronecker products, partial traces, and Haar sampling.
 *
 * Qubit order is little-endian throughout: qubit q is bit q of the basis
 * index, so a one-qubit gate g on qubit q of an n-qubit register is
 * I^(n-1-q) (x) g (x) I^q as a Kronecker product.
 */

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oodl/error.hpp"
#include "oodl/rng.hpp"

namespace oodl {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

/// Hard cap on register size for dense objects.
inline constexpr int kMaxQubits = 12;

/// Structural tolerance (unitarity, normalization).
inline constexpr double kStructTol = 1e-10;

/// Bit mask over qubit indices; bit q set means qubit q is in the subset.
using QubitMask = std::uint32_t;

inline std::size_t dim_of(int n) {
    return std::size_t{1} << n;
}

/// Returns k with 2^k = dim, or throws InvalidDimension.
int qubits_for_dim(std::size_t dim);

class StateVec {
public:
    /// Takes ownership of amplitudes; length must be 2^n and norm 1 within
    /// kStructTol.
    StateVec(int n, CVec amps);

    /// Computational basis state |index>.
    static StateVec basis(int n, std::size_t index);
    /// Normalizes before validating; for constructing from unnormalized data.
    static StateVec normalized(int n, CVec amps);

    int n() const noexcept {
        return n_;
    }
    std::size_t dim() const noexcept {
        return static_cast<std::size_t>(amps_.size());
    }
    const CVec &amps() const noexcept {
        return amps_;
    }

private:
    int n_;
    CVec amps_;
};

class Op {
public:
    Op(int n, CMat elems);

    static Op identity(int n);

    int n() const noexcept {
        return n_;
    }
    std::size_t dim() const noexcept {
        return static_cast<std::size_t>(m_.rows());
    }
    const CMat &mat() const noexcept {
        return m_;
    }

    Op adjoint() const;
    Op operator*(const Op &rhs) const;
    StateVec apply(const StateVec &psi) const;
    cplx trace() const {
        return m_.trace();
    }

    /// max |(O^dagger O - I)_ij|
    double unitarity_residual() const;
    bool is_unitary(double tol = kStructTol) const {
        return unitarity_residual() <= tol;
    }
    /// max |(O - O^dagger)_ij|
    double hermiticity_residual() const;

private:
    int n_;
    CMat m_;
};

/// Throws NotUnitary if the residual exceeds tol.
void require_unitary(const Op &op, std::string_view what, double tol = kStructTol);

/// Pauli string; letters[q] acts on qubit q. Parsing "XY" puts X on qubit 0
/// and Y on qubit 1.
class PauliString {
public:
    explicit PauliString(std::string letters);
    /// Index in base 4 with digit q for qubit q, digits I=0, X=1, Y=2, Z=3.
    static PauliString from_index(int n, std::uint64_t index);

    int n() const noexcept {
        return static_cast<int>(letters_.size());
    }
    char at(int q) const {
        return letters_[static_cast<std::size_t>(q)];
    }
    const std::string &letters() const noexcept {
        return letters_;
    }

    /// Bits where the string has X or Y (the basis-flip mask).
    QubitMask flip_mask() const;
    /// Bits where the string has Y or Z (the sign mask).
    QubitMask phase_mask() const;
    /// Number of Y letters.
    int y_count() const;

private:
    std::string letters_;
};

Op pauli_matrix(const PauliString &p);

namespace gates {
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
Mat2 hadamard();
/// e^{-i Z b1} e^{-i X b2} e^{-i Z b3}; identity at all-zero angles.
Mat2 zxz(double b1, double b2, double b3);
}  // namespace gates

/// Kronecker product a (x) b; b occupies the low-order qubits.
Op kron(const Op &a, const Op &b);

/// One-qubit matrix g placed on qubit q of an n-qubit register.
Op embed_1q(const Mat2 &g, int q, int n);

/// Tr over the complement of keep. Result has side 2^|keep| with the kept
/// qubits in increasing order as its little-endian qubits.
Op partial_trace(const Op &w, std::span<const int> keep);
CMat partial_trace_mask(const CMat &w, int n, QubitMask keep);

/// |<psi|phi>|^2
double fidelity(const StateVec &psi, const StateVec &phi);

/// Haar-random unitary of the given dimension (Ginibre then QR with the
/// R-diagonal phases divided out).
Op haar_unitary(std::size_t dim, Rng &rng);
/// Haar-random pure state: normalized complex Gaussian vector.
CVec haar_vector(std::size_t dim, Rng &rng);

/// In-place gate application. `target` may be a state (d x 1) or a matrix
/// whose columns are all acted on (left multiplication).
void apply_1q(Eigen::Ref<CMat> target, int q, const Mat2 &g);
/// Local index of the 4x4 gate is bit(q0) + 2 bit(q1).
void apply_2q(Eigen::Ref<CMat> target, int q0, int q1, const Mat4 &g);
void apply_cnot(Eigen::Ref<CMat> target, int control, int flip);
void apply_diagonal(Eigen::Ref<CMat> target, const CVec &phases);
/// H on every qubit (unnormalized Walsh transform scaled by 2^{-n/2}).
void apply_hadamard_all(Eigen::Ref<CMat> target, int n);
/// Dense k-qubit unitary on an arbitrary ordered list of qubits.
void apply_kq(Eigen::Ref<CMat> target, std::span<const int> qubits, const CMat &g);

/// Reduced density matrix of psi on the kept qubits.
CMat reduced_density(const StateVec &psi, QubitMask keep);

/// Von Neumann entropy in bits.
double entropy_bits(const CMat &rho);

}  // namespace oodl
