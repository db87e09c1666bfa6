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

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "oodl/qcore.hpp"

namespace oodl {

// ------------------------------------------------------------ Heisenberg

/// Couplings of H = sum_k (Z_k Z_{k+1} + p_k X_k X_{k+1}) + sum_k (q_k X_k + r_k Z_k).
/// p[k] couples qubits k and k+1; q[k], r[k] act on qubit k.
struct HeisenbergParams {
    std::vector<double> p;
    std::vector<double> q;
    std::vector<double> r;

    int n() const {
        return static_cast<int>(q.size());
    }
    /// Throws BadParams unless |p| = n-1, |q| = |r| = n, n >= 2.
    void validate() const;

    /// Flat layout (p..., q..., r...) used by the optimizers.
    std::vector<double> flatten() const;
    static HeisenbergParams unflatten(int n, std::span<const double> flat);
    static std::size_t flat_size(int n) {
        return static_cast<std::size_t>(3 * n - 1);
    }
};

/// p_k = sin(pi k / 2n), q_k = sin(pi k / n), r_k = cos(pi k / n), k from 1.
HeisenbergParams star_params(int n);

Op heisenberg_h(const HeisenbergParams &params);

/// e^{-i h t} by Hermitian eigendecomposition.
Op exact_evolution(const Op &h, double t);

/// Second-order splitting (e^{-i H_A dt/2} e^{-i H_B dt} e^{-i H_A dt/2})^L,
/// dt = t / L. H_A holds the ZZ and Z terms (diagonal); H_B the XX and X
/// terms, diagonal after a Hadamard on every qubit.
Op trotter_ansatz(const HeisenbergParams &params, int layers, double t);
/// Same circuit applied in place to the columns of `target`.
void trotter_apply(const HeisenbergParams &params, int layers, double t, Eigen::Ref<CMat> target);

/// Diagonals of H_A and of H_B in the Hadamard-rotated basis.
CVec heisenberg_diag_a(const HeisenbergParams &params);
CVec heisenberg_diag_b(const HeisenbergParams &params);

// ------------------------------------------------------------ fast scrambler

struct ScramblerSpec {
    int n = 0;
    int steps = 0;
    double g = 1.0;
    /// ZXZ angles, index ((step * n) + qubit) * 3 + {0,1,2}; the sampled
    /// Haar gate equals e^{i phase} e^{-iZ b1} e^{-iX b2} e^{-iZ b3}.
    std::vector<double> target_angles;

    std::size_t angle_count() const {
        return static_cast<std::size_t>(steps) * static_cast<std::size_t>(n) * 3;
    }
};

/// Diagonal of e^{-i g/(2 sqrt n) sum_{k<l} Z_k Z_l}.
CVec scrambler_phase_diagonal(int n, double g);

/// Returns (U, spec) with U = prod_j U^I_j U^II_j, product taken left to
/// right over j = 1..t (so step t acts first on a state).
std::pair<Op, ScramblerSpec> fast_scrambler_target(int n, int steps, double g, Rng &rng);

/// Ansatz with the same interleaving, single-qubit gates zxz(alpha).
Op scrambler_ansatz(const ScramblerSpec &spec, std::span<const double> alpha);
void scrambler_apply(const ScramblerSpec &spec, std::span<const double> alpha, Eigen::Ref<CMat> target);

/// Angles (b1, b2, b3) and phase with u = e^{i phase} zxz(b1, b2, b3).
struct ZxzAngles {
    double b1;
    double b2;
    double b3;
    double phase;
};
ZxzAngles zxz_decompose(const Mat2 &u);

// ------------------------------------------------------------ HEA

/// Two-qubit blocks per brickwork layer: floor(n/2) + floor((n-1)/2).
int hea_blocks_per_layer(int n);
inline constexpr int kHeaAnglesPerBlock = 21;

struct HeaParams {
    int n = 2;
    int layers = 1;
    /// Block b of layer k starts at ((k * blocks_per_layer) + b) * 21.
    std::vector<double> theta;
    double scale = 1.0;

    std::size_t expected_size() const {
        return static_cast<std::size_t>(layers) * static_cast<std::size_t>(hea_blocks_per_layer(n)) * kHeaAnglesPerBlock;
    }
};

/// The 21-angle block G acting on qubits (a, b):
///   [R1 (x) R2] CX(a->b) [R3 (x) R4] CX(b->a) [R5 (x) R6] CX(b->a) [R7 on a] CX(a->b)
/// listed in application order, R = zxz. At zero angles the CNOTs pair off
/// and G = I.
void apply_hea_block(Eigen::Ref<CMat> target, int a, int b, std::span<const double> angles);

/// W(scale * theta): layers of even-pair blocks (0,1),(2,3),... then
/// odd-pair blocks (1,2),(3,4),...
Op hea_unitary(const HeaParams &params);

}  // namespace oodl
