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

#include "oodl/models.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

namespace oodl {

namespace {

inline double spin(std::size_t basis, int q) {
    return ((basis >> q) & 1U) ? -1.0 : 1.0;
}

CVec phases_of(const CVec &diag, double scale) {
    CVec out(diag.size());
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        out(i) = std::polar(1.0, -scale * diag(i).real());
    }
    return out;
}

}  // namespace

// ------------------------------------------------------------ Heisenberg

void HeisenbergParams::validate() const {
    const int nq = n();
    if (nq < 2) {
        throw Error(Errc::BadParams, "Heisenberg chain needs n >= 2");
    }
    if (nq > kMaxQubits) {
        throw Error(Errc::TooLarge, "Heisenberg chain exceeds qubit cap");
    }
    if (static_cast<int>(p.size()) != nq - 1 || static_cast<int>(r.size()) != nq) {
        throw Error(Errc::BadParams, "coupling vector lengths inconsistent with n");
    }
}

std::vector<double> HeisenbergParams::flatten() const {
    std::vector<double> flat;
    flat.reserve(p.size() + q.size() + r.size());
    flat.insert(flat.end(), p.begin(), p.end());
    flat.insert(flat.end(), q.begin(), q.end());
    flat.insert(flat.end(), r.begin(), r.end());
    return flat;
}

HeisenbergParams HeisenbergParams::unflatten(int n, std::span<const double> flat) {
    if (flat.size() != flat_size(n)) {
        throw Error(Errc::BadParams, "flat parameter vector has wrong length");
    }
    const auto nn = static_cast<std::size_t>(n);
    HeisenbergParams hp;
    hp.p.assign(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(nn - 1));
    hp.q.assign(flat.begin() + static_cast<std::ptrdiff_t>(nn - 1), flat.begin() + static_cast<std::ptrdiff_t>(2 * nn - 1));
    hp.r.assign(flat.begin() + static_cast<std::ptrdiff_t>(2 * nn - 1), flat.end());
    return hp;
}

HeisenbergParams star_params(int n) {
    if (n < 2) {
        throw Error(Errc::BadParams, "Heisenberg chain needs n >= 2");
    }
    const double pi = std::numbers::pi;
    HeisenbergParams hp;
    for (int k = 1; k <= n - 1; ++k) {
        hp.p.push_back(std::sin(pi * k / (2.0 * n)));
    }
    for (int k = 1; k <= n; ++k) {
        hp.q.push_back(std::sin(pi * k / n));
        hp.r.push_back(std::cos(pi * k / n));
    }
    return hp;
}

CVec heisenberg_diag_a(const HeisenbergParams &params) {
    params.validate();
    const int n = params.n();
    const std::size_t d = dim_of(n);
    CVec diag(static_cast<Eigen::Index>(d));
    for (std::size_t b = 0; b < d; ++b) {
        double e = 0;
        for (int k = 0; k + 1 < n; ++k) {
            e += spin(b, k) * spin(b, k + 1);
        }
        for (int k = 0; k < n; ++k) {
            e += params.r[static_cast<std::size_t>(k)] * spin(b, k);
        }
        diag(static_cast<Eigen::Index>(b)) = e;
    }
    return diag;
}

CVec heisenberg_diag_b(const HeisenbergParams &params) {
    params.validate();
    const int n = params.n();
    const std::size_t d = dim_of(n);
    CVec diag(static_cast<Eigen::Index>(d));
    for (std::size_t b = 0; b < d; ++b) {
        double e = 0;
        for (int k = 0; k + 1 < n; ++k) {
            e += params.p[static_cast<std::size_t>(k)] * spin(b, k) * spin(b, k + 1);
        }
        for (int k = 0; k < n; ++k) {
            e += params.q[static_cast<std::size_t>(k)] * spin(b, k);
        }
        diag(static_cast<Eigen::Index>(b)) = e;
    }
    return diag;
}

Op heisenberg_h(const HeisenbergParams &params) {
    params.validate();
    const int n = params.n();
    CMat h = heisenberg_diag_a(params).asDiagonal();
    // X-type part is H^n D_B H^n; build H D_B, take the adjoint (D_B H) and
    // left-multiply by H again.
    CMat hb = heisenberg_diag_b(params).asDiagonal();
    apply_hadamard_all(hb, n);
    CMat hbh = hb.adjoint();
    apply_hadamard_all(hbh, n);
    h += hbh;
    return Op(n, std::move(h));
}

Op exact_evolution(const Op &h, double t) {
    if (h.hermiticity_residual() > 1e-10) {
        throw Error(Errc::NotHermitian, "generator is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(h.mat());
    const Eigen::VectorXd &evals = es.eigenvalues();
    CVec ph(evals.size());
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        ph(i) = std::polar(1.0, -evals(i) * t);
    }
    const CMat &vecs = es.eigenvectors();
    return Op(h.n(), vecs * ph.asDiagonal() * vecs.adjoint());
}

void trotter_apply(const HeisenbergParams &params, int layers, double t, Eigen::Ref<CMat> target) {
    if (layers < 1) {
        throw Error(Errc::BadParams, "Trotter ansatz needs L >= 1");
    }
    const int n = params.n();
    const double dt = t / layers;
    const CVec half_a = phases_of(heisenberg_diag_a(params), dt / 2.0);
    const CVec full_a = phases_of(heisenberg_diag_a(params), dt);
    const CVec full_b = phases_of(heisenberg_diag_b(params), dt);
    // Adjacent half steps of H_A between layers merge into one full step.
    apply_diagonal(target, half_a);
    for (int l = 0; l < layers; ++l) {
        apply_hadamard_all(target, n);
        apply_diagonal(target, full_b);
        apply_hadamard_all(target, n);
        apply_diagonal(target, l + 1 < layers ? full_a : half_a);
    }
}

Op trotter_ansatz(const HeisenbergParams &params, int layers, double t) {
    params.validate();
    const int n = params.n();
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    CMat m = CMat::Identity(d, d);
    trotter_apply(params, layers, t, m);
    return Op(n, std::move(m));
}

// ------------------------------------------------------------ fast scrambler

CVec scrambler_phase_diagonal(int n, double g) {
    const std::size_t d = dim_of(n);
    const double coupling = g / (2.0 * std::sqrt(static_cast<double>(n)));
    CVec diag(static_cast<Eigen::Index>(d));
    for (std::size_t b = 0; b < d; ++b) {
        double sum = 0;
        for (int k = 0; k < n; ++k) {
            sum += spin(b, k);
        }
        // sum_{k<l} s_k s_l = ((sum s)^2 - n) / 2
        const double pairs = (sum * sum - n) / 2.0;
        diag(static_cast<Eigen::Index>(b)) = std::polar(1.0, -coupling * pairs);
    }
    return diag;
}

ZxzAngles zxz_decompose(const Mat2 &u) {
    const cplx det = u.determinant();
    const cplx root = std::sqrt(det);
    const Mat2 su = u / root;
    // su = [[a, -conj(b)], [b, conj(a)]] with a = cos(b2) e^{-i s}, b = -i sin(b2) e^{i t}
    const cplx a = su(0, 0);
    const cplx b = su(1, 0);
    const double b2 = std::atan2(std::abs(b), std::abs(a));
    const double s = std::abs(a) > 1e-14 ? -std::arg(a) : 0.0;
    const double tt = std::abs(b) > 1e-14 ? std::arg(b) + std::numbers::pi / 2.0 : 0.0;
    ZxzAngles out{(s + tt) / 2.0, b2, (s - tt) / 2.0, std::arg(root)};
    // Halving s and t is ambiguous up to a shared sign; fix via the phase.
    const Mat2 rebuilt = gates::zxz(out.b1, out.b2, out.b3);
    if ((rebuilt - su).cwiseAbs().maxCoeff() > 1e-8) {
        out.phase += std::numbers::pi;
    }
    return out;
}

std::pair<Op, ScramblerSpec> fast_scrambler_target(int n, int steps, double g, Rng &rng) {
    if (n < 2 || steps < 1) {
        throw Error(Errc::BadParams, "fast scrambler needs n >= 2 and t >= 1");
    }
    if (n > kMaxQubits) {
        throw Error(Errc::TooLarge, "fast scrambler exceeds qubit cap");
    }
    ScramblerSpec spec;
    spec.n = n;
    spec.steps = steps;
    spec.g = g;
    spec.target_angles.resize(spec.angle_count());
    const CVec zz = scrambler_phase_diagonal(n, g);
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    CMat u = CMat::Identity(d, d);
    std::vector<Mat2> gates_by_slot(static_cast<std::size_t>(steps * n));
    for (int j = 0; j < steps; ++j) {
        for (int k = 0; k < n; ++k) {
            const Op h = haar_unitary(2, rng);
            const Mat2 m = h.mat();
            gates_by_slot[static_cast<std::size_t>(j * n + k)] = m;
            const ZxzAngles z = zxz_decompose(m);
            const std::size_t base = static_cast<std::size_t>((j * n + k) * 3);
            spec.target_angles[base] = z.b1;
            spec.target_angles[base + 1] = z.b2;
            spec.target_angles[base + 2] = z.b3;
        }
    }
    // Applied to a state, step t acts first: U^II_t, then U^I_t, ..., U^I_1.
    for (int j = steps - 1; j >= 0; --j) {
        apply_diagonal(u, zz);
        for (int k = 0; k < n; ++k) {
            apply_1q(u, k, gates_by_slot[static_cast<std::size_t>(j * n + k)]);
        }
    }
    return {Op(n, std::move(u)), std::move(spec)};
}

void scrambler_apply(const ScramblerSpec &spec, std::span<const double> alpha, Eigen::Ref<CMat> target) {
    if (alpha.size() != spec.angle_count()) {
        throw Error(Errc::ShapeMismatch,
                    "expected " + std::to_string(spec.angle_count()) + " angles, got " + std::to_string(alpha.size()));
    }
    const CVec zz = scrambler_phase_diagonal(spec.n, spec.g);
    for (int j = spec.steps - 1; j >= 0; --j) {
        apply_diagonal(target, zz);
        for (int k = 0; k < spec.n; ++k) {
            const std::size_t base = static_cast<std::size_t>((j * spec.n + k) * 3);
            apply_1q(target, k, gates::zxz(alpha[base], alpha[base + 1], alpha[base + 2]));
        }
    }
}

Op scrambler_ansatz(const ScramblerSpec &spec, std::span<const double> alpha) {
    const auto d = static_cast<Eigen::Index>(dim_of(spec.n));
    CMat m = CMat::Identity(d, d);
    scrambler_apply(spec, alpha, m);
    return Op(spec.n, std::move(m));
}

// ------------------------------------------------------------ HEA

int hea_blocks_per_layer(int n) {
    return n / 2 + (n - 1) / 2;
}

void apply_hea_block(Eigen::Ref<CMat> target, int a, int b, std::span<const double> angles) {
    if (angles.size() != kHeaAnglesPerBlock) {
        throw Error(Errc::ShapeMismatch, "HEA block takes 21 angles");
    }
    auto rot = [&](int slot, int qubit) {
        const std::size_t o = static_cast<std::size_t>(slot * 3);
        apply_1q(target, qubit, gates::zxz(angles[o], angles[o + 1], angles[o + 2]));
    };
    rot(0, a);
    rot(1, b);
    apply_cnot(target, a, b);
    rot(2, a);
    rot(3, b);
    apply_cnot(target, b, a);
    rot(4, a);
    rot(5, b);
    apply_cnot(target, b, a);
    rot(6, a);
    apply_cnot(target, a, b);
}

Op hea_unitary(const HeaParams &params) {
    if (params.n < 2 || params.n > kMaxQubits || params.layers < 1) {
        throw Error(Errc::ShapeMismatch, "HEA needs 2 <= n <= cap and at least one layer");
    }
    if (params.theta.size() != params.expected_size()) {
        throw Error(Errc::ShapeMismatch, "HEA theta has " + std::to_string(params.theta.size()) + " angles, expected " +
                                             std::to_string(params.expected_size()));
    }
    const auto d = static_cast<Eigen::Index>(dim_of(params.n));
    CMat m = CMat::Identity(d, d);
    std::vector<double> block(kHeaAnglesPerBlock);
    std::size_t cursor = 0;
    auto next_block = [&]() {
        for (int i = 0; i < kHeaAnglesPerBlock; ++i) {
            block[static_cast<std::size_t>(i)] = params.scale * params.theta[cursor++];
        }
        return std::span<const double>(block);
    };
    for (int layer = 0; layer < params.layers; ++layer) {
        for (int a = 0; a + 1 < params.n; a += 2) {
            apply_hea_block(m, a, a + 1, next_block());
        }
        for (int a = 1; a + 1 < params.n; a += 2) {
            apply_hea_block(m, a, a + 1, next_block());
        }
    }
    return Op(params.n, std::move(m));
}

}  // namespace oodl
