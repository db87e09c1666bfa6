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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oodl/models.hpp"
#include "oodl/risks.hpp"
#include "oracles.hpp"

using namespace oodl;

namespace {

double max_abs(const CMat &m) {
    return m.cwiseAbs().maxCoeff();
}

/// Letters string with the given letters placed on the given qubits.
std::string placed(int n, std::initializer_list<std::pair<int, char>> at) {
    std::string s(static_cast<std::size_t>(n), 'I');
    for (auto [q, c] : at) s[static_cast<std::size_t>(q)] = c;
    return s;
}

/// Every commuting term of the Heisenberg Hamiltonian, split into its A and B parts.
void heisenberg_terms(const HeisenbergParams &hp, std::vector<CMat> &a_terms, std::vector<CMat> &b_terms) {
    const int n = hp.n();
    for (int k = 0; k + 1 < n; ++k) {
        a_terms.push_back(oracle::pauli(placed(n, {{k, 'Z'}, {k + 1, 'Z'}})));
        b_terms.push_back(hp.p[k] * oracle::pauli(placed(n, {{k, 'X'}, {k + 1, 'X'}})));
    }
    for (int k = 0; k < n; ++k) {
        b_terms.push_back(hp.q[k] * oracle::pauli(placed(n, {{k, 'X'}})));
        a_terms.push_back(hp.r[k] * oracle::pauli(placed(n, {{k, 'Z'}})));
    }
}

HeisenbergParams random_params(int n, Rng &rng) {
    HeisenbergParams hp;
    for (int k = 0; k + 1 < n; ++k) hp.p.push_back(rng.uniform(-1, 1));
    for (int k = 0; k < n; ++k) {
        hp.q.push_back(rng.uniform(-1, 1));
        hp.r.push_back(rng.uniform(-1, 1));
    }
    return hp;
}

Errc code_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    FAIL("expected an oodl::Error");
    return Errc::ConfigError;
}

double slope(const std::vector<double> &x, const std::vector<double> &y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= x.size();
    my /= y.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
        den += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    }
    return num / den;
}

}  // namespace

TEST_CASE("star_params examples") {
    const HeisenbergParams s4 = star_params(4);
    CHECK(s4.p.size() == 3);
    CHECK(std::abs(s4.q[3]) <= 1e-15);
    CHECK(std::abs(s4.r[3] + 1.0) <= 1e-15);
    CHECK(std::abs(s4.p[0] - std::sin(std::numbers::pi / 8)) <= 1e-15);
    const HeisenbergParams s2 = star_params(2);
    CHECK(std::abs(s2.p[0] - std::sqrt(2.0) / 2.0) <= 1e-15);
    CHECK(code_of([] { star_params(1); }) == Errc::BadParams);
}

TEST_CASE("heisenberg_h examples") {
    HeisenbergParams zero{{0.0}, {0.0, 0.0}, {0.0, 0.0}};
    CHECK(max_abs(heisenberg_h(zero).mat() - oracle::pauli("ZZ")) <= 1e-15);

    Rng rng(1, 0);
    for (int n = 2; n <= 5; ++n) {
        const Op h = heisenberg_h(random_params(n, rng));
        CHECK(h.hermiticity_residual() <= 1e-12);
        CHECK(std::abs(h.trace()) <= 1e-12);
    }

    const HeisenbergParams s4 = star_params(4);
    std::vector<CMat> a, b;
    heisenberg_terms(s4, a, b);
    CMat ref = CMat::Zero(16, 16);
    for (const auto &t : a) ref += t;
    for (const auto &t : b) ref += t;
    CHECK(max_abs(heisenberg_h(s4).mat() - ref) <= 1e-14);

    HeisenbergParams bad{{0.1, 0.2}, {0.0, 0.0}, {0.0, 0.0}};
    CHECK(code_of([&] { heisenberg_h(bad); }) == Errc::BadParams);
}

TEST_CASE("flatten and unflatten round trip") {
    Rng rng(2, 0);
    const HeisenbergParams hp = random_params(5, rng);
    const auto flat = hp.flatten();
    CHECK(flat.size() == HeisenbergParams::flat_size(5));
    const HeisenbergParams back = HeisenbergParams::unflatten(5, flat);
    CHECK(back.p == hp.p);
    CHECK(back.q == hp.q);
    CHECK(back.r == hp.r);
    CHECK(code_of([&] { HeisenbergParams::unflatten(4, flat); }) == Errc::BadParams);
}

TEST_CASE("A and B parts each consist of commuting terms") {
    Rng rng(3, 0);
    const HeisenbergParams hp = random_params(4, rng);
    std::vector<CMat> a, b;
    heisenberg_terms(hp, a, b);
    for (const auto *group : {&a, &b}) {
        for (std::size_t i = 0; i < group->size(); ++i) {
            for (std::size_t j = 0; j < group->size(); ++j) {
                const CMat &x = (*group)[i];
                const CMat &y = (*group)[j];
                CHECK(max_abs(x * y - y * x) <= 1e-12);
            }
        }
    }
    // The diagonal helpers reproduce the A part and, after Hadamards, the B part.
    CMat ha = CMat::Zero(16, 16);
    for (const auto &t : a) ha += t;
    CHECK(max_abs(CMat(heisenberg_diag_a(hp).asDiagonal()) - ha) <= 1e-14);
    CMat hb = CMat::Zero(16, 16);
    for (const auto &t : b) hb += t;
    CMat h4 = oracle::kron2(oracle::kron2(gates::hadamard(), gates::hadamard()),
                            oracle::kron2(gates::hadamard(), gates::hadamard()));
    CHECK(max_abs(h4 * CMat(heisenberg_diag_b(hp).asDiagonal()) * h4 - hb) <= 1e-14);
}

TEST_CASE("exact_evolution examples and group property") {
    Rng rng(4, 0);
    const Op h = heisenberg_h(random_params(3, rng));
    CHECK(max_abs(exact_evolution(h, 0.0).mat() - CMat::Identity(8, 8)) <= 1e-12);
    const double phi = 0.37;
    const Op ez = exact_evolution(Op(1, gates::pauli_z()), phi);
    CHECK(std::abs(ez.mat()(0, 0) - std::polar(1.0, -phi)) <= 1e-14);
    CHECK(std::abs(ez.mat()(1, 1) - std::polar(1.0, phi)) <= 1e-14);
    CHECK(std::abs(ez.mat()(0, 1)) <= 1e-14);
    const Op e1 = exact_evolution(h, 0.3);
    const Op e2 = exact_evolution(h, 0.45);
    CHECK(max_abs((e1 * e2).mat() - exact_evolution(h, 0.75).mat()) <= 1e-10);
    CHECK(e1.unitarity_residual() <= 1e-10);
    CHECK(code_of([] { exact_evolution(Op(1, gates::pauli_x() * cplx(0, 1)), 1.0); }) == Errc::NotHermitian);
}

TEST_CASE("trotter_ansatz examples") {
    Rng rng(5, 0);
    const HeisenbergParams hp = random_params(4, rng);
    CHECK(max_abs(trotter_ansatz(hp, 3, 0.0).mat() - CMat::Identity(16, 16)) <= 1e-14);

    HeisenbergParams commuting = hp;
    std::fill(commuting.p.begin(), commuting.p.end(), 0.0);
    std::fill(commuting.q.begin(), commuting.q.end(), 0.0);
    const Op exact = exact_evolution(heisenberg_h(commuting), 0.8);
    CHECK(max_abs(trotter_ansatz(commuting, 1, 0.8).mat() - exact.mat()) <= 1e-10);
    CHECK(max_abs(trotter_ansatz(commuting, 4, 0.8).mat() - exact.mat()) <= 1e-10);

    for (int layers : {1, 2, 5}) {
        for (double t : {0.1, 1.0, 3.0}) {
            CHECK(trotter_ansatz(hp, layers, t).unitarity_residual() <= 1e-10);
        }
    }
    CHECK(code_of([&] { trotter_ansatz(hp, 0, 0.1); }) == Errc::BadParams);
}

TEST_CASE("trotter_ansatz agrees with a dense product of exponentials") {
    Rng rng(6, 0);
    const HeisenbergParams hp = random_params(3, rng);
    std::vector<CMat> a, b;
    heisenberg_terms(hp, a, b);
    CMat ha = CMat::Zero(8, 8), hb = CMat::Zero(8, 8);
    for (const auto &t : a) ha += t;
    for (const auto &t : b) hb += t;
    const double t = 0.7;
    const int layers = 3;
    const double dt = t / layers;
    const CMat step = exact_evolution(Op(3, ha), dt / 2).mat() * exact_evolution(Op(3, hb), dt).mat() *
                      exact_evolution(Op(3, ha), dt / 2).mat();
    CMat ref = CMat::Identity(8, 8);
    for (int l = 0; l < layers; ++l) ref = step * ref;
    CHECK(max_abs(trotter_ansatz(hp, layers, t).mat() - ref) <= 1e-12);
}

TEST_CASE("second-order Trotter error slope at n=4") {
    const HeisenbergParams s4 = star_params(4);
    const Op h = heisenberg_h(s4);
    for (double t : {0.1, 0.5}) {
        const Op exact = exact_evolution(h, t);
        std::vector<double> ls, errs;
        for (int layers : {1, 2, 4, 8}) {
            ls.push_back(layers);
            errs.push_back(max_abs(trotter_ansatz(s4, layers, t).mat() - exact.mat()));
        }
        CAPTURE(t);
        const double s = slope(ls, errs);
        CHECK(s >= -2.3);
        CHECK(s <= -1.7);
    }
}

TEST_CASE("fast scrambler examples") {
    const double g = 0.9;
    const CVec diag = scrambler_phase_diagonal(2, g);
    const double phase = g / (2.0 * std::sqrt(2.0));
    CHECK(std::abs(diag(0) - std::polar(1.0, -phase)) <= 1e-15);
    CHECK(std::abs(diag(3) - std::polar(1.0, -phase)) <= 1e-15);
    CHECK(std::abs(diag(1) - std::polar(1.0, phase)) <= 1e-15);
    CHECK(std::abs(diag(2) - std::polar(1.0, phase)) <= 1e-15);

    Rng rng(7, 0);
    for (int n = 2; n <= 5; ++n) {
        const auto [u, spec] = fast_scrambler_target(n, 3, 1.0, rng);
        CHECK(u.unitarity_residual() <= 1e-10);
        CHECK(spec.target_angles.size() == spec.angle_count());
        CHECK(hst_cost(u, scrambler_ansatz(spec, spec.target_angles)) <= 1e-9);
    }

    const auto [u0, spec0] = fast_scrambler_target(3, 2, 0.0, rng);
    CHECK(product_haar_risk_exact(u0, scrambler_ansatz(spec0, spec0.target_angles)) <= 1e-9);

    ScramblerSpec free_spec{3, 2, 0.0, {}};
    const std::vector<double> zeros(free_spec.angle_count(), 0.0);
    CHECK(max_abs(scrambler_ansatz(free_spec, zeros).mat() - CMat::Identity(8, 8)) <= 1e-15);

    std::vector<double> alpha(spec0.angle_count());
    for (auto &x : alpha) x = rng.uniform(-3, 3);
    CHECK(scrambler_ansatz(spec0, alpha).unitarity_residual() <= 1e-10);
    alpha.pop_back();
    CHECK(code_of([&] { scrambler_ansatz(spec0, alpha); }) == Errc::ShapeMismatch);
    CHECK(code_of([&] { fast_scrambler_target(1, 1, 1.0, rng); }) == Errc::BadParams);
}

TEST_CASE("scrambler step ordering matches a dense product") {
    Rng rng(8, 0);
    const int n = 3;
    const auto [u, spec] = fast_scrambler_target(n, 2, 1.3, rng);
    const CMat zz = scrambler_phase_diagonal(n, 1.3).asDiagonal();
    CMat ref = CMat::Identity(8, 8);
    for (int j = 0; j < spec.steps; ++j) {
        CMat layer = CMat::Identity(1, 1);
        for (int k = 0; k < n; ++k) {
            const std::size_t base = static_cast<std::size_t>((j * n + k) * 3);
            const CMat g = gates::zxz(spec.target_angles[base], spec.target_angles[base + 1],
                                      spec.target_angles[base + 2]);
            layer = oracle::kron2(g, layer);
        }
        ref = ref * layer * zz;
    }
    CHECK(max_abs(scrambler_ansatz(spec, spec.target_angles).mat() - ref) <= 1e-12);
}

TEST_CASE("zxz_decompose round trip on Haar gates") {
    Rng rng(9, 0);
    for (int i = 0; i < 500; ++i) {
        const Mat2 u = haar_unitary(2, rng).mat();
        const ZxzAngles z = zxz_decompose(u);
        const Mat2 rebuilt = std::polar(1.0, z.phase) * gates::zxz(z.b1, z.b2, z.b3);
        CHECK(max_abs(rebuilt - u) <= 1e-10);
    }
    const ZxzAngles diag = zxz_decompose(gates::pauli_z());
    CHECK(max_abs(std::polar(1.0, diag.phase) * gates::zxz(diag.b1, diag.b2, diag.b3) - gates::pauli_z()) <= 1e-12);
    const ZxzAngles anti = zxz_decompose(gates::pauli_x());
    CHECK(max_abs(std::polar(1.0, anti.phase) * gates::zxz(anti.b1, anti.b2, anti.b3) - gates::pauli_x()) <= 1e-12);
}

TEST_CASE("fast scrambler entangles half chains at n=6, t=2") {
    Rng rng(10, 0);
    double total = 0;
    const int draws = 100;
    for (int i = 0; i < draws; ++i) {
        const auto [u, spec] = fast_scrambler_target(6, 2, 1.0, rng);
        const StateVec psi = u.apply(StateVec::basis(6, 0));
        total += entropy_bits(reduced_density(psi, 0b000111));
    }
    CHECK(total / draws > 0.5);
}

TEST_CASE("hardware-efficient ansatz examples") {
    CHECK(hea_blocks_per_layer(2) == 1);
    CHECK(hea_blocks_per_layer(3) == 2);
    CHECK(hea_blocks_per_layer(6) == 5);

    Rng rng(11, 0);
    for (int n = 2; n <= 5; ++n) {
        for (int layers = 1; layers <= 3; ++layers) {
            HeaParams hp{n, layers, {}, 0.0};
            hp.theta.resize(hp.expected_size());
            for (auto &x : hp.theta) x = rng.uniform(-10, 10);
            CHECK(max_abs(hea_unitary(hp).mat() - CMat::Identity(1 << n, 1 << n)) == 0.0);
            hp.scale = rng.uniform();
            CHECK(hea_unitary(hp).unitarity_residual() <= 1e-10);

            HeaParams shifted = hp;
            shifted.scale = hp.scale + 1e-6;
            CHECK(max_abs(hea_unitary(hp).mat() - hea_unitary(shifted).mat()) <= 1e-3);
        }
    }
    HeaParams wrong{3, 1, std::vector<double>(20, 0.0), 1.0};
    CHECK(code_of([&] { hea_unitary(wrong); }) == Errc::ShapeMismatch);
}

TEST_CASE("deep random HEA circuits reach near-maximal risk") {
    Rng rng(12, 0);
    double acc = 0;
    const int draws = 20;
    for (int i = 0; i < draws; ++i) {
        HeaParams hp{5, 3, {}, 1.0};
        hp.theta.resize(hp.expected_size());
        for (auto &x : hp.theta) x = rng.normal() * 2.0 * std::numbers::pi;
        acc += haar_risk(Op::identity(5), hea_unitary(hp));
    }
    // Haar-random W gives R_Haar = (d/(d+1))(1 - 1/d) ~ 0.94 at d = 32.
    CHECK(acc / draws > 0.85);
}
