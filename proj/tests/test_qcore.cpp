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

#include "doctest.h"
#include "oodl/qcore.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace oodl;

namespace {

double max_abs(const CMat &m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("Rng is deterministic per (seed, stream) and streams differ") {
    Rng a(7, 0), b(7, 0), c(7, 1);
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        CHECK(x != c.next_u64());
    }
    Rng p(3, 0);
    Rng s1 = p.split(5), s2 = p.split(5), s3 = p.split(6);
    CHECK(s1.next_u64() == s2.next_u64());
    CHECK(s1.next_u64() != s3.next_u64());
    CHECK(p.counter() == 0);
}

TEST_CASE("Rng uniform and normal moments") {
    Rng rng(11, 0);
    std::vector<double> u, g;
    for (int i = 0; i < 200000; ++i) {
        u.push_back(rng.uniform());
        g.push_back(rng.normal());
    }
    const auto mu = oracle::mean_stderr(u);
    CHECK(std::abs(mu.mean - 0.5) < 4 * mu.stderr_);
    const auto mg = oracle::mean_stderr(g);
    CHECK(std::abs(mg.mean) < 4 * mg.stderr_);
    double var = 0;
    for (double x : g) var += x * x;
    var /= static_cast<double>(g.size());
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("haar_unitary is unitary, deterministic, rejects bad dims") {
    Rng rng(1, 0);
    for (std::size_t d : {2u, 4u, 8u, 16u}) {
        const Op u = haar_unitary(d, rng);
        CHECK(u.unitarity_residual() <= 1e-10);
    }
    Rng r1(7, 0), r2(7, 0);
    const Op a = haar_unitary(4, r1);
    const Op b = haar_unitary(4, r2);
    CHECK((a.mat() - b.mat()).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(haar_unitary(3, rng), Error);
    try {
        haar_unitary(6, rng);
    } catch (const Error &e) {
        CHECK(e.code() == Errc::InvalidDimension);
    }
}

TEST_CASE("haar first moment E|U00|^2 = 1/d at d=2") {
    Rng rng(2024, 0);
    std::vector<double> xs;
    for (int i = 0; i < 100000; ++i) {
        xs.push_back(std::norm(haar_unitary(2, rng).mat()(0, 0)));
    }
    const auto ms = oracle::mean_stderr(xs);
    CHECK(std::abs(ms.mean - 0.5) <= 3 * ms.stderr_);
}

TEST_CASE("haar left invariance: |<0|F U|0>|^2 matches |<0|U|0>|^2 (KS at 0.01)") {
    Rng rng(99, 0);
    Rng frng(5, 0);
    const Op f = haar_unitary(4, frng);
    std::vector<double> plain, rotated;
    for (int i = 0; i < 10000; ++i) {
        plain.push_back(std::norm(haar_unitary(4, rng).mat()(0, 0)));
        rotated.push_back(std::norm((f.mat() * haar_unitary(4, rng).mat())(0, 0)));
    }
    CHECK(oracle::ks_statistic(plain, rotated) < oracle::ks_critical_01(plain.size(), rotated.size()));
}

TEST_CASE("kron basics and little-endian placement") {
    const Op i1 = Op::identity(1);
    CHECK(max_abs(kron(i1, i1).mat() - CMat::Identity(4, 4)) == 0.0);

    const Op z(1, gates::pauli_z());
    const CMat zz = kron(z, z).mat();
    CHECK(zz(0, 0).real() == 1);
    CHECK(zz(1, 1).real() == -1);
    CHECK(zz(2, 2).real() == -1);
    CHECK(zz(3, 3).real() == 1);

    // X as the right (low-order) factor acts on qubit 0: |00> -> |01>, i.e.
    // basis index 1.
    const Op x(1, gates::pauli_x());
    const StateVec out = kron(i1, x).apply(StateVec::basis(2, 0));
    CHECK(std::abs(out.amps()(1) - cplx(1, 0)) < 1e-15);
    CHECK(max_abs(embed_1q(gates::pauli_x(), 0, 2).mat() - kron(i1, x).mat()) == 0.0);
    CHECK(max_abs(embed_1q(gates::pauli_x(), 1, 2).mat() - kron(x, i1).mat()) == 0.0);
}

TEST_CASE("kron associativity on random triples") {
    Rng rng(3, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const Op a(1, oracle::random_complex(2, rng));
        const Op b(2, oracle::random_complex(4, rng));
        const Op c(1, oracle::random_complex(2, rng));
        CHECK(max_abs(kron(kron(a, b), c).mat() - kron(a, kron(b, c)).mat()) <= 1e-14 * 64);
    }
}

TEST_CASE("kron refuses to exceed the qubit cap") {
    const Op big = Op::identity(7);
    try {
        kron(big, Op::identity(6));
        FAIL("expected TooLarge");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::TooLarge);
    }
}

TEST_CASE("partial_trace examples") {
    const std::vector<int> keep0{0};
    const Op pt = partial_trace(Op::identity(2), keep0);
    CHECK(max_abs(pt.mat() - 2.0 * CMat::Identity(2, 2)) == 0.0);

    const Op z(1, gates::pauli_z());
    CHECK(max_abs(partial_trace(kron(z, z), keep0).mat()) == 0.0);

    const std::vector<int> bad{2};
    try {
        partial_trace(Op::identity(2), bad);
        FAIL("expected BadSubset");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::BadSubset);
    }
}

TEST_CASE("partial_trace matches the basis-sandwich oracle and preserves trace") {
    Rng rng(17, 0);
    const CMat w = oracle::random_complex(8, rng);
    const Op wop(3, w);
    for (QubitMask mask = 0; mask < 8; ++mask) {
        std::vector<int> keep;
        for (int q = 0; q < 3; ++q) {
            if ((mask >> q) & 1U) keep.push_back(q);
        }
        const Op got = partial_trace(wop, keep);
        CHECK(std::abs(got.trace() - wop.trace()) <= 1e-12);
        CHECK(max_abs(got.mat() - oracle::partial_trace(w, 3, keep)) <= 1e-12);
    }
    const std::vector<int> all{0, 1, 2};
    CHECK(max_abs(partial_trace(wop, all).mat() - w) == 0.0);
    const Op none = partial_trace(wop, std::vector<int>{});
    CHECK(none.dim() == 1);
    CHECK(std::abs(none.mat()(0, 0) - w.trace()) <= 1e-12);
}

TEST_CASE("fidelity examples") {
    const StateVec zero = StateVec::basis(1, 0);
    const StateVec one = StateVec::basis(1, 1);
    CHECK(fidelity(zero, zero) == doctest::Approx(1.0));
    CHECK(fidelity(zero, one) == 0.0);
    // e^{-i phi Z}|+> at phi = pi/4 has |<0|.>|^2 = 1/2.
    const double phi = std::numbers::pi / 4;
    CVec v(2);
    v << std::polar(1.0, -phi) / std::sqrt(2.0), std::polar(1.0, phi) / std::sqrt(2.0);
    CHECK(fidelity(zero, StateVec(1, v)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(fidelity(zero, StateVec::basis(2, 0)), Error);
}

TEST_CASE("pauli_matrix examples against explicit Kronecker construction") {
    CHECK(max_abs(pauli_matrix(PauliString("I")).mat() - CMat::Identity(2, 2)) == 0.0);
    const Op zz = pauli_matrix(PauliString("ZZ"));
    CHECK(std::abs(zz.trace()) == 0.0);
    CHECK(max_abs(zz.mat() * zz.mat() - CMat::Identity(4, 4)) == 0.0);
    const Op xy = pauli_matrix(PauliString("XY"));
    CHECK(max_abs(xy.mat() - oracle::pauli("XY")) <= 1e-15);
    CHECK(xy.hermiticity_residual() <= 1e-15);
    for (const auto &s : oracle::all_paulis(3)) {
        const Op p = pauli_matrix(PauliString(s));
        CHECK(max_abs(p.mat() - oracle::pauli(s)) == 0.0);
        CHECK(p.unitarity_residual() <= 1e-15);
        if (s != "III") CHECK(std::abs(p.trace()) == 0.0);
    }
}

TEST_CASE("gate helpers agree with dense embeddings") {
    Rng rng(8, 0);
    const Op g = haar_unitary(4, rng);
    CMat m = CMat::Identity(8, 8);
    apply_2q(m, 0, 2, g.mat());
    // Reference: permute so qubits (0, 2) are the low pair, apply, permute back.
    CMat ref = CMat::Zero(8, 8);
    for (int col = 0; col < 8; ++col) {
        for (int row = 0; row < 8; ++row) {
            if (((row ^ col) & 0b010) != 0) continue;
            const int lr = (row & 1) | (((row >> 2) & 1) << 1);
            const int lc = (col & 1) | (((col >> 2) & 1) << 1);
            ref(row, col) = g.mat()(lr, lc);
        }
    }
    CHECK(max_abs(m - ref) <= 1e-14);

    CMat h = CMat::Identity(4, 4);
    apply_hadamard_all(h, 2);
    CHECK(max_abs(h - oracle::kron2(gates::hadamard(), gates::hadamard())) <= 1e-15);

    CMat c = CMat::Identity(4, 4);
    apply_cnot(c, 0, 1);
    CMat cref = CMat::Zero(4, 4);
    cref(0, 0) = 1;
    cref(3, 1) = 1;
    cref(2, 2) = 1;
    cref(1, 3) = 1;
    CHECK(max_abs(c - cref) == 0.0);

    const std::vector<int> qs{2, 0};
    CMat k = CMat::Identity(8, 8);
    apply_kq(k, qs, g.mat());
    // qubit list {2, 0}: local bit 0 is qubit 2, local bit 1 is qubit 0.
    CMat kref = CMat::Zero(8, 8);
    for (int col = 0; col < 8; ++col) {
        for (int row = 0; row < 8; ++row) {
            if (((row ^ col) & 0b010) != 0) continue;
            const int lr = ((row >> 2) & 1) | ((row & 1) << 1);
            const int lc = ((col >> 2) & 1) | ((col & 1) << 1);
            kref(row, col) = g.mat()(lr, lc);
        }
    }
    CHECK(max_abs(k - kref) <= 1e-14);
}

TEST_CASE("zxz gate is identity at zero and unitary") {
    CHECK(max_abs(gates::zxz(0, 0, 0) - Mat2::Identity()) == 0.0);
    const Mat2 g = gates::zxz(0.3, -1.2, 2.2);
    CHECK(max_abs(g.adjoint() * g - Mat2::Identity()) <= 1e-15);
}

TEST_CASE("StateVec and Op validate shape and norm") {
    CVec v(3);
    v << 1, 0, 0;
    CHECK_THROWS_AS(StateVec(2, v), Error);
    CVec w(2);
    w << 1, 1;
    CHECK_THROWS_AS(StateVec(1, w), Error);
    CHECK_THROWS_AS(Op(1, CMat::Identity(4, 4)), Error);
    CHECK_THROWS_AS(Op::identity(13), Error);
}
