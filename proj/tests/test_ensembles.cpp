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
#include <map>

#include "doctest.h"
#include "oodl/ensembles.hpp"
#include "oodl/risks.hpp"
#include "oracles.hpp"

using namespace oodl;

namespace {

/// Squared singular values of psi reshaped across the cut {0..k-1} | {k..n-1}.
Eigen::VectorXd schmidt_weights(const StateVec &psi, int k) {
    const int da = 1 << k;
    const int db = static_cast<int>(psi.dim()) / da;
    CMat m(da, db);
    for (int b = 0; b < db; ++b) {
        for (int a = 0; a < da; ++a) {
            m(a, b) = psi.amps()(a + da * b);
        }
    }
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues().array().square();
}

oracle::MeanStd overlap_stats(const EnsembleSpec &spec, const CMat &w, const CMat *pre, int draws, Rng &rng) {
    std::vector<double> xs;
    xs.reserve(draws);
    for (int i = 0; i < draws; ++i) {
        CVec psi = sample_state(spec, rng).amps();
        if (pre != nullptr) {
            psi = (*pre) * psi;
        }
        xs.push_back(std::norm(psi.dot(w * psi)));
    }
    return oracle::mean_stderr(xs);
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

}  // namespace

TEST_CASE("spec validation and name round trip") {
    CHECK(code_of([] { EnsembleSpec::haar_blocks(3, 2).validate(); }) == Errc::BadSpec);
    CHECK(code_of([] { EnsembleSpec::rand_circ(2, 1, 3).validate(); }) == Errc::BadSpec);
    CHECK(code_of([] { EnsembleSpec::rand_circ(2, 0, 2).validate(); }) == Errc::BadSpec);
    CHECK(code_of([] { EnsembleSpec::haar_prod(0).validate(); }) == Errc::BadSpec);
    CHECK(code_of([] { EnsembleSpec::parse("Nope", 2); }) == Errc::BadSpec);

    const std::vector<EnsembleSpec> specs{
        EnsembleSpec::haar_prod(4), EnsembleSpec::stab_prod(4),    EnsembleSpec::haar_blocks(4, 2),
        EnsembleSpec::haar_global(4), EnsembleSpec::rand_circ(4, 3, 2), EnsembleSpec::comp_basis(4),
        EnsembleSpec::x_basis(4)};
    for (const auto &s : specs) {
        CHECK(EnsembleSpec::parse(s.name(), 4) == s);
    }
    CHECK(EnsembleSpec::haar_blocks(4, 2).name() == "HaarBlocks(2)");
    CHECK(EnsembleSpec::rand_circ(4, 3, 2).name() == "RandCirc(3,2)");
    CHECK_FALSE(EnsembleSpec::comp_basis(2).locally_scrambled());
    CHECK_FALSE(EnsembleSpec::x_basis(2).locally_scrambled());
    CHECK(EnsembleSpec::rand_circ(2, 1, 1).locally_scrambled());
}

TEST_CASE("every sampler yields unit-norm states of the right size") {
    Rng rng(4, 0);
    const std::vector<EnsembleSpec> specs{
        EnsembleSpec::haar_prod(3), EnsembleSpec::stab_prod(3),    EnsembleSpec::haar_blocks(4, 2),
        EnsembleSpec::haar_global(3), EnsembleSpec::rand_circ(5, 3, 2), EnsembleSpec::rand_circ(5, 2, 3),
        EnsembleSpec::comp_basis(3), EnsembleSpec::x_basis(3)};
    for (const auto &s : specs) {
        for (int i = 0; i < 20; ++i) {
            const StateVec psi = sample_state(s, rng);
            CHECK(psi.n() == s.n);
            CHECK(std::abs(psi.amps().squaredNorm() - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("StabProd1 n=2 is uniform over the 36 enumerated states (chi-square at 0.01)") {
    const auto all = enumerate_stab_products(2);
    REQUIRE(all.size() == 36);
    Rng rng(12, 0);
    std::vector<int> counts(36, 0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const StateVec s = sample_state(EnsembleSpec::stab_prod(2), rng);
        int hit = -1;
        for (int j = 0; j < 36; ++j) {
            if (std::abs(s.amps().dot(all[j].amps()) - cplx(1, 0)) < 1e-9) {
                hit = j;
                break;
            }
        }
        REQUIRE(hit >= 0);
        ++counts[hit];
    }
    const double expected = draws / 36.0;
    double chi2 = 0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // Upper 1% point of chi-square with 35 degrees of freedom.
    CHECK(chi2 < 57.342);
}

TEST_CASE("HaarProd1 n=3 states have Schmidt rank one across every cut") {
    Rng rng(21, 0);
    for (int i = 0; i < 50; ++i) {
        const InputState in = sample_input(EnsembleSpec::haar_prod(3), rng);
        CHECK(in.is_product());
        CHECK(in.factors.size() == 3);
        for (int k = 1; k < 3; ++k) {
            CHECK(std::abs(schmidt_weights(in.state, k)(0) - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("HaarGlobal n=2 mean single-qubit purity matches (dA + dB)/(dA dB + 1)") {
    // Lubkin's average purity for a 2x2 bipartition is 4/5.
    Rng rng(33, 0);
    std::vector<double> purities;
    for (int i = 0; i < 10000; ++i) {
        const StateVec psi = sample_state(EnsembleSpec::haar_global(2), rng);
        const CMat rho = oracle::partial_trace(psi.amps() * psi.amps().adjoint(), 2, {0});
        purities.push_back((rho * rho).trace().real());
    }
    const auto ms = oracle::mean_stderr(purities);
    CHECK(std::abs(ms.mean - 0.8) <= 3 * ms.stderr_);
}

TEST_CASE("enumerate_stab_products examples") {
    const auto one = enumerate_stab_products(1);
    REQUIRE(one.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            const double f = fidelity(one[i], one[j]);
            if (i == j) {
                CHECK(f == doctest::Approx(1.0));
            } else {
                const bool ok = std::abs(f) < 1e-15 || std::abs(f - 0.5) < 1e-15;
                CHECK(ok);
            }
        }
    }
    const auto two = enumerate_stab_products(2);
    REQUIRE(two.size() == 36);
    CHECK(std::abs(two[0].amps()(0) - cplx(1, 0)) < 1e-15);
    // digit order: index 1 changes qubit 0 to |1>, so the state is |01> = basis 1.
    CHECK(std::abs(two[1].amps()(1) - cplx(1, 0)) < 1e-15);
    const auto three = enumerate_stab_products(3);
    CHECK(three.size() == 216);
    for (const auto &s : three) {
        CHECK(std::abs(s.amps().squaredNorm() - 1.0) <= 1e-14);
    }
    CHECK(code_of([] { enumerate_stab_products(7); }) == Errc::TooLarge);
}

TEST_CASE("make_trainset examples") {
    Rng rng(5, 0);
    const TrainSet id = make_trainset(Op::identity(3), EnsembleSpec::haar_prod(3), 4, rng);
    for (const auto &p : id.pairs()) {
        CHECK((p.output.amps() - p.input.state.amps()).norm() <= 1e-15);
    }
    Rng trng(9, 0);
    const Op u = haar_unitary(16, trng);
    const TrainSet two = make_trainset(u, EnsembleSpec::haar_prod(4), 2, rng);
    CHECK(two.size() == 2);
    CHECK(two.source() == EnsembleSpec::haar_prod(4));

    Rng a(77, 3), b(77, 3);
    const TrainSet ta = make_trainset(u, EnsembleSpec::haar_prod(4), 5, a);
    const TrainSet tb = make_trainset(u, EnsembleSpec::haar_prod(4), 5, b);
    for (std::size_t j = 0; j < 5; ++j) {
        CHECK((ta.pairs()[j].input.state.amps() - tb.pairs()[j].input.state.amps()).cwiseAbs().maxCoeff() == 0.0);
        CHECK((ta.pairs()[j].output.amps() - tb.pairs()[j].output.amps()).cwiseAbs().maxCoeff() == 0.0);
    }
    CHECK(code_of([&] { make_trainset(u, EnsembleSpec::haar_prod(4), 0, rng); }) == Errc::EmptyData);
    CHECK(code_of([&] { make_trainset(u, EnsembleSpec::haar_prod(3), 2, rng); }) == Errc::DimMismatch);

    // Hand-built pairs with a wrong output are rejected.
    std::vector<TrainPair> bad{{product_state({single_qubit_stabilizers()[0]}), StateVec::basis(1, 1)}};
    CHECK(code_of([&] { TrainSet(bad, EnsembleSpec::comp_basis(1), Op::identity(1)); }) == Errc::BadSpec);
}

TEST_CASE("stabilizer mean equals the Haar-product value for n <= 3") {
    Rng rng(6, 0);
    for (int n = 1; n <= 3; ++n) {
        const auto states = enumerate_stab_products(n);
        for (int trial = 0; trial < 5; ++trial) {
            const Op w = haar_unitary(dim_of(n), rng);
            double mean = 0;
            for (const auto &s : states) {
                mean += std::norm(s.amps().dot(w.mat() * s.amps()));
            }
            mean /= static_cast<double>(states.size());
            const double exact = 1.0 - product_haar_risk_exact(Op::identity(n), w);
            CHECK(std::abs(mean - exact) <= 1e-10);
        }
    }
}

TEST_CASE("local scrambling: prepending a fixed product unitary leaves overlap statistics unchanged") {
    Rng rng(101, 0);
    const int n = 3;
    const Op w = haar_unitary(dim_of(n), rng);
    Op pre = Op::identity(0);
    for (int q = 0; q < n; ++q) {
        pre = kron(haar_unitary(2, rng), pre);
    }
    const std::vector<EnsembleSpec> specs{EnsembleSpec::haar_prod(n), EnsembleSpec::haar_global(n),
                                          EnsembleSpec::rand_circ(n, 2, 2), EnsembleSpec::rand_circ(n, 1, 1)};
    for (const auto &s : specs) {
        CAPTURE(s.name());
        Rng r1(500, 1), r2(500, 2);
        const auto plain = overlap_stats(s, w.mat(), nullptr, 20000, r1);
        const auto moved = overlap_stats(s, w.mat(), &pre.mat(), 20000, r2);
        CHECK(std::abs(plain.mean - moved.mean) <= 3 * std::hypot(plain.stderr_, moved.stderr_));
    }
}

TEST_CASE("RandCirc with one layer of 1-local gates reproduces HaarProd1 statistics (KS at 0.01)") {
    Rng wr(8, 8);
    const Op w = haar_unitary(8, wr);
    Rng r1(1, 1), r2(1, 2);
    std::vector<double> a, b;
    for (int i = 0; i < 10000; ++i) {
        const CVec x = sample_state(EnsembleSpec::haar_prod(3), r1).amps();
        const CVec y = sample_state(EnsembleSpec::rand_circ(3, 1, 1), r2).amps();
        a.push_back(std::norm(x.dot(w.mat() * x)));
        b.push_back(std::norm(y.dot(w.mat() * y)));
    }
    CHECK(oracle::ks_statistic(a, b) < oracle::ks_critical_01(a.size(), b.size()));
    Rng r3(2, 2);
    CHECK(sample_input(EnsembleSpec::rand_circ(3, 1, 1), r3).is_product());
}

TEST_CASE("enumerate_basis covers both basis ensembles") {
    const auto comp = enumerate_basis(EnsembleSpec::comp_basis(2));
    REQUIRE(comp.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(comp[i].state.amps()(static_cast<Eigen::Index>(i)) - cplx(1, 0)) < 1e-15);
    }
    const auto xb = enumerate_basis(EnsembleSpec::x_basis(2));
    REQUIRE(xb.size() == 4);
    for (const auto &s : xb) {
        CHECK(s.is_product());
        CHECK((s.state.amps().cwiseAbs().array() - 0.5).abs().maxCoeff() < 1e-15);
    }
    CHECK(code_of([] { enumerate_basis(EnsembleSpec::haar_prod(2)); }) == Errc::BadSpec);
}
