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

#include "oodl/risks.hpp"

#include <bit>
#include <cmath>

namespace oodl {

namespace {

void check_pair(const Op &u, const Op &v) {
    if (u.n() != v.n()) {
        throw Error(Errc::DimMismatch, "operators act on different register sizes");
    }
}

// Clamp round-off so reported risks stay inside [0, 1].
double clamp01(double x) {
    if (x < 0 && x > -1e-12) {
        return 0.0;
    }
    if (x > 1 && x < 1 + 1e-12) {
        return 1.0;
    }
    return x;
}

}  // namespace

double training_cost(const TrainSet &data, std::span<const StateVec> predicted) {
    if (data.size() == 0) {
        throw Error(Errc::EmptyData, "training set is empty");
    }
    if (predicted.size() != data.size()) {
        throw Error(Errc::ShapeMismatch, "prediction count differs from training set size");
    }
    double fid = 0;
    for (std::size_t j = 0; j < data.size(); ++j) {
        fid += fidelity(data.pairs()[j].output, predicted[j]);
    }
    return clamp01(1.0 - fid / static_cast<double>(data.size()));
}

double training_cost(const TrainSet &data, const Op &v) {
    if (data.size() == 0) {
        throw Error(Errc::EmptyData, "training set is empty");
    }
    if (v.n() != data.n()) {
        throw Error(Errc::DimMismatch, "hypothesis and training data register sizes differ");
    }
    double fid = 0;
    for (const auto &p : data.pairs()) {
        fid += std::norm(p.output.amps().dot(v.mat() * p.input.state.amps()));
    }
    return clamp01(1.0 - fid / static_cast<double>(data.size()));
}

double local_training_cost(const TrainSet &data, const Op &v) {
    if (data.size() == 0) {
        throw Error(Errc::EmptyData, "training set is empty");
    }
    if (v.n() != data.n()) {
        throw Error(Errc::DimMismatch, "hypothesis and training data register sizes differ");
    }
    const int n = data.n();
    double acc = 0;
    for (const auto &p : data.pairs()) {
        if (!p.input.is_product()) {
            throw Error(Errc::NotProduct, "local cost needs product-structured inputs");
        }
        const StateVec phi(n, v.mat().adjoint() * p.output.amps());
        for (int i = 0; i < n; ++i) {
            const CMat rho = reduced_density(phi, QubitMask{1} << i);
            const Eigen::Vector2cd &f = p.input.factors[static_cast<std::size_t>(i)];
            acc += std::real(f.dot(rho * f));
        }
    }
    return clamp01(1.0 - acc / (static_cast<double>(n) * static_cast<double>(data.size())));
}

double hst_cost(const Op &u, const Op &v) {
    check_pair(u, v);
    const double d = static_cast<double>(u.dim());
    // Tr(u^dagger v) = sum_ij conj(u_ij) v_ij
    const cplx tr = (u.mat().conjugate().cwiseProduct(v.mat())).sum();
    return clamp01(1.0 - std::norm(tr) / (d * d));
}

double haar_risk(const Op &u, const Op &v) {
    const double d = static_cast<double>(u.dim());
    return d / (d + 1.0) * hst_cost(u, v);
}

double subset_frobenius_sum(const Op &w) {
    const int n = w.n();
    if (n > kMaxExactRiskQubits) {
        throw Error(Errc::TooLarge, "subset formula capped at n = " + std::to_string(kMaxExactRiskQubits));
    }
    double total = 0;
    const QubitMask subsets = QubitMask{1} << n;
    for (QubitMask a = 0; a < subsets; ++a) {
        total += partial_trace_mask(w.mat(), n, a).squaredNorm();
    }
    return total;
}

double product_haar_risk_exact(const Op &u, const Op &v) {
    check_pair(u, v);
    if (u.n() > kMaxExactRiskQubits) {
        throw Error(Errc::TooLarge, "subset formula capped at n = " + std::to_string(kMaxExactRiskQubits));
    }
    const Op w(u.n(), u.mat().adjoint() * v.mat());
    return clamp01(1.0 - subset_frobenius_sum(w) / std::pow(6.0, u.n()));
}

std::optional<double> exact_risk(const Op &u, const Op &v, const EnsembleSpec &spec) {
    check_pair(u, v);
    if (spec.n != u.n()) {
        throw Error(Errc::DimMismatch, "ensemble and operator register sizes differ");
    }
    switch (spec.kind) {
        case EnsembleKind::HaarGlobal:
            return haar_risk(u, v);
        case EnsembleKind::HaarProd1:
        case EnsembleKind::StabProd1:
            if (u.n() <= kMaxExactRiskQubits) {
                return product_haar_risk_exact(u, v);
            }
            return std::nullopt;
        case EnsembleKind::HaarBlocks:
            if (spec.locality == 1 && u.n() <= kMaxExactRiskQubits) {
                return product_haar_risk_exact(u, v);
            }
            if (spec.locality == spec.n) {
                return haar_risk(u, v);
            }
            return std::nullopt;
        case EnsembleKind::CompBasis:
        case EnsembleKind::XBasis: {
            const CMat w = u.mat().adjoint() * v.mat();
            double fid = 0;
            const auto support = enumerate_basis(spec);
            for (const auto &s : support) {
                fid += std::norm(s.state.amps().dot(w * s.state.amps()));
            }
            return clamp01(1.0 - fid / static_cast<double>(support.size()));
        }
        case EnsembleKind::RandCirc:
            return std::nullopt;
    }
    return std::nullopt;
}

RiskReport risk_monte_carlo(const Op &u, const Op &v, const EnsembleSpec &spec, std::size_t samples, Rng &rng) {
    check_pair(u, v);
    if (samples < 1) {
        throw Error(Errc::EmptyData, "Monte-Carlo risk needs at least one sample");
    }
    if (spec.n != u.n()) {
        throw Error(Errc::DimMismatch, "ensemble and operator register sizes differ");
    }
    const CMat w = u.mat().adjoint() * v.mat();
    // Welford accumulation of the per-draw infidelity.
    double mean = 0;
    double m2 = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        const StateVec psi = sample_state(spec, rng);
        const double x = 1.0 - std::norm(psi.amps().dot(w * psi.amps()));
        const double delta = x - mean;
        mean += delta / static_cast<double>(k + 1);
        m2 += delta * (x - mean);
    }
    RiskReport rep;
    rep.value = clamp01(mean);
    rep.method = RiskMethod::MonteCarlo;
    const double var = samples > 1 ? m2 / static_cast<double>(samples - 1) : 0.0;
    rep.stderr_ = std::sqrt(std::max(var, 0.0) / static_cast<double>(samples));
    rep.ensemble = spec;
    rep.samples = samples;
    return rep;
}

RiskReport risk(const Op &u, const Op &v, const EnsembleSpec &spec, std::size_t mc_samples, Rng &rng) {
    if (auto exact = exact_risk(u, v, spec)) {
        RiskReport rep;
        rep.value = *exact;
        rep.method = RiskMethod::Exact;
        rep.ensemble = spec;
        return rep;
    }
    return risk_monte_carlo(u, v, spec, mc_samples, rng);
}

double pauli_overlap_sq(const CMat &a, const CMat &b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw Error(Errc::DimMismatch, "pauli_overlap_sq needs equal square matrices");
    }
    const int n = qubits_for_dim(static_cast<std::size_t>(a.rows()));
    if (n > kMaxPauliQubits) {
        throw Error(Errc::TooLarge, "Pauli sum capped at n = " + std::to_string(kMaxPauliQubits));
    }
    const CMat c = a.adjoint() * b;
    const std::size_t d = dim_of(n);
    const std::uint64_t count = std::uint64_t{1} << (2 * n);
    cplx total = 0;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        const PauliString p = PauliString::from_index(n, idx);
        const QubitMask flip = p.flip_mask();
        const QubitMask pm = p.phase_mask();
        // (P C P)_ij = g^2 (-1)^{|(i^f)&pm| + |j&pm|} C_{i^f, j^f}, g^2 = (-1)^{#Y}
        const double g2 = (p.y_count() % 2) ? -1.0 : 1.0;
        cplx acc = 0;
        for (std::size_t j = 0; j < d; ++j) {
            const double sj = (std::popcount(j & pm) & 1) ? -1.0 : 1.0;
            for (std::size_t i = 0; i < d; ++i) {
                const double si = (std::popcount((i ^ flip) & pm) & 1) ? -1.0 : 1.0;
                acc += si * sj * c(static_cast<Eigen::Index>(i ^ flip), static_cast<Eigen::Index>(j ^ flip)) *
                       std::conj(c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
            }
        }
        total += g2 * acc;
    }
    return std::real(total) / static_cast<double>(d);
}

OverlapTerms overlap_bound_terms(const Op &w, const PauliString &p, const StateVec &s) {
    if (w.n() != p.n() || s.n() != p.n()) {
        throw Error(Errc::DimMismatch, "overlap terms need matching register sizes");
    }
    const CMat pm = pauli_matrix(p).mat();
    const CVec ws = w.mat() * s.amps();
    const double sps = std::real(s.amps().dot(pm * s.amps()));
    const double wpw = std::real(ws.dot(pm * ws));
    const double sws = std::norm(s.amps().dot(ws));
    return OverlapTerms{1.0 - sps * wpw, 2.0 * (1.0 - sws)};
}

BoundReport check_bounds(const Op &u, const Op &v, const EnsembleSpec &spec_p, const EnsembleSpec &spec_q, Rng &rng,
                         const BoundOptions &opts) {
    check_pair(u, v);
    if (opts.require_scrambled && (!spec_p.locally_scrambled() || !spec_q.locally_scrambled())) {
        throw Error(Errc::NotLocallyScrambled,
                    "bounds hold only for locally scrambled ensembles (" + spec_p.name() + ", " + spec_q.name() + ")");
    }
    BoundReport rep;
    rep.n = u.n();
    Rng rng_p = rng.split(1);
    Rng rng_q = rng.split(2);
    rep.r_p = risk(u, v, spec_p, opts.mc_samples, rng_p);
    rep.r_q = risk(u, v, spec_q, opts.mc_samples, rng_q);
    rep.hst = hst_cost(u, v);
    rep.r_haar = haar_risk(u, v);

    const double d = static_cast<double>(u.dim());
    const double c = d / (d + 1.0);
    const double sp = rep.r_p.stderr_;
    const double sq = rep.r_q.stderr_;
    const double rq = rep.r_q.value;
    const double rp = rep.r_p.value;

    rep.lemma_lower = 0.5 * rep.r_haar <= c * rq + kBoundSigmas * c * sq + kBoundAbsSlack;
    rep.lemma_upper = c * rq <= rep.r_haar + kBoundSigmas * c * sq + kBoundAbsSlack;
    rep.theorem_lower = 0.5 * rq <= rp + kBoundSigmas * (sp + 0.5 * sq) + kBoundAbsSlack;
    rep.theorem_upper = rp <= 2.0 * rq + kBoundSigmas * (sp + 2.0 * sq) + kBoundAbsSlack;
    return rep;
}

}  // namespace oodl
