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
 * Cost and risk functionals for unitary learning.
 *
 * Every risk is an average infidelity 1 - E|<Psi| u^dagger v |Psi>|^2 over
 * some input ensemble. For pure states this equals the squared trace
 * distance form, so no singular value decompositions are needed.
 */

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "oodl/ensembles.hpp"
#include "oodl/qcore.hpp"

namespace oodl {

/// Largest register for the subset-sum product-Haar formula.
inline constexpr int kMaxExactRiskQubits = 10;
/// Largest register for the explicit 4^n Pauli sum.
inline constexpr int kMaxPauliQubits = 6;

enum class RiskMethod { Exact, MonteCarlo };

struct RiskReport {
    double value = 0;
    RiskMethod method = RiskMethod::Exact;
    double stderr_ = 0;
    EnsembleSpec ensemble;
    std::size_t samples = 0;
};

// ---- training costs

/// 1 - (1/N) sum_j |<out_j| v |in_j>|^2
double training_cost(const TrainSet &data, const Op &v);
/// Same, with v already applied to every input (predicted[j] = v |in_j>).
double training_cost(const TrainSet &data, std::span<const StateVec> predicted);

/// Per-qubit local cost; inputs must carry product factors.
/// 1 - (1/(nN)) sum_j sum_i <phi_j| (|psi_ij><psi_ij| (x) 1) |phi_j>, with
/// phi_j = v^dagger U |Psi_j>.
double local_training_cost(const TrainSet &data, const Op &v);

// ---- closed forms

/// 1 - |Tr(u^dagger v)|^2 / d^2
double hst_cost(const Op &u, const Op &v);
/// Exact risk over Haar-random n-qubit inputs: d/(d+1) hst_cost(u, v).
double haar_risk(const Op &u, const Op &v);

/// sum over A of ||Tr_{A^c}[w]||_F^2, bit mask A, all 2^n subsets.
double subset_frobenius_sum(const Op &w);
/// Exact risk over tensor products of Haar-random qubits:
/// 1 - 6^{-n} sum_A ||Tr_{A^c}[u^dagger v]||_F^2.
double product_haar_risk_exact(const Op &u, const Op &v);

/// Exact risk for ensembles with a closed form here: HaarGlobal,
/// HaarProd1/StabProd1 (second-moment equal), CompBasis/XBasis
/// (enumerated support). nullopt otherwise.
std::optional<double> exact_risk(const Op &u, const Op &v, const EnsembleSpec &spec);

// ---- sampled

/// Monte-Carlo risk from M draws of spec. stderr_ is the sample standard
/// deviation of the per-draw infidelity over sqrt(M).
RiskReport risk_monte_carlo(const Op &u, const Op &v, const EnsembleSpec &spec, std::size_t samples, Rng &rng);

/// Exact when available, Monte-Carlo otherwise.
RiskReport risk(const Op &u, const Op &v, const EnsembleSpec &spec, std::size_t mc_samples, Rng &rng);

// ---- identities

/// (1/d) sum_P Tr[P a^dagger b P b^dagger a] over all 4^n Pauli strings.
/// Equals |Tr(a^dagger b)|^2 for arbitrary square a, b.
double pauli_overlap_sq(const CMat &a, const CMat &b);

/// Terms of the overlap bound for a unitary w, Pauli p and product
/// stabilizer state s that is an eigenvector of p:
/// middle = 1 - <s|P|s><s|W^dagger P W|s>, upper = 2 (1 - |<s|W|s>|^2).
struct OverlapTerms {
    double middle;
    double upper;
};
OverlapTerms overlap_bound_terms(const Op &w, const PauliString &p, const StateVec &s);

// ---- bound checks

/// Statistical plus absolute slack used by the bound predicates.
inline constexpr double kBoundAbsSlack = 1e-9;
inline constexpr double kBoundSigmas = 3.0;

struct BoundReport {
    int n = 0;
    RiskReport r_p;
    RiskReport r_q;
    double r_haar = 0;
    double hst = 0;
    /// (1/2) R_Haar <= (d/(d+1)) R_Q <= R_Haar
    bool lemma_lower = true;
    bool lemma_upper = true;
    /// (1/2) R_Q <= R_P <= 2 R_Q
    bool theorem_lower = true;
    bool theorem_upper = true;

    bool all_pass() const {
        return lemma_lower && lemma_upper && theorem_lower && theorem_upper;
    }
};

struct BoundOptions {
    std::size_t mc_samples = 20000;
    /// When false, non-scrambled ensembles are evaluated instead of
    /// rejected (their bounds may then legitimately fail).
    bool require_scrambled = true;
};

BoundReport check_bounds(const Op &u, const Op &v, const EnsembleSpec &spec_p, const EnsembleSpec &spec_q, Rng &rng,
                         const BoundOptions &opts = {});

}  // namespace oodl
