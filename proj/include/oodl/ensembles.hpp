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

#include <optional>
#include <string>
#include <vector>

#include "oodl/qcore.hpp"

namespace oodl {

enum class EnsembleKind {
    HaarProd1,   ///< tensor product of single-qubit Haar states
    StabProd1,   ///< tensor product of uniformly random single-qubit stabilizer states
    HaarBlocks,  ///< tensor product of k-qubit Haar states, k | n
    HaarGlobal,  ///< n-qubit Haar state
    RandCirc,    ///< brickwork of Haar k-qubit gates applied to |0...0>
    CompBasis,   ///< uniform over computational basis states
    XBasis,      ///< uniform over product X-basis states
};

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::HaarProd1;
    int n = 1;
    /// Block size for HaarBlocks, gate locality for RandCirc.
    int locality = 1;
    /// Number of brickwork layers for RandCirc.
    int layers = 1;

    static EnsembleSpec haar_prod(int n) {
        return {EnsembleKind::HaarProd1, n, 1, 1};
    }
    static EnsembleSpec stab_prod(int n) {
        return {EnsembleKind::StabProd1, n, 1, 1};
    }
    static EnsembleSpec haar_global(int n) {
        return {EnsembleKind::HaarGlobal, n, 1, 1};
    }
    static EnsembleSpec haar_blocks(int n, int k) {
        return {EnsembleKind::HaarBlocks, n, k, 1};
    }
    static EnsembleSpec rand_circ(int n, int layers, int k) {
        return {EnsembleKind::RandCirc, n, k, layers};
    }
    static EnsembleSpec comp_basis(int n) {
        return {EnsembleKind::CompBasis, n, 1, 1};
    }
    static EnsembleSpec x_basis(int n) {
        return {EnsembleKind::XBasis, n, 1, 1};
    }

    /// Throws BadSpec on inconsistent fields.
    void validate() const;
    /// True for kinds that are locally scrambled (or match one up to second
    /// moments).
    bool locally_scrambled() const;
    /// Stable text form, e.g. "HaarProd1", "HaarBlocks(2)", "RandCirc(3,2)".
    std::string name() const;

    /// Parses the text form produced by name(); n is supplied separately.
    static EnsembleSpec parse(const std::string &text, int n);

    friend bool operator==(const EnsembleSpec &, const EnsembleSpec &) = default;
};

/// One sampled input. Product-structured kinds also record their
/// single-qubit factors (factor q is the state of qubit q); entangled kinds
/// leave `factors` empty.
struct InputState {
    StateVec state;
    std::vector<Eigen::Vector2cd> factors;

    bool is_product() const {
        return !factors.empty();
    }
};

InputState sample_input(const EnsembleSpec &spec, Rng &rng);
StateVec sample_state(const EnsembleSpec &spec, Rng &rng);

/// The six single-qubit stabilizer states in digit order
/// |0>, |1>, |+>, |->, |y+>, |y->.
const std::vector<Eigen::Vector2cd> &single_qubit_stabilizers();

/// Product state from single-qubit factors (factor q on qubit q).
InputState product_state(std::vector<Eigen::Vector2cd> factors);

/// All 6^n product stabilizer states; digit q of the base-6 index picks the
/// factor on qubit q, so qubit 0 varies fastest. n <= 6.
std::vector<StateVec> enumerate_stab_products(int n);

/// All 2^n members of a basis ensemble (CompBasis or XBasis), i.e. the full
/// support of the uniform distribution.
std::vector<InputState> enumerate_basis(const EnsembleSpec &spec);

struct TrainPair {
    InputState input;
    StateVec output;
};

class TrainSet {
public:
    /// Checks that all pairs share the register size and that every output
    /// equals target applied to its input.
    TrainSet(std::vector<TrainPair> pairs, EnsembleSpec source, const Op &target);

    const std::vector<TrainPair> &pairs() const noexcept {
        return pairs_;
    }
    std::size_t size() const noexcept {
        return pairs_.size();
    }
    int n() const noexcept {
        return source_.n;
    }
    const EnsembleSpec &source() const noexcept {
        return source_;
    }

private:
    std::vector<TrainPair> pairs_;
    EnsembleSpec source_;
};

TrainSet make_trainset(const Op &target, const EnsembleSpec &spec, std::size_t count, Rng &rng);

/// Pairs built from caller-provided inputs; used for explicit data sets such
/// as both computational basis states.
TrainSet make_trainset(const Op &target, const EnsembleSpec &spec, std::vector<InputState> inputs);

}  // namespace oodl
