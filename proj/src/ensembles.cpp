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

#include "oodl/ensembles.hpp"

#include <cmath>
#include <numeric>
#include <regex>

namespace oodl {

namespace {

CVec kron_factors(const std::vector<Eigen::Vector2cd> &factors) {
    // Build from the highest qubit down so factor 0 ends up least significant.
    CVec acc = CVec::Ones(1);
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        CVec next(acc.size() * 2);
        for (Eigen::Index i = 0; i < acc.size(); ++i) {
            next(2 * i) = acc(i) * (*it)(0);
            next(2 * i + 1) = acc(i) * (*it)(1);
        }
        acc = std::move(next);
    }
    return acc;
}

Eigen::Vector2cd haar_qubit(Rng &rng) {
    const CVec v = haar_vector(2, rng);
    return Eigen::Vector2cd(v(0), v(1));
}

// Qubit groups for brickwork layer `layer`. Odd layers are shifted by k/2;
// edge groups shorter than k still receive a Haar gate of their own size so
// that every qubit is acted on in every layer.
std::vector<std::vector<int>> brick_groups(int n, int k, int layer) {
    std::vector<std::vector<int>> groups;
    const int offset = (layer % 2 == 1 && k >= 2) ? k / 2 : 0;
    auto push = [&](int lo, int hi) {
        std::vector<int> g(static_cast<std::size_t>(hi - lo));
        std::iota(g.begin(), g.end(), lo);
        groups.push_back(std::move(g));
    };
    if (offset > 0) {
        push(0, std::min(offset, n));
    }
    for (int lo = offset; lo < n; lo += k) {
        push(lo, std::min(lo + k, n));
    }
    return groups;
}

}  // namespace

void EnsembleSpec::validate() const {
    if (n < 1 || n > kMaxQubits) {
        throw Error(Errc::BadSpec, "qubit count " + std::to_string(n) + " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
    switch (kind) {
        case EnsembleKind::HaarBlocks:
            if (locality < 1 || n % locality != 0) {
                throw Error(Errc::BadSpec, "HaarBlocks block size must divide n");
            }
            break;
        case EnsembleKind::RandCirc:
            if (locality < 1 || locality > n) {
                throw Error(Errc::BadSpec, "RandCirc locality must be in [1, n]");
            }
            if (layers < 1) {
                throw Error(Errc::BadSpec, "RandCirc needs at least one layer");
            }
            break;
        default:
            break;
    }
}

bool EnsembleSpec::locally_scrambled() const {
    return kind != EnsembleKind::CompBasis && kind != EnsembleKind::XBasis;
}

std::string EnsembleSpec::name() const {
    switch (kind) {
        case EnsembleKind::HaarProd1: return "HaarProd1";
        case EnsembleKind::StabProd1: return "StabProd1";
        case EnsembleKind::HaarBlocks: return "HaarBlocks(" + std::to_string(locality) + ")";
        case EnsembleKind::HaarGlobal: return "HaarGlobal";
        case EnsembleKind::RandCirc: return "RandCirc(" + std::to_string(layers) + "," + std::to_string(locality) + ")";
        case EnsembleKind::CompBasis: return "CompBasis";
        case EnsembleKind::XBasis: return "XBasis";
    }
    return "?";
}

EnsembleSpec EnsembleSpec::parse(const std::string &text, int n) {
    static const std::regex blocks(R"(HaarBlocks\((\d+)\))");
    static const std::regex circ(R"(RandCirc\((\d+),\s*(\d+)\))");
    std::smatch m;
    EnsembleSpec spec;
    spec.n = n;
    if (text == "HaarProd1") {
        spec.kind = EnsembleKind::HaarProd1;
    } else if (text == "StabProd1") {
        spec.kind = EnsembleKind::StabProd1;
    } else if (text == "HaarGlobal") {
        spec.kind = EnsembleKind::HaarGlobal;
    } else if (text == "CompBasis") {
        spec.kind = EnsembleKind::CompBasis;
    } else if (text == "XBasis") {
        spec.kind = EnsembleKind::XBasis;
    } else if (std::regex_match(text, m, blocks)) {
        spec.kind = EnsembleKind::HaarBlocks;
        spec.locality = std::stoi(m[1]);
    } else if (std::regex_match(text, m, circ)) {
        spec.kind = EnsembleKind::RandCirc;
        spec.layers = std::stoi(m[1]);
        spec.locality = std::stoi(m[2]);
    } else {
        throw Error(Errc::BadSpec, "unknown ensemble '" + text + "'");
    }
    spec.validate();
    return spec;
}

const std::vector<Eigen::Vector2cd> &single_qubit_stabilizers() {
    static const std::vector<Eigen::Vector2cd> states = [] {
        const double s = 1.0 / std::sqrt(2.0);
        const cplx i(0, 1);
        return std::vector<Eigen::Vector2cd>{
            Eigen::Vector2cd(1, 0),      Eigen::Vector2cd(0, 1),      Eigen::Vector2cd(s, s),
            Eigen::Vector2cd(s, -s),     Eigen::Vector2cd(s, s * i),  Eigen::Vector2cd(s, -s * i),
        };
    }();
    return states;
}

InputState product_state(std::vector<Eigen::Vector2cd> factors) {
    const int n = static_cast<int>(factors.size());
    CVec amps = kron_factors(factors);
    return InputState{StateVec::normalized(n, std::move(amps)), std::move(factors)};
}

InputState sample_input(const EnsembleSpec &spec, Rng &rng) {
    spec.validate();
    const int n = spec.n;
    switch (spec.kind) {
        case EnsembleKind::HaarProd1: {
            std::vector<Eigen::Vector2cd> f(static_cast<std::size_t>(n));
            for (auto &v : f) {
                v = haar_qubit(rng);
            }
            return product_state(std::move(f));
        }
        case EnsembleKind::StabProd1: {
            const auto &stabs = single_qubit_stabilizers();
            std::vector<Eigen::Vector2cd> f(static_cast<std::size_t>(n));
            for (auto &v : f) {
                v = stabs[rng.below(6)];
            }
            return product_state(std::move(f));
        }
        case EnsembleKind::CompBasis:
        case EnsembleKind::XBasis: {
            const double s = 1.0 / std::sqrt(2.0);
            std::vector<Eigen::Vector2cd> f(static_cast<std::size_t>(n));
            for (auto &v : f) {
                const bool one = rng.below(2) == 1;
                if (spec.kind == EnsembleKind::CompBasis) {
                    v = one ? Eigen::Vector2cd(0, 1) : Eigen::Vector2cd(1, 0);
                } else {
                    v = one ? Eigen::Vector2cd(s, -s) : Eigen::Vector2cd(s, s);
                }
            }
            return product_state(std::move(f));
        }
        case EnsembleKind::HaarBlocks: {
            const int k = spec.locality;
            if (k == 1) {
                return sample_input(EnsembleSpec::haar_prod(n), rng);
            }
            CVec acc = CVec::Ones(1);
            // Block b covers qubits [b k, (b+1) k); build high blocks first.
            std::vector<CVec> blocks;
            for (int b = 0; b < n / k; ++b) {
                blocks.push_back(haar_vector(dim_of(k), rng));
            }
            for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
                CVec next(acc.size() * it->size());
                for (Eigen::Index i = 0; i < acc.size(); ++i) {
                    next.segment(i * it->size(), it->size()) = acc(i) * (*it);
                }
                acc = std::move(next);
            }
            return InputState{StateVec::normalized(n, std::move(acc)), {}};
        }
        case EnsembleKind::HaarGlobal:
            return InputState{StateVec::normalized(n, haar_vector(dim_of(n), rng)), {}};
        case EnsembleKind::RandCirc: {
            const int k = spec.locality;
            if (k == 1) {
                // Products of Haar 1-qubit unitaries stay a product of Haar
                // qubits; keep the factor structure.
                std::vector<Eigen::Vector2cd> f(static_cast<std::size_t>(n), Eigen::Vector2cd(1, 0));
                for (int l = 0; l < spec.layers; ++l) {
                    for (auto &v : f) {
                        const Op u = haar_unitary(2, rng);
                        v = u.mat() * v;
                    }
                }
                return product_state(std::move(f));
            }
            CMat psi = CMat::Zero(static_cast<Eigen::Index>(dim_of(n)), 1);
            psi(0, 0) = 1.0;
            for (int l = 0; l < spec.layers; ++l) {
                for (const auto &g : brick_groups(n, k, l)) {
                    const Op u = haar_unitary(dim_of(static_cast<int>(g.size())), rng);
                    apply_kq(psi, g, u.mat());
                }
            }
            return InputState{StateVec::normalized(n, psi.col(0)), {}};
        }
    }
    throw Error(Errc::BadSpec, "unhandled ensemble kind");
}

StateVec sample_state(const EnsembleSpec &spec, Rng &rng) {
    return sample_input(spec, rng).state;
}

std::vector<StateVec> enumerate_stab_products(int n) {
    if (n < 1) {
        throw Error(Errc::BadSpec, "n must be positive");
    }
    if (n > 6) {
        throw Error(Errc::TooLarge, "6^n enumeration capped at n = 6");
    }
    const auto &stabs = single_qubit_stabilizers();
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) {
        total *= 6;
    }
    std::vector<StateVec> out;
    out.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<Eigen::Vector2cd> f(static_cast<std::size_t>(n));
        std::size_t rest = idx;
        for (int q = 0; q < n; ++q) {
            f[static_cast<std::size_t>(q)] = stabs[rest % 6];
            rest /= 6;
        }
        out.push_back(product_state(std::move(f)).state);
    }
    return out;
}

std::vector<InputState> enumerate_basis(const EnsembleSpec &spec) {
    spec.validate();
    if (spec.kind != EnsembleKind::CompBasis && spec.kind != EnsembleKind::XBasis) {
        throw Error(Errc::BadSpec, "enumerate_basis needs CompBasis or XBasis");
    }
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<InputState> out;
    for (std::size_t idx = 0; idx < dim_of(spec.n); ++idx) {
        std::vector<Eigen::Vector2cd> f(static_cast<std::size_t>(spec.n));
        for (int q = 0; q < spec.n; ++q) {
            const bool one = (idx >> q) & 1U;
            if (spec.kind == EnsembleKind::CompBasis) {
                f[static_cast<std::size_t>(q)] = one ? Eigen::Vector2cd(0, 1) : Eigen::Vector2cd(1, 0);
            } else {
                f[static_cast<std::size_t>(q)] = one ? Eigen::Vector2cd(s, -s) : Eigen::Vector2cd(s, s);
            }
        }
        out.push_back(product_state(std::move(f)));
    }
    return out;
}

// ---------------------------------------------------------------- TrainSet

TrainSet::TrainSet(std::vector<TrainPair> pairs, EnsembleSpec source, const Op &target)
    : pairs_(std::move(pairs)), source_(source) {
    for (const auto &p : pairs_) {
        if (p.input.state.n() != source_.n || p.output.n() != source_.n) {
            throw Error(Errc::DimMismatch, "train pair register size differs from source ensemble");
        }
        const CVec expect = target.mat() * p.input.state.amps();
        if ((expect - p.output.amps()).cwiseAbs().maxCoeff() > kStructTol) {
            throw Error(Errc::BadSpec, "train output is not target applied to input");
        }
    }
}

TrainSet make_trainset(const Op &target, const EnsembleSpec &spec, std::vector<InputState> inputs) {
    if (target.n() != spec.n) {
        throw Error(Errc::DimMismatch, "target and ensemble register sizes differ");
    }
    require_unitary(target, "training target");
    std::vector<TrainPair> pairs;
    pairs.reserve(inputs.size());
    for (auto &in : inputs) {
        StateVec out = target.apply(in.state);
        pairs.push_back(TrainPair{std::move(in), std::move(out)});
    }
    return TrainSet(std::move(pairs), spec, target);
}

TrainSet make_trainset(const Op &target, const EnsembleSpec &spec, std::size_t count, Rng &rng) {
    if (count < 1) {
        throw Error(Errc::EmptyData, "training set size must be positive");
    }
    std::vector<InputState> inputs;
    inputs.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        inputs.push_back(sample_input(spec, rng));
    }
    return make_trainset(target, spec, std::move(inputs));
}

}  // namespace oodl
