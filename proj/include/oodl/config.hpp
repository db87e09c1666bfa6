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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace oodl {

inline constexpr int kConfigSchema = 1;

enum class ExperimentKind {
    HamiltonianLearn,
    ScramblerLearn,
    TightnessScan,
    BoundsVerify,
    LinearityDemo,
    NoisyTrain,
};

/// Subcommand spelling, e.g. "hamiltonian-learn".
std::string_view kind_name(ExperimentKind kind);
/// Inverse of kind_name; throws ConfigError on unknown names.
ExperimentKind parse_kind(std::string_view name);

struct HamiltonianLearnConfig {
    std::vector<int> n{4, 5, 6};
    std::vector<int> layers{2, 3, 4, 5};
    int train_size = 2;
    double t = 0.1;
    int restarts = 5;
    /// Initial (p, q, r) entries are drawn from U[-init_spread, init_spread].
    double init_spread = 1.0;
    int max_iters = 1000;
    double step = 0.1;
    std::string ensemble = "HaarProd1";
};

struct ScramblerLearnConfig {
    int n = 4;
    std::vector<int> steps{3};
    std::vector<int> train_sizes{1, 2, 4, 8, 15};
    int runs = 100;
    double g = 1.0;
    int max_iters = 300;
    double step = 0.1;
    std::string ensemble = "HaarProd1";
    /// Runs with final cost below this enter the "successful" aggregate.
    double success_cost = 0.5;
};

struct TightnessScanConfig {
    std::vector<int> n{2, 3, 4, 5, 6};
    std::vector<int> layers{1, 2, 3};
    int thetas = 20;
    int r_points = 100;
    /// Angles of the base vector are Normal(0, theta_sigma^2).
    double theta_sigma = 6.283185307179586;
};

struct BoundsVerifyConfig {
    std::vector<int> n{2, 3, 4, 5, 6};
    /// Sampled W per register size.
    int samples = 1000;
    std::vector<int> layers{1, 2, 3};
    /// "hea": W = hea_unitary(r theta) with random depth, theta and r.
    /// "z-phase": W = tensor product of e^{-i phi_q Z}.
    std::string family = "hea";
    std::string ensemble_p = "HaarGlobal";
    std::string ensemble_q = "HaarProd1";
    bool require_scrambled = true;
    int mc_samples = 20000;
    double theta_sigma = 6.283185307179586;
};

struct LinearityDemoConfig {
    /// phi_k = 2 pi k / points, k = 0..points-1.
    int points = 32;
};

struct NoisyTrainConfig {
    int n = 4;
    int layers = 2;
    double t = 0.1;
    int train_size = 2;
    int runs = 20;
    /// Start = star parameters + U[-init_spread, init_spread] per entry.
    double init_spread = 14.0;
    double nm_step = 0.5;
    std::uint64_t shot_budget = 25000000;
    std::uint64_t initial_shots = 10;
    double shot_growth = 1.5;
    int stall_window = 20;
    double lambda_product = 0.99;
    double lambda_deep = 0.5;
    /// Brickwork depth of the deep-arm input circuits; 0 means n.
    int deep_layers = 0;
    int deep_locality = 2;
    int log_every = 50;
};

using ExperimentParams = std::variant<HamiltonianLearnConfig, ScramblerLearnConfig, TightnessScanConfig,
                                      BoundsVerifyConfig, LinearityDemoConfig, NoisyTrainConfig>;

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::LinearityDemo;
    std::optional<std::uint64_t> seed;
    ExperimentParams params;

    /// Throws ConfigError on out-of-range fields or a missing seed.
    void validate() const;
};

ExperimentConfig default_config(ExperimentKind kind);

/// Reads a schema-1 document. Top-level keys are "schema" (required, 1),
/// "experiment" (optional, must equal `kind`), "seed" and the fields of the
/// experiment's parameter struct. Absent fields keep their defaults; any
/// other key is an error. Does not call validate().
ExperimentConfig parse_config(const nlohmann::json &doc, ExperimentKind kind);
ExperimentConfig load_config(const std::filesystem::path &path, ExperimentKind kind);

/// Full document with every field, suitable for parse_config.
nlohmann::json to_json(const ExperimentConfig &cfg);

}  // namespace oodl
