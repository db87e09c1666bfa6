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

#include "oodl/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "oodl/ensembles.hpp"
#include "oodl/error.hpp"

namespace oodl {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(HamiltonianLearnConfig, n, layers, train_size, t, restarts, init_spread,
                                                max_iters, step, ensemble)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ScramblerLearnConfig, n, steps, train_sizes, runs, g, max_iters, step,
                                                ensemble, success_cost)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(TightnessScanConfig, n, layers, thetas, r_points, theta_sigma)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(BoundsVerifyConfig, n, samples, layers, family, ensemble_p, ensemble_q,
                                                require_scrambled, mc_samples, theta_sigma)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(LinearityDemoConfig, points)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(NoisyTrainConfig, n, layers, t, train_size, runs, init_spread, nm_step,
                                                shot_budget, initial_shots, shot_growth, stall_window, lambda_product,
                                                lambda_deep, deep_layers, deep_locality, log_every)

namespace {

constexpr std::array<std::pair<ExperimentKind, std::string_view>, 6> kKindNames{{
    {ExperimentKind::HamiltonianLearn, "hamiltonian-learn"},
    {ExperimentKind::ScramblerLearn, "scrambler-learn"},
    {ExperimentKind::TightnessScan, "tightness-scan"},
    {ExperimentKind::BoundsVerify, "bounds-verify"},
    {ExperimentKind::LinearityDemo, "linearity-demo"},
    {ExperimentKind::NoisyTrain, "noisy-train"},
}};

// Register caps: dense training runs, exact risk formulas.
constexpr int kMaxTrainQubits = 8;
constexpr int kMaxExactQubits = 10;

[[noreturn]] void fail(const std::string &what) {
    throw Error(Errc::ConfigError, what);
}

void require(bool ok, const std::string &what) {
    if (!ok) fail(what);
}

void require_list(const std::vector<int> &xs, int lo, int hi, const std::string &field) {
    require(!xs.empty(), field + " must not be empty");
    for (int x : xs) {
        require(x >= lo && x <= hi, field + " entries must lie in [" + std::to_string(lo) + ", " +
                                        std::to_string(hi) + "], got " + std::to_string(x));
    }
}

void require_positive(double x, const std::string &field) {
    require(std::isfinite(x) && x > 0, field + " must be a positive finite number");
}

EnsembleSpec checked_ensemble(const std::string &text, int n, const std::string &field) {
    try {
        EnsembleSpec spec = EnsembleSpec::parse(text, n);
        spec.validate();
        return spec;
    } catch (const Error &e) {
        fail(field + ": " + e.what());
    }
}

void check(const HamiltonianLearnConfig &c) {
    require_list(c.n, 2, kMaxTrainQubits, "n");
    require_list(c.layers, 1, 64, "layers");
    require(c.train_size >= 1, "train_size must be >= 1");
    require_positive(c.t, "t");
    require(c.restarts >= 1, "restarts must be >= 1");
    require(std::isfinite(c.init_spread) && c.init_spread >= 0, "init_spread must be >= 0");
    require(c.max_iters >= 1, "max_iters must be >= 1");
    require_positive(c.step, "step");
    for (int n : c.n) checked_ensemble(c.ensemble, n, "ensemble");
}

void check(const ScramblerLearnConfig &c) {
    require(c.n >= 2 && c.n <= kMaxTrainQubits, "n must lie in [2, 8]");
    require_list(c.steps, 1, 64, "steps");
    require_list(c.train_sizes, 1, 4096, "train_sizes");
    require(c.runs >= 1, "runs must be >= 1");
    require(std::isfinite(c.g), "g must be finite");
    require(c.max_iters >= 1, "max_iters must be >= 1");
    require_positive(c.step, "step");
    require(c.success_cost > 0 && c.success_cost <= 1, "success_cost must lie in (0, 1]");
    checked_ensemble(c.ensemble, c.n, "ensemble");
}

void check(const TightnessScanConfig &c) {
    require_list(c.n, 2, kMaxExactQubits, "n");
    require_list(c.layers, 1, 64, "layers");
    require(c.thetas >= 1, "thetas must be >= 1");
    require(c.r_points >= 2, "r_points must be >= 2");
    require_positive(c.theta_sigma, "theta_sigma");
}

void check(const BoundsVerifyConfig &c) {
    require_list(c.n, 1, kMaxExactQubits, "n");
    require(c.samples >= 1, "samples must be >= 1");
    require(c.family == "hea" || c.family == "z-phase", "family must be \"hea\" or \"z-phase\"");
    if (c.family == "hea") {
        require_list(c.n, 2, kMaxExactQubits, "n");
        require_list(c.layers, 1, 64, "layers");
    }
    require(c.mc_samples >= 1, "mc_samples must be >= 1");
    require_positive(c.theta_sigma, "theta_sigma");
    for (int n : c.n) {
        const EnsembleSpec p = checked_ensemble(c.ensemble_p, n, "ensemble_p");
        const EnsembleSpec q = checked_ensemble(c.ensemble_q, n, "ensemble_q");
        if (c.require_scrambled) {
            require(p.locally_scrambled(), "ensemble_p is not locally scrambled (set require_scrambled to false)");
            require(q.locally_scrambled(), "ensemble_q is not locally scrambled (set require_scrambled to false)");
        }
    }
}

void check(const LinearityDemoConfig &c) {
    require(c.points >= 1, "points must be >= 1");
}

void check(const NoisyTrainConfig &c) {
    require(c.n >= 2 && c.n <= kMaxTrainQubits, "n must lie in [2, 8]");
    require(c.layers >= 1, "layers must be >= 1");
    require_positive(c.t, "t");
    require(c.train_size >= 1, "train_size must be >= 1");
    require(c.runs >= 1, "runs must be >= 1");
    require(std::isfinite(c.init_spread) && c.init_spread >= 0, "init_spread must be >= 0");
    require_positive(c.nm_step, "nm_step");
    require(c.shot_budget >= 1, "shot_budget must be >= 1");
    require(c.initial_shots >= 1, "initial_shots must be >= 1");
    require(std::isfinite(c.shot_growth) && c.shot_growth > 1, "shot_growth must be > 1");
    require(c.stall_window >= 1, "stall_window must be >= 1");
    require(c.lambda_product > 0 && c.lambda_product <= 1, "lambda_product must lie in (0, 1]");
    require(c.lambda_deep > 0 && c.lambda_deep <= 1, "lambda_deep must lie in (0, 1]");
    require(c.deep_layers >= 0, "deep_layers must be >= 0");
    require(c.deep_locality >= 1 && c.deep_locality <= c.n, "deep_locality must lie in [1, n]");
    require(c.log_every >= 1, "log_every must be >= 1");
}

template <class T>
ExperimentParams parse_params(const nlohmann::json &doc) {
    std::set<std::string> allowed{"schema", "experiment", "seed"};
    const nlohmann::json defaults = T{};
    for (auto it = defaults.begin(); it != defaults.end(); ++it) allowed.insert(it.key());
    for (const auto &item : doc.items()) {
        require(allowed.count(item.key()) == 1, "unknown key \"" + item.key() + "\"");
    }
    nlohmann::json body = doc;
    body.erase("schema");
    body.erase("experiment");
    body.erase("seed");
    return body.get<T>();
}

}  // namespace

std::string_view kind_name(ExperimentKind kind) {
    for (const auto &[k, name] : kKindNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

ExperimentKind parse_kind(std::string_view name) {
    for (const auto &[k, text] : kKindNames) {
        if (text == name) return k;
    }
    fail("unknown experiment \"" + std::string(name) + "\"");
}

ExperimentConfig default_config(ExperimentKind kind) {
    ExperimentConfig cfg;
    cfg.kind = kind;
    switch (kind) {
        case ExperimentKind::HamiltonianLearn: cfg.params = HamiltonianLearnConfig{}; break;
        case ExperimentKind::ScramblerLearn: cfg.params = ScramblerLearnConfig{}; break;
        case ExperimentKind::TightnessScan: cfg.params = TightnessScanConfig{}; break;
        case ExperimentKind::BoundsVerify: cfg.params = BoundsVerifyConfig{}; break;
        case ExperimentKind::LinearityDemo: cfg.params = LinearityDemoConfig{}; break;
        case ExperimentKind::NoisyTrain: cfg.params = NoisyTrainConfig{}; break;
    }
    return cfg;
}

void ExperimentConfig::validate() const {
    require(seed.has_value(), "seed is mandatory (set \"seed\" in the config or pass --seed)");
    require(default_config(kind).params.index() == params.index(), "parameter block does not match the experiment");
    std::visit([](const auto &p) { check(p); }, params);
}

ExperimentConfig parse_config(const nlohmann::json &doc, ExperimentKind kind) {
    require(doc.is_object(), "config must be a JSON object");
    require(doc.contains("schema"), "missing \"schema\"");
    require(doc["schema"].is_number_integer() && doc["schema"].get<long long>() == kConfigSchema,
            "unsupported schema (expected 1)");
    if (doc.contains("experiment")) {
        require(doc["experiment"].is_string(), "\"experiment\" must be a string");
        require(parse_kind(doc["experiment"].get<std::string>()) == kind,
                "config is for \"" + doc["experiment"].get<std::string>() + "\", not \"" +
                    std::string(kind_name(kind)) + "\"");
    }
    ExperimentConfig cfg;
    cfg.kind = kind;
    try {
        if (doc.contains("seed")) {
            require(doc["seed"].is_number_unsigned(), "\"seed\" must be a non-negative integer");
            cfg.seed = doc["seed"].get<std::uint64_t>();
        }
        switch (kind) {
            case ExperimentKind::HamiltonianLearn: cfg.params = parse_params<HamiltonianLearnConfig>(doc); break;
            case ExperimentKind::ScramblerLearn: cfg.params = parse_params<ScramblerLearnConfig>(doc); break;
            case ExperimentKind::TightnessScan: cfg.params = parse_params<TightnessScanConfig>(doc); break;
            case ExperimentKind::BoundsVerify: cfg.params = parse_params<BoundsVerifyConfig>(doc); break;
            case ExperimentKind::LinearityDemo: cfg.params = parse_params<LinearityDemoConfig>(doc); break;
            case ExperimentKind::NoisyTrain: cfg.params = parse_params<NoisyTrainConfig>(doc); break;
        }
    } catch (const nlohmann::json::exception &e) {
        fail(std::string("bad field type: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path, ExperimentKind kind) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.str());
    } catch (const nlohmann::json::parse_error &e) {
        fail(path.string() + ": " + e.what());
    }
    return parse_config(doc, kind);
}

nlohmann::json to_json(const ExperimentConfig &cfg) {
    nlohmann::json doc = std::visit([](const auto &p) { return nlohmann::json(p); }, cfg.params);
    doc["schema"] = kConfigSchema;
    doc["experiment"] = std::string(kind_name(cfg.kind));
    if (cfg.seed) doc["seed"] = *cfg.seed;
    return doc;
}

}  // namespace oodl
