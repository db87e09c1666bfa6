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
#include <functional>
#include <span>
#include <vector>

#include "oodl/ensembles.hpp"
#include "oodl/qcore.hpp"

namespace oodl {

using CostFn = std::function<double(std::span<const double>)>;
using AnsatzBuilder = std::function<Op(std::span<const double>)>;
/// Extra per-log-point columns (e.g. exact risks of the current iterate).
using TraceMonitor = std::function<std::vector<double>(std::span<const double>)>;

/// Shots per cost evaluation, grown geometrically when the optimizer stalls.
class ShotSchedule {
public:
    ShotSchedule() = default;
    ShotSchedule(std::uint64_t initial, double growth, int stall_window, double improve_tol = 1e-3);

    std::uint64_t shots() const noexcept {
        return shots_;
    }
    double growth() const noexcept {
        return growth_;
    }
    int stall_window() const noexcept {
        return stall_window_;
    }
    double improve_tol() const noexcept {
        return improve_tol_;
    }
    /// shots <- ceil(growth * shots); returns the new value.
    std::uint64_t on_stall();

private:
    std::uint64_t shots_ = 10;
    double growth_ = 1.5;
    int stall_window_ = 20;
    double improve_tol_ = 1e-3;
};

/// Global depolarizing noise on state preparation, retention per gate.
struct NoiseModel {
    double gate_retention = 1.0;
    int gate_count = 0;

    /// Lambda = gate_retention ^ gate_count, in (0, 1].
    double retention() const;
    /// Model with a prescribed total retention (gate_count = 1).
    static NoiseModel with_total(double lambda);
};

struct TraceEntry {
    int iteration = 0;
    std::vector<double> alpha;
    double estimated_cost = 0;
    double exact_cost = 0;
    std::uint64_t cumulative_shots = 0;
    std::uint64_t shots_per_eval = 0;
    std::vector<double> extras;
};

struct OptTrace {
    std::vector<TraceEntry> entries;
    std::vector<double> final_alpha;
    double final_cost = 0;
    bool converged = false;
    std::uint64_t evaluations = 0;
};

/// Binomial(shots, Lambda F + (1 - Lambda)/d) / shots per pair, averaged,
/// returned as 1 - mean. predicted[j] = v |in_j>.
double shot_cost_estimate(const TrainSet &data, std::span<const StateVec> predicted, std::uint64_t shots,
                          const NoiseModel &noise, Rng &rng);
double shot_cost_estimate(const TrainSet &data, const Op &v, std::uint64_t shots, const NoiseModel &noise, Rng &rng);
/// Expectation of shot_cost_estimate: 1 - mean(Lambda F + (1 - Lambda)/d).
double noisy_cost(const TrainSet &data, const Op &v, const NoiseModel &noise);

/// Central differences per coordinate.
std::vector<double> finite_diff_grad(const CostFn &cost, std::span<const double> alpha, double eps);

struct GradientOptions {
    double step = 0.1;
    int max_iters = 1000;
    /// Stop once the cost drops below tol.
    double tol = 0;
    double fd_eps = 1e-6;
    /// Step multiplier after an accepted move; 1 disables growth.
    double growth = 1.25;
    /// Give up once backtracking drives the step below this.
    double min_step = 1e-14;
    /// Stop when the gradient norm falls below this.
    double grad_tol = 1e-14;
    /// Propose each step with the Barzilai-Borwein length s.s / s.y from the
    /// previous move (falling back to the running step when s.y <= 0).
    /// Backtracking still applies to the proposal.
    bool barzilai_borwein = false;
};

/// Gradient descent with backtracking: a trial step that does not lower the
/// cost halves the step and retries. Accepted iterates are logged, so the
/// logged cost is non-increasing.
OptTrace gradient_descent(const CostFn &cost, std::vector<double> alpha0, const GradientOptions &opts);

struct NelderMeadOptions {
    double initial_step = 0.5;
    std::uint64_t shot_budget = 100000;
    /// Log every k-th iteration (plus the final one).
    int log_every = 1;
    /// Hard iteration cap independent of the budget.
    int max_iters = 1000000;
    /// On a stall, rebuild the simplex around the best vertex with
    /// initial_step before re-sampling. Low-shot noise tends to collapse the
    /// simplex through spurious contractions; re-expanding lets the larger
    /// shot count explore again.
    bool restart_on_stall = true;
};

/// Nelder-Mead (reflection 1, expansion 2, contraction 1/2, shrink 1/2) on
/// shot-sampled costs. When the best vertex fails to improve by more than
/// the schedule's tolerance for stall_window iterations, shots grow and all
/// vertices are re-sampled (after an optional simplex rebuild). Stops when the cumulative shot count reaches the
/// budget.
OptTrace nelder_mead_shots(const TrainSet &data, const AnsatzBuilder &build, std::vector<double> alpha0,
                           ShotSchedule schedule, const NoiseModel &noise, Rng &rng, const NelderMeadOptions &opts,
                           const TraceMonitor &monitor = {});

}  // namespace oodl
