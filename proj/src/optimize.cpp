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

#include "oodl/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oodl/risks.hpp"

namespace oodl {

// ------------------------------------------------------------ schedule / noise

ShotSchedule::ShotSchedule(std::uint64_t initial, double growth, int stall_window, double improve_tol)
    : shots_(initial), growth_(growth), stall_window_(stall_window), improve_tol_(improve_tol) {
    if (initial < 1) {
        throw Error(Errc::BadParams, "shot schedule needs at least one shot");
    }
    if (!(growth > 1.0)) {
        throw Error(Errc::BadParams, "shot growth factor must exceed 1");
    }
    if (stall_window < 1) {
        throw Error(Errc::BadParams, "stall window must be positive");
    }
}

std::uint64_t ShotSchedule::on_stall() {
    shots_ = static_cast<std::uint64_t>(std::ceil(growth_ * static_cast<double>(shots_)));
    return shots_;
}

double NoiseModel::retention() const {
    if (!(gate_retention > 0.0 && gate_retention <= 1.0) || gate_count < 0) {
        throw Error(Errc::BadParams, "gate retention must lie in (0, 1]");
    }
    return std::pow(gate_retention, gate_count);
}

NoiseModel NoiseModel::with_total(double lambda) {
    NoiseModel m{lambda, 1};
    (void)m.retention();
    return m;
}

// ------------------------------------------------------------ shot sampling

double shot_cost_estimate(const TrainSet &data, std::span<const StateVec> predicted, std::uint64_t shots,
                          const NoiseModel &noise, Rng &rng) {
    if (shots < 1) {
        throw Error(Errc::BadParams, "need at least one shot");
    }
    if (predicted.size() != data.size() || data.size() == 0) {
        throw Error(Errc::ShapeMismatch, "prediction count differs from training set size");
    }
    const double lambda = noise.retention();
    const double d = static_cast<double>(dim_of(data.n()));
    double acc = 0;
    for (std::size_t j = 0; j < data.size(); ++j) {
        const double f = fidelity(data.pairs()[j].output, predicted[j]);
        const double noisy = std::clamp(lambda * f + (1.0 - lambda) / d, 0.0, 1.0);
        std::binomial_distribution<std::uint64_t> draw(shots, noisy);
        acc += static_cast<double>(draw(rng)) / static_cast<double>(shots);
    }
    return 1.0 - acc / static_cast<double>(data.size());
}

double shot_cost_estimate(const TrainSet &data, const Op &v, std::uint64_t shots, const NoiseModel &noise, Rng &rng) {
    std::vector<StateVec> predicted;
    predicted.reserve(data.size());
    for (const auto &p : data.pairs()) {
        predicted.push_back(v.apply(p.input.state));
    }
    return shot_cost_estimate(data, predicted, shots, noise, rng);
}

double noisy_cost(const TrainSet &data, const Op &v, const NoiseModel &noise) {
    const double lambda = noise.retention();
    const double d = static_cast<double>(dim_of(data.n()));
    const double c = training_cost(data, v);
    // 1 - mean(lambda F + (1 - lambda)/d) = lambda C + (1 - lambda)(1 - 1/d)
    return lambda * c + (1.0 - lambda) * (1.0 - 1.0 / d);
}

// ------------------------------------------------------------ gradients

std::vector<double> finite_diff_grad(const CostFn &cost, std::span<const double> alpha, double eps) {
    if (!(eps > 0)) {
        throw Error(Errc::BadParams, "finite-difference step must be positive");
    }
    std::vector<double> x(alpha.begin(), alpha.end());
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        x[i] = xi + eps;
        const double fp = cost(x);
        x[i] = xi - eps;
        const double fm = cost(x);
        x[i] = xi;
        grad[i] = (fp - fm) / (2.0 * eps);
    }
    return grad;
}

OptTrace gradient_descent(const CostFn &cost, std::vector<double> alpha0, const GradientOptions &opts) {
    if (!(opts.step > 0)) {
        throw Error(Errc::BadParams, "gradient step must be positive");
    }
    OptTrace trace;
    std::vector<double> alpha = std::move(alpha0);
    double f = cost(alpha);
    trace.evaluations = 1;
    double step = opts.step;
    trace.entries.push_back(TraceEntry{0, alpha, f, f, 0, 0, {}});

    std::vector<double> trial(alpha.size());
    std::vector<double> prev_alpha, prev_grad;
    for (int it = 1; it <= opts.max_iters; ++it) {
        if (f < opts.tol) {
            trace.converged = true;
            break;
        }
        const std::vector<double> grad = finite_diff_grad(cost, alpha, opts.fd_eps);
        trace.evaluations += 2 * grad.size();
        const double gnorm = std::sqrt(std::inner_product(grad.begin(), grad.end(), grad.begin(), 0.0));
        if (gnorm < opts.grad_tol) {
            break;
        }
        if (opts.barzilai_borwein && !prev_grad.empty()) {
            double ss = 0, sy = 0;
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                const double s = alpha[i] - prev_alpha[i];
                ss += s * s;
                sy += s * (grad[i] - prev_grad[i]);
            }
            if (sy > 0 && std::isfinite(ss / sy)) {
                step = ss / sy;
            }
        }
        prev_alpha = alpha;
        prev_grad = grad;
        bool accepted = false;
        while (step >= opts.min_step) {
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                trial[i] = alpha[i] - step * grad[i];
            }
            const double ft = cost(trial);
            ++trace.evaluations;
            if (ft < f) {
                alpha = trial;
                f = ft;
                step *= opts.growth;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            break;
        }
        trace.entries.push_back(TraceEntry{it, alpha, f, f, 0, 0, {}});
    }
    if (f < opts.tol) {
        trace.converged = true;
    }
    trace.final_alpha = std::move(alpha);
    trace.final_cost = f;
    return trace;
}

// ------------------------------------------------------------ Nelder-Mead

namespace {

struct Vertex {
    std::vector<double> x;
    double f;
};

}  // namespace

OptTrace nelder_mead_shots(const TrainSet &data, const AnsatzBuilder &build, std::vector<double> alpha0,
                           ShotSchedule schedule, const NoiseModel &noise, Rng &rng, const NelderMeadOptions &opts,
                           const TraceMonitor &monitor) {
    const std::size_t dimn = alpha0.size();
    if (dimn == 0) {
        throw Error(Errc::BadParams, "Nelder-Mead needs at least one parameter");
    }
    const std::uint64_t per_eval_pairs = data.size();
    if (opts.shot_budget < (dimn + 1) * per_eval_pairs * schedule.shots()) {
        throw Error(Errc::BadParams, "shot budget smaller than the initial simplex evaluation");
    }

    OptTrace trace;
    std::uint64_t spent = 0;
    auto evaluate = [&](const std::vector<double> &x) {
        const Op v = build(x);
        spent += per_eval_pairs * schedule.shots();
        ++trace.evaluations;
        return shot_cost_estimate(data, v, schedule.shots(), noise, rng);
    };
    auto exact = [&](const std::vector<double> &x) {
        return training_cost(data, build(x));
    };
    auto log_point = [&](int it, const Vertex &best) {
        TraceEntry e{it, best.x, best.f, exact(best.x), spent, schedule.shots(), {}};
        if (monitor) {
            e.extras = monitor(best.x);
        }
        trace.entries.push_back(std::move(e));
    };

    std::vector<Vertex> simplex;
    simplex.reserve(dimn + 1);
    simplex.push_back({alpha0, evaluate(alpha0)});
    for (std::size_t i = 0; i < dimn; ++i) {
        std::vector<double> x = alpha0;
        x[i] += opts.initial_step;
        simplex.push_back({x, evaluate(x)});
    }
    auto by_cost = [](const Vertex &a, const Vertex &b) { return a.f < b.f; };
    std::sort(simplex.begin(), simplex.end(), by_cost);
    log_point(0, simplex.front());

    double reference_best = simplex.front().f;
    int stalled = 0;
    std::vector<double> centroid(dimn);
    auto along = [&](const std::vector<double> &from, double coeff) {
        // centroid + coeff * (centroid - from)
        std::vector<double> out(dimn);
        for (std::size_t i = 0; i < dimn; ++i) {
            out[i] = centroid[i] + coeff * (centroid[i] - from[i]);
        }
        return out;
    };

    int it = 0;
    while (spent < opts.shot_budget && it < opts.max_iters) {
        ++it;
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t v = 0; v < dimn; ++v) {
            for (std::size_t i = 0; i < dimn; ++i) {
                centroid[i] += simplex[v].x[i] / static_cast<double>(dimn);
            }
        }
        Vertex &worst = simplex.back();
        const double f_best = simplex.front().f;
        const double f_second = simplex[dimn - 1].f;

        std::vector<double> xr = along(worst.x, 1.0);
        const double fr = evaluate(xr);
        if (fr < f_best) {
            std::vector<double> xe = along(worst.x, 2.0);
            const double fe = evaluate(xe);
            worst = fe < fr ? Vertex{std::move(xe), fe} : Vertex{std::move(xr), fr};
        } else if (fr < f_second) {
            worst = {std::move(xr), fr};
        } else {
            bool shrink = false;
            if (fr < worst.f) {
                std::vector<double> xc = along(worst.x, 0.5);
                const double fc = evaluate(xc);
                if (fc <= fr) {
                    worst = {std::move(xc), fc};
                } else {
                    shrink = true;
                }
            } else {
                std::vector<double> xc = along(worst.x, -0.5);
                const double fc = evaluate(xc);
                if (fc < worst.f) {
                    worst = {std::move(xc), fc};
                } else {
                    shrink = true;
                }
            }
            if (shrink) {
                const std::vector<double> best_x = simplex.front().x;
                for (std::size_t v = 1; v <= dimn; ++v) {
                    for (std::size_t i = 0; i < dimn; ++i) {
                        simplex[v].x[i] = best_x[i] + 0.5 * (simplex[v].x[i] - best_x[i]);
                    }
                    simplex[v].f = evaluate(simplex[v].x);
                }
            }
        }
        std::sort(simplex.begin(), simplex.end(), by_cost);

        if (simplex.front().f < reference_best - schedule.improve_tol()) {
            reference_best = simplex.front().f;
            stalled = 0;
        } else if (++stalled >= schedule.stall_window()) {
            schedule.on_stall();
            if (opts.restart_on_stall) {
                const std::vector<double> best_x = simplex.front().x;
                for (std::size_t v = 1; v <= dimn; ++v) {
                    simplex[v].x = best_x;
                    simplex[v].x[v - 1] += opts.initial_step;
                }
            }
            for (auto &v : simplex) {
                v.f = evaluate(v.x);
            }
            std::sort(simplex.begin(), simplex.end(), by_cost);
            reference_best = simplex.front().f;
            stalled = 0;
        }
        if (opts.log_every > 0 && it % opts.log_every == 0) {
            log_point(it, simplex.front());
        }
    }
    if (trace.entries.back().iteration != it) {
        log_point(it, simplex.front());
    }
    trace.final_alpha = simplex.front().x;
    trace.final_cost = trace.entries.back().exact_cost;
    trace.converged = false;
    return trace;
}

}  // namespace oodl
