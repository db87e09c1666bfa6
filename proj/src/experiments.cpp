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

#include "oodl/experiments.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "oodl/ensembles.hpp"
#include "oodl/error.hpp"
#include "oodl/models.hpp"
#include "oodl/optimize.hpp"
#include "oodl/risks.hpp"

namespace oodl {

namespace {

using Role = ResultTable::Role;

std::uint64_t job_key(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t key = 0;
    for (auto p : parts) key = key * 1000003ULL + p + 1;
    return key;
}

Cell seed_cell(std::uint64_t seed) {
    return std::to_string(seed);
}

Cell flag(bool ok) {
    return static_cast<std::int64_t>(ok ? 1 : 0);
}

Cell integer(std::int64_t x) {
    return x;
}

// Inputs and expected outputs as matrix columns, so an ansatz can be applied
// to all N states at once instead of building the full unitary.
struct PairColumns {
    CMat in;
    CMat out;

    explicit PairColumns(const TrainSet &data) {
        const auto d = static_cast<Eigen::Index>(dim_of(data.n()));
        const auto count = static_cast<Eigen::Index>(data.size());
        in.resize(d, count);
        out.resize(d, count);
        for (Eigen::Index j = 0; j < count; ++j) {
            in.col(j) = data.pairs()[static_cast<std::size_t>(j)].input.state.amps();
            out.col(j) = data.pairs()[static_cast<std::size_t>(j)].output.amps();
        }
    }

    double cost(const CMat &predicted) const {
        double acc = 0;
        for (Eigen::Index j = 0; j < in.cols(); ++j) acc += std::norm(out.col(j).dot(predicted.col(j)));
        return 1.0 - acc / static_cast<double>(in.cols());
    }
};

struct ExactBounds {
    bool lemma_lower;
    bool lemma_upper;
    bool theorem_lower;
    bool theorem_upper;
};

// Both risks exact: Q = product Haar, P = global Haar.
ExactBounds exact_bounds(int n, double r_prod, double r_haar) {
    const double d = static_cast<double>(dim_of(n));
    const double c = d / (d + 1);
    return {0.5 * r_haar <= c * r_prod + kBoundAbsSlack, c * r_prod <= r_haar + kBoundAbsSlack,
            0.5 * r_prod <= r_haar + kBoundAbsSlack, r_haar <= 2 * r_prod + kBoundAbsSlack};
}

void push_bounds(std::vector<Cell> &row, const ExactBounds &b) {
    row.push_back(flag(b.lemma_lower));
    row.push_back(flag(b.lemma_upper));
    row.push_back(flag(b.theorem_lower));
    row.push_back(flag(b.theorem_upper));
}

std::vector<ResultTable::Column> with_bound_columns(std::vector<ResultTable::Column> cols) {
    for (const char *name : {"lemma_lower", "lemma_upper", "theorem_lower", "theorem_upper"}) {
        cols.push_back({name, Role::Check});
    }
    return cols;
}

std::vector<double> random_normal(std::size_t count, double sigma, Rng &rng) {
    std::vector<double> xs(count);
    for (auto &x : xs) x = sigma * rng.normal();
    return xs;
}

}  // namespace

// ---------------------------------------------------------------- Hamiltonian

ResultTable run_hamiltonian_learn(const HamiltonianLearnConfig &cfg, std::uint64_t seed, int jobs) {
    const Rng root(seed, 0);

    struct Problem {
        int n;
        Op target;
        TrainSet data;
    };
    std::vector<Problem> problems;
    for (int n : cfg.n) {
        const Op u = exact_evolution(heisenberg_h(star_params(n)), cfg.t);
        Rng drng = root.split(job_key({0, static_cast<std::uint64_t>(n)}));
        TrainSet data =
            make_trainset(u, EnsembleSpec::parse(cfg.ensemble, n), static_cast<std::size_t>(cfg.train_size), drng);
        problems.push_back({n, u, std::move(data)});
    }

    struct Job {
        std::size_t problem;
        int layers;
        int restart;
    };
    std::vector<Job> job_list;
    for (std::size_t p = 0; p < problems.size(); ++p) {
        for (int l : cfg.layers) {
            for (int r = 0; r < cfg.restarts; ++r) job_list.push_back({p, l, r});
        }
    }

    struct Fit {
        double cost;
        std::vector<double> alpha;
    };
    const auto fits = parallel_map<Fit>(job_list.size(), jobs, [&](std::size_t i) {
        const Job &job = job_list[i];
        const Problem &pb = problems[job.problem];
        const int n = pb.n;
        Rng irng = root.split(job_key({1, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(job.layers),
                                       static_cast<std::uint64_t>(job.restart)}));
        std::vector<double> a0(HeisenbergParams::flat_size(n));
        for (auto &x : a0) x = irng.uniform(-cfg.init_spread, cfg.init_spread);
        const PairColumns cols(pb.data);
        const CostFn cost = [&](std::span<const double> a) {
            CMat m = cols.in;
            trotter_apply(HeisenbergParams::unflatten(n, a), job.layers, cfg.t, m);
            return cols.cost(m);
        };
        GradientOptions opts;
        opts.step = cfg.step;
        opts.max_iters = cfg.max_iters;
        opts.barzilai_borwein = true;
        OptTrace tr = gradient_descent(cost, std::move(a0), opts);
        return Fit{tr.final_cost, std::move(tr.final_alpha)};
    });

    ResultTable table(with_bound_columns({{"seed"},
                                          {"n"},
                                          {"layers"},
                                          {"t"},
                                          {"train_size"},
                                          {"restarts"},
                                          {"best_restart"},
                                          {"c_train", Role::Risk},
                                          {"r_prod", Role::Risk},
                                          {"r_haar", Role::Risk}}));
    std::size_t at = 0;
    for (const auto &pb : problems) {
        for (int l : cfg.layers) {
            std::size_t best = at;
            for (int r = 0; r < cfg.restarts; ++r, ++at) {
                if (fits[at].cost < fits[best].cost) best = at;
            }
            const Op v = trotter_ansatz(HeisenbergParams::unflatten(pb.n, fits[best].alpha), l, cfg.t);
            const double c_train = training_cost(pb.data, v);
            const double r_prod = product_haar_risk_exact(pb.target, v);
            const double r_haar = haar_risk(pb.target, v);
            std::vector<Cell> row{seed_cell(seed),
                                  integer(pb.n),
                                  integer(l),
                                  cfg.t,
                                  integer(cfg.train_size),
                                  integer(cfg.restarts),
                                  integer(static_cast<std::int64_t>(best - (at - static_cast<std::size_t>(cfg.restarts)))),
                                  c_train,
                                  r_prod,
                                  r_haar};
            push_bounds(row, exact_bounds(pb.n, r_prod, r_haar));
            table.add_row(std::move(row));
        }
    }
    return table;
}

// ---------------------------------------------------------------- scrambler

ResultTable run_scrambler_learn(const ScramblerLearnConfig &cfg, std::uint64_t seed, int jobs, ResultTable *summary) {
    const Rng root(seed, 0);
    const EnsembleSpec spec_q = EnsembleSpec::parse(cfg.ensemble, cfg.n);
    {
        const Op id = Op::identity(cfg.n);
        if (!exact_risk(id, id, spec_q)) {
            throw Error(Errc::ConfigError, "ensemble " + cfg.ensemble + " has no exact risk");
        }
    }

    struct Job {
        int steps;
        int train_size;
        int run;
    };
    std::vector<Job> job_list;
    for (int t : cfg.steps) {
        for (int nn : cfg.train_sizes) {
            for (int r = 0; r < cfg.runs; ++r) job_list.push_back({t, nn, r});
        }
    }

    struct RunResult {
        double c_train;
        double r_haar;
        double r_q;
    };
    const auto runs = parallel_map<RunResult>(job_list.size(), jobs, [&](std::size_t i) {
        const Job &job = job_list[i];
        Rng rng = root.split(job_key({2, static_cast<std::uint64_t>(job.steps),
                                      static_cast<std::uint64_t>(job.train_size), static_cast<std::uint64_t>(job.run)}));
        auto [u, spec] = fast_scrambler_target(cfg.n, job.steps, cfg.g, rng);
        const TrainSet data = make_trainset(u, spec_q, static_cast<std::size_t>(job.train_size), rng);
        std::vector<double> a0(spec.angle_count());
        for (auto &x : a0) x = rng.uniform(0, 2 * std::numbers::pi);
        const PairColumns cols(data);
        const ScramblerSpec &sp = spec;
        const CostFn cost = [&](std::span<const double> a) {
            CMat m = cols.in;
            scrambler_apply(sp, a, m);
            return cols.cost(m);
        };
        GradientOptions opts;
        opts.step = cfg.step;
        opts.max_iters = cfg.max_iters;
        opts.barzilai_borwein = true;
        const OptTrace tr = gradient_descent(cost, std::move(a0), opts);
        const Op v = scrambler_ansatz(spec, tr.final_alpha);
        return RunResult{training_cost(data, v), haar_risk(u, v), *exact_risk(u, v, spec_q)};
    });

    ResultTable table({{"seed"},
                       {"n"},
                       {"t"},
                       {"N"},
                       {"run"},
                       {"c_train", Role::Risk},
                       {"r_haar", Role::Risk},
                       {"r_q", Role::Risk},
                       {"gen_error"},
                       {"ood_bound_ok", Role::Check}});
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto &r = runs[i];
        const bool ood_bound = r.r_haar <= 2 * (r.c_train + std::abs(r.r_q - r.c_train)) + kBoundAbsSlack;
        table.add_row({seed_cell(seed), integer(cfg.n), integer(job_list[i].steps), integer(job_list[i].train_size),
                       integer(job_list[i].run), r.c_train, r.r_haar, r.r_q, r.r_haar - r.c_train, flag(ood_bound)});
    }

    if (summary != nullptr) {
        *summary = ResultTable({{"seed"},
                                {"n"},
                                {"t"},
                                {"N"},
                                {"runs"},
                                {"mean_c_train"},
                                {"mean_gen_error"},
                                {"stderr_gen_error"},
                                {"success_runs"},
                                {"mean_gen_error_success"},
                                {"anchored_ref"}});
        std::size_t at = 0;
        for (int t : cfg.steps) {
            double anchor_c = std::nan("");
            for (int nn : cfg.train_sizes) {
                double sum = 0, sq = 0, csum = 0, good_sum = 0;
                std::int64_t good = 0;
                for (int r = 0; r < cfg.runs; ++r, ++at) {
                    const double gen = runs[at].r_haar - runs[at].c_train;
                    sum += gen;
                    sq += gen * gen;
                    csum += runs[at].c_train;
                    if (runs[at].c_train < cfg.success_cost) {
                        ++good;
                        good_sum += gen;
                    }
                }
                const double m = static_cast<double>(cfg.runs);
                const double mean = sum / m;
                const double var = cfg.runs > 1 ? std::max(0.0, (sq - m * mean * mean) / (m - 1)) : 0.0;
                // The reference c / sqrt(N) is anchored at the first listed N.
                if (std::isnan(anchor_c)) anchor_c = mean * std::sqrt(static_cast<double>(nn));
                summary->add_row({seed_cell(seed), integer(cfg.n), integer(t), integer(nn), integer(cfg.runs), csum / m,
                                  mean, std::sqrt(var / m), integer(good),
                                  good > 0 ? good_sum / static_cast<double>(good) : std::nan(""),
                                  anchor_c / std::sqrt(static_cast<double>(nn))});
            }
        }
    }
    return table;
}

// ---------------------------------------------------------------- tightness

ResultTable run_tightness_scan(const TightnessScanConfig &cfg, std::uint64_t seed, int jobs) {
    const Rng root(seed, 0);
    struct Job {
        int n;
        int layers;
        int theta;
    };
    std::vector<Job> job_list;
    for (int n : cfg.n) {
        for (int l : cfg.layers) {
            for (int k = 0; k < cfg.thetas; ++k) job_list.push_back({n, l, k});
        }
    }
    ResultTable header({{"seed"},
                        {"n"},
                        {"layers"},
                        {"theta_index"},
                        {"r"},
                        {"r_prod", Role::Risk},
                        {"r_haar", Role::Risk},
                        {"hst"},
                        {"lower_ok", Role::Check},
                        {"upper_ok", Role::Check}});
    const auto parts = parallel_map<ResultTable>(job_list.size(), jobs, [&](std::size_t i) {
        const Job &job = job_list[i];
        Rng rng = root.split(job_key({3, static_cast<std::uint64_t>(job.n), static_cast<std::uint64_t>(job.layers),
                                      static_cast<std::uint64_t>(job.theta)}));
        HeaParams params;
        params.n = job.n;
        params.layers = job.layers;
        params.theta = random_normal(params.expected_size(), cfg.theta_sigma, rng);
        const Op id = Op::identity(job.n);
        const double d = static_cast<double>(dim_of(job.n));
        ResultTable part(header.columns());
        for (int k = 0; k < cfg.r_points; ++k) {
            params.scale = static_cast<double>(k) / static_cast<double>(cfg.r_points - 1);
            const Op w = hea_unitary(params);
            const double r_prod = product_haar_risk_exact(id, w);
            const double r_haar = haar_risk(id, w);
            const double hst = (d + 1) / d * r_haar;
            part.add_row({seed_cell(seed), integer(job.n), integer(job.layers), integer(job.theta), params.scale, r_prod,
                          r_haar, hst, flag(r_prod <= hst + kBoundAbsSlack),
                          flag(hst <= 2 * r_prod + kBoundAbsSlack)});
        }
        return part;
    });
    for (const auto &p : parts) header.append(p);
    return header;
}

// ---------------------------------------------------------------- bounds

ResultTable run_bounds_verify(const BoundsVerifyConfig &cfg, std::uint64_t seed, int jobs) {
    const Rng root(seed, 0);
    std::vector<std::pair<int, int>> job_list;
    for (int n : cfg.n) {
        for (int s = 0; s < cfg.samples; ++s) job_list.emplace_back(n, s);
    }
    ResultTable header({{"seed"},
                        {"n"},
                        {"sample"},
                        {"family"},
                        {"layers"},
                        {"r"},
                        {"r_p", Role::Risk},
                        {"r_p_stderr"},
                        {"r_q", Role::Risk},
                        {"r_q_stderr"},
                        {"r_haar", Role::Risk},
                        {"lemma_lower", Role::Check},
                        {"lemma_upper", Role::Check},
                        {"theorem_lower", Role::Check},
                        {"theorem_upper", Role::Check}});
    BoundOptions bopts;
    bopts.mc_samples = static_cast<std::size_t>(cfg.mc_samples);
    bopts.require_scrambled = cfg.require_scrambled;

    const auto rows = parallel_map<std::vector<Cell>>(job_list.size(), jobs, [&](std::size_t i) {
        const auto [n, s] = job_list[i];
        Rng rng = root.split(job_key({4, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s)}));
        int layers = 0;
        double r = 0;
        Op w = Op::identity(n);
        if (cfg.family == "hea") {
            HeaParams params;
            params.n = n;
            params.layers = layers = cfg.layers[rng.below(cfg.layers.size())];
            params.theta = random_normal(params.expected_size(), cfg.theta_sigma, rng);
            params.scale = r = rng.uniform();
            w = hea_unitary(params);
        } else {
            // Highest qubit first so each new factor lands on the next lower qubit.
            std::optional<Op> acc;
            for (int q = n - 1; q >= 0; --q) {
                const double phi = rng.uniform(0, 2 * std::numbers::pi);
                Mat2 z = Mat2::Zero();
                z(0, 0) = std::polar(1.0, -phi);
                z(1, 1) = std::polar(1.0, phi);
                acc = acc ? kron(*acc, Op(1, z)) : Op(1, z);
            }
            w = *acc;
        }
        const BoundReport rep = check_bounds(Op::identity(n), w, EnsembleSpec::parse(cfg.ensemble_p, n),
                                             EnsembleSpec::parse(cfg.ensemble_q, n), rng, bopts);
        return std::vector<Cell>{seed_cell(seed),
                                 integer(n),
                                 integer(s),
                                 cfg.family,
                                 integer(layers),
                                 r,
                                 rep.r_p.value,
                                 rep.r_p.stderr_,
                                 rep.r_q.value,
                                 rep.r_q.stderr_,
                                 rep.r_haar,
                                 flag(rep.lemma_lower),
                                 flag(rep.lemma_upper),
                                 flag(rep.theorem_lower),
                                 flag(rep.theorem_upper)};
    });
    for (auto row : rows) header.add_row(std::move(row));
    return header;
}

// ---------------------------------------------------------------- linearity

ResultTable run_linearity_demo(const LinearityDemoConfig &cfg) {
    ResultTable table({{"phi"},
                       {"c_train", Role::Risk},
                       {"r_compbasis", Role::Risk},
                       {"r_xbasis", Role::Risk},
                       {"r_haar", Role::Risk}});
    const EnsembleSpec comp = EnsembleSpec::comp_basis(1);
    const EnsembleSpec xb = EnsembleSpec::x_basis(1);
    const Op v = Op::identity(1);
    for (int k = 0; k < cfg.points; ++k) {
        const double phi = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(cfg.points);
        Mat2 z = Mat2::Zero();
        z(0, 0) = std::polar(1.0, -phi);
        z(1, 1) = std::polar(1.0, phi);
        const Op u(1, z);
        const TrainSet data = make_trainset(u, comp, enumerate_basis(comp));
        table.add_row({phi, training_cost(data, v), *exact_risk(u, v, comp), *exact_risk(u, v, xb), haar_risk(u, v)});
    }
    return table;
}

// ---------------------------------------------------------------- noisy

ResultTable run_noisy_train(const NoisyTrainConfig &cfg, std::uint64_t seed, int jobs) {
    const Rng root(seed, 0);
    const int n = cfg.n;
    const Op u = exact_evolution(heisenberg_h(star_params(n)), cfg.t);
    const std::vector<double> star = star_params(n).flatten();
    const int deep_layers = cfg.deep_layers > 0 ? cfg.deep_layers : n;
    const AnsatzBuilder build = [&](std::span<const double> x) {
        return trotter_ansatz(HeisenbergParams::unflatten(n, x), cfg.layers, cfg.t);
    };
    const TraceMonitor monitor = [&](std::span<const double> x) {
        const Op v = build(x);
        return std::vector<double>{product_haar_risk_exact(u, v), haar_risk(u, v)};
    };

    ResultTable header(with_bound_columns({{"seed"},
                                           {"n"},
                                           {"arm"},
                                           {"run"},
                                           {"lambda"},
                                           {"iteration"},
                                           {"cumulative_shots"},
                                           {"shots_per_eval"},
                                           {"estimated_cost"},
                                           {"exact_cost", Role::Risk},
                                           {"r_prod", Role::Risk},
                                           {"r_haar", Role::Risk}}));
    const std::size_t count = 2 * static_cast<std::size_t>(cfg.runs);
    const auto parts = parallel_map<ResultTable>(count, jobs, [&](std::size_t i) {
        const bool deep = i >= static_cast<std::size_t>(cfg.runs);
        const int run = static_cast<int>(deep ? i - static_cast<std::size_t>(cfg.runs) : i);
        Rng rng = root.split(job_key({5, deep ? 1ULL : 0ULL, static_cast<std::uint64_t>(run)}));
        const EnsembleSpec spec =
            deep ? EnsembleSpec::rand_circ(n, deep_layers, cfg.deep_locality) : EnsembleSpec::haar_prod(n);
        const TrainSet data = make_trainset(u, spec, static_cast<std::size_t>(cfg.train_size), rng);
        std::vector<double> a0 = star;
        for (auto &x : a0) x += rng.uniform(-cfg.init_spread, cfg.init_spread);
        const double lambda = deep ? cfg.lambda_deep : cfg.lambda_product;
        NelderMeadOptions opts;
        opts.initial_step = cfg.nm_step;
        opts.shot_budget = cfg.shot_budget;
        opts.log_every = cfg.log_every;
        const OptTrace tr =
            nelder_mead_shots(data, build, std::move(a0), ShotSchedule(cfg.initial_shots, cfg.shot_growth, cfg.stall_window),
                              NoiseModel::with_total(lambda), rng, opts, monitor);
        ResultTable part(header.columns());
        for (const auto &e : tr.entries) {
            const double r_prod = e.extras[0];
            const double r_haar = e.extras[1];
            std::vector<Cell> row{seed_cell(seed),
                                  integer(n),
                                  std::string(deep ? "deep" : "product"),
                                  integer(run),
                                  lambda,
                                  integer(e.iteration),
                                  integer(static_cast<std::int64_t>(e.cumulative_shots)),
                                  integer(static_cast<std::int64_t>(e.shots_per_eval)),
                                  e.estimated_cost,
                                  e.exact_cost,
                                  r_prod,
                                  r_haar};
            push_bounds(row, exact_bounds(n, r_prod, r_haar));
            part.add_row(std::move(row));
        }
        return part;
    });
    for (const auto &p : parts) header.append(p);
    return header;
}

// ---------------------------------------------------------------- dispatch

ExperimentOutput run_experiment(const ExperimentConfig &cfg, int jobs) {
    cfg.validate();
    const std::uint64_t seed = *cfg.seed;
    ExperimentOutput out;
    switch (cfg.kind) {
        case ExperimentKind::HamiltonianLearn:
            out.results = run_hamiltonian_learn(std::get<HamiltonianLearnConfig>(cfg.params), seed, jobs);
            break;
        case ExperimentKind::ScramblerLearn: {
            ResultTable summary;
            out.results = run_scrambler_learn(std::get<ScramblerLearnConfig>(cfg.params), seed, jobs, &summary);
            out.extras.emplace_back("summary.csv", std::move(summary));
            break;
        }
        case ExperimentKind::TightnessScan:
            out.results = run_tightness_scan(std::get<TightnessScanConfig>(cfg.params), seed, jobs);
            break;
        case ExperimentKind::BoundsVerify:
            out.results = run_bounds_verify(std::get<BoundsVerifyConfig>(cfg.params), seed, jobs);
            break;
        case ExperimentKind::LinearityDemo:
            out.results = run_linearity_demo(std::get<LinearityDemoConfig>(cfg.params));
            break;
        case ExperimentKind::NoisyTrain:
            out.results = run_noisy_train(std::get<NoisyTrainConfig>(cfg.params), seed, jobs);
            break;
    }
    return out;
}

}  // namespace oodl
