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

#include "oodl/cli.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "oodl/config.hpp"
#include "oodl/error.hpp"
#include "oodl/experiments.hpp"
#include "oodl/results.hpp"

namespace oodl {

namespace {

constexpr ExperimentKind kAllKinds[] = {
    ExperimentKind::HamiltonianLearn, ExperimentKind::ScramblerLearn, ExperimentKind::TightnessScan,
    ExperimentKind::BoundsVerify,     ExperimentKind::LinearityDemo,  ExperimentKind::NoisyTrain,
};

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out = "out";
    int jobs = 1;
    bool quiet = false;
};

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::BoundViolation: return kExitViolation;
        case Errc::ConfigError:
        case Errc::BadSpec:
        case Errc::BadParams:
        case Errc::TooLarge:
        case Errc::NotLocallyScrambled: return kExitConfig;
        default: return kExitFailure;
    }
}

}  // namespace

int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Out-of-distribution generalization experiments for learned unitaries"};
    app.require_subcommand(1);
    Options opts;
    std::optional<ExperimentKind> chosen;
    for (ExperimentKind kind : kAllKinds) {
        CLI::App *sub = app.add_subcommand(std::string(kind_name(kind)));
        sub->add_option("--config", opts.config, "JSON config (schema 1)");
        sub->add_option("--seed", opts.seed, "Root seed; overrides the config");
        sub->add_option("--out", opts.out, "Output directory")->capture_default_str();
        sub->add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_flag("--quiet", opts.quiet, "Suppress the progress summary");
        sub->callback([&chosen, kind] { chosen = kind; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    std::string command;
    for (int i = 0; i < argc; ++i) {
        if (i) command += ' ';
        command += argv[i];
    }

    const auto started = std::chrono::steady_clock::now();
    try {
        ExperimentConfig cfg = opts.config.empty() ? default_config(*chosen) : load_config(opts.config, *chosen);
        if (opts.seed) cfg.seed = opts.seed;
        cfg.validate();

        const ExperimentOutput result = run_experiment(cfg, opts.jobs);

        const std::filesystem::path dir(opts.out);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw Error(Errc::ConfigError, "cannot create output directory " + dir.string());
        write_text(dir / "results.csv", result.results.to_csv());
        for (const auto &[name, table] : result.extras) write_text(dir / name, table.to_csv());
        write_text(dir / "config.echo.json", to_json(cfg).dump(2) + "\n");

        Manifest manifest;
        manifest.seed = *cfg.seed;
        manifest.schema = kConfigSchema;
        manifest.command = command;
        manifest.experiment = std::string(kind_name(cfg.kind));
        manifest.jobs = opts.jobs;
        manifest.duration_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        write_text(dir / "manifest.json", to_json(manifest).dump(2) + "\n");

        std::vector<std::pair<std::string, AuditFinding>> findings;
        for (const auto &f : audit(result.results)) findings.emplace_back("results.csv", f);
        for (const auto &[name, table] : result.extras) {
            for (const auto &f : audit(table)) findings.emplace_back(name, f);
        }
        if (!findings.empty()) {
            err << "audit: " << findings.size() << " violation(s)\n";
            for (std::size_t i = 0; i < findings.size() && i < 10; ++i) {
                const auto &[file, f] = findings[i];
                err << "  " << file << " row " << f.row + 1 << " column " << f.column << ": " << f.message << '\n';
            }
            return kExitViolation;
        }
        if (!opts.quiet) {
            out << kind_name(cfg.kind) << ": " << result.results.size() << " rows -> " << (dir / "results.csv").string()
                << " (" << format_real(manifest.duration_s) << " s)\n";
        }
        return kExitOk;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

int cli_main(int argc, const char *const *argv) {
    return cli_main(argc, argv, std::cout, std::cerr);
}

}  // namespace oodl
