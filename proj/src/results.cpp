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

#include "oodl/results.hpp"

#include <Eigen/Core>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "oodl/error.hpp"

namespace oodl {

ResultTable::ResultTable(std::vector<Column> columns) : columns_(std::move(columns)) {
}

void ResultTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) {
        throw Error(Errc::ShapeMismatch, "row has " + std::to_string(row.size()) + " cells, header has " +
                                             std::to_string(columns_.size()));
    }
    rows_.push_back(std::move(row));
}

void ResultTable::append(const ResultTable &other) {
    for (const auto &r : other.rows_) add_row(r);
}

std::size_t ResultTable::index(const std::string &name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i].name == name) return i;
    }
    throw Error(Errc::BadParams, "no column " + name);
}

double ResultTable::real(std::size_t row, const std::string &name) const {
    const Cell &c = rows_.at(row).at(index(name));
    if (const auto *d = std::get_if<double>(&c)) return *d;
    if (const auto *i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
    throw Error(Errc::BadParams, "column " + name + " is not numeric");
}

std::int64_t ResultTable::integer(std::size_t row, const std::string &name) const {
    const Cell &c = rows_.at(row).at(index(name));
    if (const auto *i = std::get_if<std::int64_t>(&c)) return *i;
    throw Error(Errc::BadParams, "column " + name + " is not an integer");
}

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_field(const std::string &text) {
    if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string ResultTable::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out += ',';
        out += csv_field(columns_[i].name);
    }
    out += "\r\n";
    for (const auto &row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            std::visit(
                [&](const auto &v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        out += format_real(v);
                    } else if constexpr (std::is_same_v<T, std::int64_t>) {
                        out += std::to_string(v);
                    } else {
                        out += csv_field(v);
                    }
                },
                row[i]);
        }
        out += "\r\n";
    }
    return out;
}

std::vector<AuditFinding> audit(const ResultTable &table) {
    std::vector<AuditFinding> found;
    for (std::size_t r = 0; r < table.size(); ++r) {
        for (std::size_t c = 0; c < table.columns().size(); ++c) {
            const auto &col = table.columns()[c];
            const Cell &cell = table.rows()[r][c];
            if (col.role == ResultTable::Role::Risk) {
                const double *v = std::get_if<double>(&cell);
                if (v == nullptr || !std::isfinite(*v) || *v < -kRiskSlack || *v > 1 + kRiskSlack) {
                    found.push_back({r, col.name, "risk outside [-1e-9, 1+1e-9]"});
                }
            } else if (col.role == ResultTable::Role::Check) {
                const std::int64_t *v = std::get_if<std::int64_t>(&cell);
                if (v == nullptr || *v != 1) found.push_back({r, col.name, "inequality violated"});
            }
        }
    }
    return found;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) throw Error(Errc::ConfigError, "cannot write " + path.string());
}

nlohmann::json to_json(const Manifest &m) {
    return nlohmann::json{
        {"seed", m.seed},
        {"schema", m.schema},
        {"command", m.command},
        {"duration_s", m.duration_s},
        {"experiment", m.experiment},
        {"jobs", m.jobs},
        {"versions",
         {{"oodl", "0.1.0"},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}},
    };
}

}  // namespace oodl
