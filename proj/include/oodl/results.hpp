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
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace oodl {

using Cell = std::variant<std::int64_t, double, std::string>;

/// A flat result table. Columns are tagged so the audit knows which hold
/// risks (must lie in [-1e-9, 1 + 1e-9]) and which hold inequality checks
/// (0/1 integers that must all be 1).
class ResultTable {
public:
    enum class Role { Plain, Risk, Check };

    struct Column {
        std::string name;
        Role role = Role::Plain;
    };

    ResultTable() = default;
    explicit ResultTable(std::vector<Column> columns);

    const std::vector<Column> &columns() const noexcept {
        return columns_;
    }
    const std::vector<std::vector<Cell>> &rows() const noexcept {
        return rows_;
    }
    std::size_t size() const noexcept {
        return rows_.size();
    }

    /// Throws ShapeMismatch when the row width differs from the header.
    void add_row(std::vector<Cell> row);
    void append(const ResultTable &other);

    /// Index of a column by name; throws BadParams when absent.
    std::size_t index(const std::string &name) const;
    double real(std::size_t row, const std::string &name) const;
    std::int64_t integer(std::size_t row, const std::string &name) const;

    /// Header line plus one line per row, CRLF terminated, reals as %.17g.
    std::string to_csv() const;

private:
    std::vector<Column> columns_;
    std::vector<std::vector<Cell>> rows_;
};

/// Shortest round-trip-safe text for a real (printf %.17g).
std::string format_real(double x);
/// RFC-4180 field quoting: wrap in quotes when the text holds a comma,
/// quote, CR or LF, doubling embedded quotes.
std::string csv_field(const std::string &text);

struct AuditFinding {
    std::size_t row;
    std::string column;
    std::string message;
};

inline constexpr double kRiskSlack = 1e-9;

/// Every risk column within [-kRiskSlack, 1 + kRiskSlack] and every check
/// column equal to 1.
std::vector<AuditFinding> audit(const ResultTable &table);

void write_text(const std::filesystem::path &path, const std::string &text);

struct Manifest {
    std::uint64_t seed = 0;
    int schema = 1;
    std::string command;
    double duration_s = 0;
    std::string experiment;
    int jobs = 1;
};

nlohmann::json to_json(const Manifest &m);

}  // namespace oodl
