/* Copyright 2026 The qkr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "qkr/config.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qkr {

using Json = nlohmann::ordered_json;

struct Column {
    std::string name;
    std::vector<double> values;
};

/// Column-major numeric table; every column has the same length.
struct Table {
    std::vector<Column> columns;

    std::size_t rows() const;
    const Column& column(std::string_view name) const;
};

struct HealthFlags {
    double edge_occupancy = 0.0;
    double norm_drift = 0.0;

    bool leakage_ok() const noexcept;
    bool norm_ok() const noexcept;

    static constexpr double kNormDriftLimit = 1e-10;
};

/// Everything needed to reproduce an output file.
struct RunManifest {
    std::string command;
    SimConfig config;
    /// Command-specific inputs beyond SimConfig (mode, scan points, ...).
    Json parameters = Json::object();
    std::string version;
    /// Omitted (null) in reproducible mode so files byte-compare.
    std::optional<double> wall_time_s;
    HealthFlags health;

    Json to_json() const;
};

const char* library_version() noexcept;

/// Shortest decimal that parses back to the identical double.
std::string format_double(double value);

/// Header row then one line per row, comma separated, '\n' terminated.
std::string to_csv(const Table& table);

/// {"column": [values...], ...} in column order.
Json to_json(const Table& table);

/// {"manifest": ..., "data": ..., "fit": ...} pretty-printed with a trailing
/// newline; "fit" only when given.
std::string render_document(const RunManifest& manifest, const Json& data, const std::optional<Json>& fit = {});

/// Header plus numeric rows. Throws DomainError on ragged or non-numeric input.
Table parse_csv(std::string_view text);

} // namespace qkr
