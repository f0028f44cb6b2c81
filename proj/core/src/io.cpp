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

#include "qkr/io.hpp"

#include "qkr/error.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#ifndef QKR_VERSION
#define QKR_VERSION "0.0.0"
#endif

namespace qkr {

std::size_t Table::rows() const
{
    return columns.empty() ? 0 : columns.front().values.size();
}

const Column& Table::column(std::string_view name) const
{
    for (const auto& c : columns) {
        if (c.name == name) {
            return c;
        }
    }
    throw DomainError("no column named '" + std::string(name) + "'");
}

bool HealthFlags::leakage_ok() const noexcept
{
    return edge_occupancy < 1e-14;
}

bool HealthFlags::norm_ok() const noexcept
{
    return norm_drift < kNormDriftLimit;
}

Json RunManifest::to_json() const
{
    Json cfg = Json::object();
    cfg["kicks"] = config.kicks;
    cfg["phi_d"] = config.phi_d;
    cfg["epsilon"] = config.epsilon;
    cfg["l"] = config.l;
    cfg["half_width"] = config.half_width;
    cfg["n_points"] = config.n_points;
    cfg["hbar_s"] = config.hbar_s ? Json(*config.hbar_s) : Json(nullptr);

    Json j = Json::object();
    j["command"] = command;
    j["config"] = std::move(cfg);
    j["parameters"] = parameters;
    j["version"] = version;
    j["wall_time_s"] = wall_time_s ? Json(*wall_time_s) : Json(nullptr);
    j["health"] = {
        {"edge_occupancy", health.edge_occupancy},
        {"norm_drift", health.norm_drift},
        {"leakage_ok", health.leakage_ok()},
        {"norm_ok", health.norm_ok()},
    };
    return j;
}

const char* library_version() noexcept
{
    return QKR_VERSION;
}

std::string format_double(double value)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table)
{
    const std::size_t n = table.rows();
    for (const auto& c : table.columns) {
        if (c.values.size() != n) {
            throw DomainError("to_csv: ragged table");
        }
    }
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out += (c ? "," : "") + table.columns[c].name;
    }
    out += '\n';
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) {
                out += ',';
            }
            out += format_double(table.columns[c].values[r]);
        }
        out += '\n';
    }
    return out;
}

Json to_json(const Table& table)
{
    Json j = Json::object();
    for (const auto& c : table.columns) {
        j[c.name] = c.values;
    }
    return j;
}

std::string render_document(const RunManifest& manifest, const Json& data, const std::optional<Json>& fit)
{
    Json doc = Json::object();
    doc["manifest"] = manifest.to_json();
    doc["data"] = data;
    if (fit) {
        doc["fit"] = *fit;
    }
    return doc.dump(2) + "\n";
}

Table parse_csv(std::string_view text)
{
    Table table;
    std::istringstream in{std::string(text)};
    std::string line;
    bool header = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::size_t start = 0;
        for (;;) {
            const auto comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        if (header) {
            for (auto& name : cells) {
                table.columns.push_back(Column{name, {}});
            }
            header = false;
            continue;
        }
        if (cells.size() != table.columns.size()) {
            throw DomainError("parse_csv: line " + std::to_string(line_no) + " has " + std::to_string(cells.size())
                              + " cells, expected " + std::to_string(table.columns.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double v = 0.0;
            const auto& s = cells[c];
            const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
                throw DomainError("parse_csv: line " + std::to_string(line_no) + ": '" + s + "' is not a number");
            }
            table.columns[c].values.push_back(v);
        }
    }
    if (header) {
        throw DomainError("parse_csv: empty input");
    }
    return table;
}

} // namespace qkr
