// Copyright 2026 The noisescramble Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include "noisescramble/error.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace noisescramble {

inline constexpr int kResultSchemaVersion = 1;
inline constexpr std::string_view kResultSchemaLine =
    "# noisescramble-results schema_version=1";
inline constexpr std::string_view kResultHeader =
    "family,n_qubits,epsilon,layers,nu,seed,W,C_rel,C_abs,F,lambda1,"
    "trace_dist_wn,eta_est,wall_time_seconds,null_reason";

/// One (grid point, seed) evaluation. W and C_rel are empty exactly when
/// `null_reason` is non-empty.
struct ResultRow {
    std::string family;
    std::size_t n_qubits = 0;
    double epsilon = 0.0;
    std::size_t layers = 0;
    std::size_t nu = 0;
    std::uint64_t seed = 0;
    std::optional<double> W;
    std::optional<double> C_rel;
    double C_abs = 0.0;
    double F = 0.0;
    double lambda1 = 0.0;
    double trace_dist_wn = 0.0;
    double eta_est = 0.0;
    double wall_time_seconds = 0.0;
    std::string null_reason;
};

/// %.17g, the shortest format that round-trips every double.
inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_result_header(std::ostream &out) {
    out << kResultSchemaLine << '\n' << kResultHeader << '\n';
}

inline void write_result_row(std::ostream &out, const ResultRow &r) {
    const auto opt = [](const std::optional<double> &v) {
        return v ? format_double(*v) : std::string();
    };
    out << r.family << ',' << r.n_qubits << ',' << format_double(r.epsilon) << ','
        << r.layers << ',' << r.nu << ',' << r.seed << ',' << opt(r.W) << ','
        << opt(r.C_rel) << ',' << format_double(r.C_abs) << ','
        << format_double(r.F) << ',' << format_double(r.lambda1) << ','
        << format_double(r.trace_dist_wn) << ',' << format_double(r.eta_est)
        << ',' << format_double(r.wall_time_seconds) << ',' << r.null_reason
        << '\n';
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

inline double parse_csv_double(const std::string &s, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception &) {
        fail(ErrorCode::Parse, "line " + std::to_string(line) +
                                   ": bad number '" + s + "'");
    }
}

inline std::uint64_t parse_csv_uint(const std::string &s, std::size_t line) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception &) {
        fail(ErrorCode::Parse, "line " + std::to_string(line) +
                                   ": bad integer '" + s + "'");
    }
}

} // namespace detail

/// Reads a results CSV written by write_result_header/write_result_row.
inline std::vector<ResultRow> read_results(std::istream &in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) {
        fail(ErrorCode::Parse, "results file is empty");
    }
    ++lineno;
    if (line != kResultSchemaLine) {
        fail(ErrorCode::Parse, "line 1: expected '" +
                                   std::string(kResultSchemaLine) + "'");
    }
    if (!std::getline(in, line) || line != kResultHeader) {
        fail(ErrorCode::Parse, "line 2: unexpected column header");
    }
    ++lineno;
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        const auto f = detail::split_csv_line(line);
        if (f.size() != 15) {
            fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": expected 15 fields, got " +
                                       std::to_string(f.size()));
        }
        ResultRow r;
        r.family = f[0];
        r.n_qubits = detail::parse_csv_uint(f[1], lineno);
        r.epsilon = detail::parse_csv_double(f[2], lineno);
        r.layers = detail::parse_csv_uint(f[3], lineno);
        r.nu = detail::parse_csv_uint(f[4], lineno);
        r.seed = detail::parse_csv_uint(f[5], lineno);
        if (!f[6].empty()) {
            r.W = detail::parse_csv_double(f[6], lineno);
        }
        if (!f[7].empty()) {
            r.C_rel = detail::parse_csv_double(f[7], lineno);
        }
        r.C_abs = detail::parse_csv_double(f[8], lineno);
        r.F = detail::parse_csv_double(f[9], lineno);
        r.lambda1 = detail::parse_csv_double(f[10], lineno);
        r.trace_dist_wn = detail::parse_csv_double(f[11], lineno);
        r.eta_est = detail::parse_csv_double(f[12], lineno);
        r.wall_time_seconds = detail::parse_csv_double(f[13], lineno);
        r.null_reason = f[14];
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace noisescramble
