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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace noisescramble {

enum class MetricKind { W, C };

inline std::string_view to_string(MetricKind m) {
    return m == MetricKind::W ? "W" : "C";
}

inline MetricKind parse_metric_kind(std::string_view s) {
    if (s == "W") {
        return MetricKind::W;
    }
    if (s == "C") {
        return MetricKind::C;
    }
    fail(ErrorCode::Config, "unknown metric '" + std::string(s) + "'");
}

struct ScalingSample {
    double nu = 1.0;
    double xi = 0.0; ///< eps * nu
    double value = 0.0;
    MetricKind metric_kind = MetricKind::W;
    std::size_t n_qubits = 0;
    std::size_t n_seeds = 1;
};

struct ScalingFit {
    double alpha = 0.0;
    double beta = 0.0;
    double residual = 0.0; ///< RMS misfit in log space
    std::vector<ScalingSample> samples;
};

/// xi e^{-xi} / (1 - e^{-xi}), continuous at xi = 0 where it equals 1.
inline double error_rate_prefactor(double xi) {
    if (xi < 0.0) {
        fail(ErrorCode::Domain, "circuit error rate must be non-negative");
    }
    if (xi == 0.0) {
        return 1.0;
    }
    return xi * std::exp(-xi) / -std::expm1(-xi);
}

/// f(nu) = alpha xi e^{-xi} / (nu^beta (1 - e^{-xi})).
inline double scaling_model(double alpha, double beta, double nu, double xi) {
    return alpha * error_rate_prefactor(xi) / std::pow(nu, beta);
}

/**
 * Least squares in log space. With the xi-dependent prefactor divided out,
 * log f = log alpha - beta log nu is linear, so the solution is closed-form.
 */
inline ScalingFit fit_scaling(const std::vector<ScalingSample> &samples) {
    std::set<double> distinct_nu;
    for (const auto &s : samples) {
        if (!(s.value > 0.0) || !std::isfinite(s.value)) {
            fail(ErrorCode::Fit, "scaling fit needs positive finite values");
        }
        if (!(s.nu >= 1.0)) {
            fail(ErrorCode::Fit, "scaling fit needs nu >= 1");
        }
        distinct_nu.insert(s.nu);
    }
    if (distinct_nu.size() < 3) {
        fail(ErrorCode::Fit, "scaling fit needs at least 3 distinct nu, got " +
                                 std::to_string(distinct_nu.size()));
    }
    const auto n = static_cast<double>(samples.size());
    std::vector<double> x;
    std::vector<double> y;
    x.reserve(samples.size());
    y.reserve(samples.size());
    for (const auto &s : samples) {
        x.push_back(std::log(s.nu));
        y.push_back(std::log(s.value) - std::log(error_rate_prefactor(s.xi)));
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (intercept + slope * x[i]);
        sse += r * r;
    }
    ScalingFit fit;
    fit.alpha = std::exp(intercept);
    fit.beta = -slope;
    fit.residual = std::sqrt(sse / n);
    fit.samples = samples;
    if (!std::isfinite(fit.alpha) || !std::isfinite(fit.beta)) {
        fail(ErrorCode::Fit, "scaling fit produced non-finite parameters");
    }
    return fit;
}

struct ExpansionCheck {
    double exact = 0.0;   ///< alpha xi e^{-xi} / (nu^beta (1 - e^{-xi}))
    double leading = 0.0; ///< alpha / nu^beta
};

/// Compares the model with its xi -> 0 leading term at fixed nu.
inline ExpansionCheck small_xi_expansion_check(double alpha, double beta,
                                               double xi, double nu = 1.0) {
    if (!(xi > 0.0) || xi > 0.5) {
        fail(ErrorCode::Domain, "small-xi check needs xi in (0, 0.5]");
    }
    return {scaling_model(alpha, beta, nu, xi), alpha / std::pow(nu, beta)};
}

struct AlphaRow {
    std::size_t n_qubits = 0;
    double alpha = 0.0;
    double beta = 0.0;
};

struct AlphaTable {
    std::vector<AlphaRow> rows; ///< ascending in n_qubits
    /// The last two alphas differ by at most `saturation_tolerance`
    /// (relative).
    bool saturated = false;
};

inline AlphaTable alpha_vs_qubits(const std::map<std::size_t, ScalingFit> &fits,
                                  double saturation_tolerance = 0.1) {
    AlphaTable table;
    for (const auto &[n, fit] : fits) {
        table.rows.push_back({n, fit.alpha, fit.beta});
    }
    if (table.rows.size() >= 2) {
        const double a = table.rows[table.rows.size() - 2].alpha;
        const double b = table.rows.back().alpha;
        table.saturated = std::abs(b - a) <= saturation_tolerance * std::abs(a);
    }
    return table;
}

} // namespace noisescramble
