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

#include "qkr/scanner.hpp"

#include "qkr/config.hpp"
#include "qkr/error.hpp"
#include "qkr/propagator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <string>
#include <thread>

namespace qkr {

namespace {

constexpr double kFidelityHalf = 0.5;
constexpr double kFitFloor = 0.9;

// Runs task(i) for i in [0, count) on up to `threads` workers. Every result
// goes to its own slot, so the output does not depend on scheduling; the
// exception of the lowest failing index is rethrown.
template <typename Task>
void parallel_for(std::size_t count, int threads, Task&& task)
{
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto n_workers = static_cast<std::size_t>(std::clamp(threads, 1, 256));
    if (n_workers == 1 || count < 2) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < std::min(n_workers, count); ++w) {
            pool.emplace_back(worker);
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

std::string tag(double epsilon)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, " [epsilon=%.17g]", epsilon);
    return buf;
}

} // namespace

const char* to_string(ScanMode mode) noexcept
{
    return mode == ScanMode::position ? "position" : "fidelity";
}

double PowerLawFit::operator()(double n) const
{
    return std::exp(intercept + gamma * std::log(n));
}

double scan_value(int kicks, double phi_d, int l, ScanMode mode, double epsilon)
{
    const SimConfig config = SimConfig::make(kicks, phi_d, epsilon, l);
    try {
        if (mode == ScanMode::fidelity) {
            return fidelity_protocol(config);
        }
        const auto state = evolve(config);
        const auto grid = SpatialGrid::for_half_width(state.half_width());
        return sigma_x(position_density(to_position(state, grid)));
    } catch (const LeakageError& e) {
        throw LeakageError(e.what() + tag(epsilon), e.period());
    } catch (const DomainError& e) {
        throw DomainError(e.what() + tag(epsilon));
    }
}

EpsilonScan scan_epsilon(int kicks, double phi_d, int l, ScanMode mode, double epsilon_max, int points,
                         int threads)
{
    if (points < 33 || points % 2 == 0) {
        throw DomainError("scan needs an odd point count >= 33, got " + std::to_string(points));
    }
    if (!(epsilon_max > 0.0) || epsilon_max >= SimConfig::kEpsilonLimit) {
        throw DomainError("epsilon_max must lie in (0, 0.5)");
    }
    if (mode == ScanMode::fidelity && kicks < 1) {
        throw DomainError("fidelity scan needs at least one kick");
    }

    EpsilonScan scan;
    scan.kicks = kicks;
    scan.phi_d = phi_d;
    scan.l = l;
    scan.mode = mode;
    const int centre = points / 2;
    scan.epsilons.resize(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        // symmetric by construction: eps(-i) == -eps(i) bitwise
        const int offset = i - centre;
        const double mag = epsilon_max * std::abs(offset) / centre;
        scan.epsilons[static_cast<std::size_t>(i)] = offset < 0 ? -mag : mag;
    }
    scan.values.resize(scan.epsilons.size());
    parallel_for(scan.epsilons.size(), threads, [&](std::size_t i) {
        scan.values[i] = scan_value(kicks, phi_d, l, mode, scan.epsilons[i]);
    });
    return scan;
}

std::optional<double> half_level_for(const EpsilonScan& scan)
{
    if (scan.mode == ScanMode::fidelity && !scan.values.empty()
        && std::min(scan.values.front(), scan.values.back()) < kFidelityHalf) {
        return kFidelityHalf;
    }
    return std::nullopt;
}

double scan_width(const EpsilonScan& scan)
{
    return fwhm(scan.profile(), half_level_for(scan));
}

double auto_range(const std::function<double(double)>& profile, int kicks, ScanMode mode, double cap)
{
    if (kicks < 1) {
        throw DomainError("auto_range needs kicks >= 1");
    }
    double range = 0.1 / (static_cast<double>(kicks) * kicks);
    auto edge = [&](double r) { return std::max(profile(r), profile(-r)); };
    auto over_cap = [&](double r) {
        return RangeCapError("auto_range: no bracketing range up to cap " + std::to_string(cap) + " (next "
                             + std::to_string(r) + ") for N=" + std::to_string(kicks));
    };
    if (range > cap) {
        throw over_cap(range);
    }

    if (mode == ScanMode::fidelity) {
        while (!(edge(range) < kFidelityHalf)) {
            range *= 2.0;
            if (range > cap) {
                throw over_cap(range);
            }
        }
        return range;
    }

    double current = edge(range);
    for (;;) {
        const double wider = 2.0 * range;
        if (wider > cap) {
            throw over_cap(wider);
        }
        const double next = edge(wider);
        if (!(next < current)) {
            break;
        }
        range = wider;
        current = next;
    }
    const double peak = profile(0.0);
    if (!(current < 0.5 * (peak + current))) {
        throw NoCrossingError("auto_range: profile has no drop below its peak");
    }
    return range;
}

double auto_range(int kicks, double phi_d, int l, ScanMode mode, double cap)
{
    return auto_range([&](double eps) { return scan_value(kicks, phi_d, l, mode, eps); }, kicks, mode, cap);
}

PowerLawFit fit_power_law(const std::vector<double>& kicks, const std::vector<double>& widths)
{
    if (kicks.size() != widths.size() || kicks.size() < 2) {
        throw DomainError("power-law fit needs matching inputs with at least two points");
    }
    const auto n = static_cast<double>(kicks.size());
    double sx = 0.0, sy = 0.0;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < kicks.size(); ++i) {
        if (!(kicks[i] > 0.0) || !(widths[i] > 0.0)) {
            throw DomainError("power-law fit needs positive abscissa and widths");
        }
        lx.push_back(std::log(kicks[i]));
        ly.push_back(std::log(widths[i]));
        sx += lx.back();
        sy += ly.back();
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) {
        throw DomainError("power-law fit needs at least two distinct kick counts");
    }
    PowerLawFit fit;
    fit.gamma = sxy / sxx;
    fit.intercept = my - fit.gamma * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.intercept + fit.gamma * lx[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

WidthScaling width_scaling(const std::vector<int>& kicks, double phi_d, int l, ScanMode mode,
                           const ScanOptions& options)
{
    if (kicks.size() < 4) {
        throw DomainError("width_scaling needs at least four kick counts");
    }
    for (int n : kicks) {
        if (n < 2) {
            throw DomainError("width_scaling needs every kick count >= 2");
        }
    }

    WidthScaling out;
    out.mode = mode;
    out.kicks = kicks;
    for (int n : kicks) {
        const double range = auto_range(n, phi_d, l, mode, options.range_cap);
        const auto scan = scan_epsilon(n, phi_d, l, mode, range, options.points, options.threads);
        out.ranges.push_back(range);
        out.widths.push_back(scan_width(scan));
    }

    const std::vector<double> xs(kicks.begin(), kicks.end());
    const auto fit = fit_power_law(xs, out.widths);
    out.gamma = fit.gamma;
    out.intercept = fit.intercept;
    out.r_squared = fit.r_squared;
    if (out.r_squared < kFitFloor) {
        throw FitRefusedError("width_scaling: r_squared " + std::to_string(out.r_squared) + " below "
                              + std::to_string(kFitFloor) + " in " + to_string(mode) + " mode");
    }
    return out;
}

ModeComparison compare_modes(const std::vector<int>& kicks, double phi_d, int l, const ScanOptions& options)
{
    ModeComparison out;
    out.position = width_scaling(kicks, phi_d, l, ScanMode::position, options);
    out.fidelity = width_scaling(kicks, phi_d, l, ScanMode::fidelity, options);
    const auto fid_fit = out.fidelity.fit();
    for (std::size_t i = 0; i < kicks.size(); ++i) {
        ComparisonRow row;
        row.kicks = kicks[i];
        row.position_width = out.position.widths[i];
        row.fidelity_width = out.fidelity.widths[i];
        row.ratio = row.position_width / row.fidelity_width;
        row.equal_budget_ratio = row.position_width / fid_fit(0.5 * kicks[i]);
        if (!out.crossover && row.position_width > row.fidelity_width) {
            out.crossover = row.kicks;
        }
        out.rows.push_back(row);
    }
    const double dg = out.position.gamma - out.fidelity.gamma;
    out.fit_crossover = dg != 0.0 ? std::exp((out.fidelity.intercept - out.position.intercept) / dg)
                                  : std::numeric_limits<double>::infinity();
    return out;
}

} // namespace qkr
