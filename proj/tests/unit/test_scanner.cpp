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

#include "doctest.h"

#include "qkr/error.hpp"
#include "qkr/scanner.hpp"

#include <cmath>

using namespace qkr;

namespace {

constexpr double kPhi = 0.485;
constexpr double kUniformSigma = 1.8137993642342178506;

} // namespace

TEST_CASE("scan grid and entries at exact resonance")
{
    const auto pos = scan_epsilon(5, kPhi, 1, ScanMode::position, 0.064, 33);
    REQUIRE(pos.epsilons.size() == 33u);
    CHECK(pos.epsilons[16] == 0.0);
    CHECK(pos.epsilons.front() == -0.064);
    CHECK(pos.epsilons.back() == 0.064);
    CHECK(pos.values[16] == doctest::Approx(kUniformSigma).epsilon(1e-12));
    for (std::size_t i = 0; i < 33; ++i) {
        CHECK(pos.epsilons[i] == -pos.epsilons[32 - i]);
        CHECK(std::abs(pos.values[i] - pos.values[32 - i]) < 1e-12);
        CHECK(pos.values[i] <= pos.values[16] + 1e-12);
    }

    const auto fid = scan_epsilon(5, kPhi, 1, ScanMode::fidelity, 0.05, 33);
    CHECK(fid.values[16] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fid.values.front() < 1.0);

    CHECK(scan_value(5, kPhi, 1, ScanMode::position, 0.0) == doctest::Approx(kUniformSigma).epsilon(1e-12));
}

TEST_CASE("scan_epsilon rejects bad grids")
{
    CHECK_THROWS_AS(scan_epsilon(5, kPhi, 1, ScanMode::position, 0.05, 34), DomainError);
    CHECK_THROWS_AS(scan_epsilon(5, kPhi, 1, ScanMode::position, 0.05, 31), DomainError);
    CHECK_THROWS_AS(scan_epsilon(5, kPhi, 1, ScanMode::position, 0.0, 33), DomainError);
    CHECK_THROWS_AS(scan_epsilon(5, kPhi, 1, ScanMode::position, 0.5, 33), DomainError);
    CHECK_THROWS_AS(scan_epsilon(0, kPhi, 1, ScanMode::fidelity, 0.05, 33), DomainError);
}

TEST_CASE("results do not depend on the thread count")
{
    const auto one = scan_epsilon(8, kPhi, 1, ScanMode::fidelity, 0.02, 65, 1);
    const auto four = scan_epsilon(8, kPhi, 1, ScanMode::fidelity, 0.02, 65, 4);
    CHECK(one.epsilons == four.epsilons);
    CHECK(one.values == four.values);
}

TEST_CASE("resonance narrows with more kicks")
{
    for (auto mode : {ScanMode::position, ScanMode::fidelity}) {
        double previous = 1.0;
        for (int N : {4, 6, 9}) {
            const double range = auto_range(N, kPhi, 1, mode);
            const double width = scan_width(scan_epsilon(N, kPhi, 1, mode, range, 65));
            CAPTURE(to_string(mode));
            CAPTURE(N);
            CHECK(width > 0.0);
            CHECK(width < previous);
            previous = width;
        }
    }
}

TEST_CASE("half level choice")
{
    auto fid = scan_epsilon(6, kPhi, 1, ScanMode::fidelity, auto_range(6, kPhi, 1, ScanMode::fidelity), 65);
    CHECK(half_level_for(fid) == 0.5);
    const auto pos = scan_epsilon(6, kPhi, 1, ScanMode::position, 0.03, 33);
    CHECK_FALSE(half_level_for(pos).has_value());
}

TEST_CASE("auto_range on synthetic profiles")
{
    auto bell = [](double e) { return std::exp(-std::log(2.0) * (e / 1e-4) * (e / 1e-4)); };
    const double r = auto_range(bell, 100, ScanMode::fidelity);
    CHECK(r >= 1e-4);
    CHECK(r < 4e-4);

    auto plateau = [](double e) { return 2.0 - std::min(std::abs(e) / 0.01, 1.0); };
    CHECK(auto_range(plateau, 10, ScanMode::position) == doctest::Approx(0.016));

    auto falling = [](double e) { return 1.0 / (1.0 + e * e); };
    CHECK_THROWS_AS(auto_range(falling, 10, ScanMode::position), RangeCapError);
    auto flat = [](double) { return 1.0; };
    CHECK_THROWS_AS(auto_range(flat, 10, ScanMode::fidelity), RangeCapError);
    CHECK_THROWS_AS(auto_range(bell, 0, ScanMode::fidelity), DomainError);
}

TEST_CASE("fit_power_law")
{
    std::vector<double> n, w;
    for (double k : {5.0, 6.0, 8.0, 11.0, 15.0}) {
        n.push_back(k);
        w.push_back(3.0 * std::pow(k, -2.5));
    }
    const auto fit = fit_power_law(n, w);
    CHECK(fit.gamma == doctest::Approx(-2.5).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit(10.0) == doctest::Approx(3.0 * std::pow(10.0, -2.5)).epsilon(1e-12));

    CHECK_THROWS_AS(fit_power_law({5.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(fit_power_law({5.0, 5.0}, {1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(fit_power_law({5.0, 6.0}, {1.0, -2.0}), DomainError);
}

TEST_CASE("width_scaling refits to its own gamma")
{
    const auto s = width_scaling({5, 6, 7, 8}, kPhi, 1, ScanMode::fidelity);
    REQUIRE(s.widths.size() == 4u);
    std::vector<double> n(s.kicks.begin(), s.kicks.end());
    const auto refit = fit_power_law(n, s.widths);
    CHECK(refit.gamma == s.gamma);
    CHECK(s.r_squared > 0.99);
    CHECK(s.gamma < -2.5);

    CHECK_THROWS_AS(width_scaling({5, 6, 7}, kPhi, 1, ScanMode::fidelity), DomainError);
    CHECK_THROWS_AS(width_scaling({1, 6, 7, 8}, kPhi, 1, ScanMode::fidelity), DomainError);
}

TEST_CASE("compare_modes")
{
    const auto cmp = compare_modes({5, 6, 8, 10, 12}, kPhi, 1);
    REQUIRE(cmp.rows.size() == 5u);
    for (std::size_t i = 0; i < cmp.rows.size(); ++i) {
        const auto& row = cmp.rows[i];
        CHECK(row.ratio == doctest::Approx(row.position_width / row.fidelity_width));
        CHECK(row.ratio < 1.0);
        if (i > 0) {
            CHECK(row.ratio > cmp.rows[i - 1].ratio);
        }
    }
    CHECK_FALSE(cmp.crossover.has_value());
    CHECK(cmp.fit_crossover > 12.0);
    CHECK(cmp.fit_crossover < 25.0);
    CHECK(cmp.position.gamma > cmp.fidelity.gamma);
}

TEST_CASE("mode names")
{
    CHECK(std::string(to_string(ScanMode::position)) == "position");
    CHECK(std::string(to_string(ScanMode::fidelity)) == "fidelity");
}
