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
#include "oracles.hpp"

#include "qkr/bessel.hpp"
#include "qkr/dense.hpp"
#include "qkr/error.hpp"
#include "qkr/observables.hpp"
#include "qkr/propagator.hpp"
#include "qkr/resonance.hpp"

#include <cmath>
#include <random>

using namespace qkr;

namespace {

MomentumWavefunction kicked_ground(double phi, int M)
{
    return apply_kick(init_momentum_eigenstate(M), KickOperator{phi, KickSign::normal});
}

MomentumWavefunction from_vector(const Eigen::VectorXcd& v, int M)
{
    MomentumWavefunction wf(M);
    for (int m = -M; m <= M; ++m) {
        wf(m) = v(m + M);
    }
    return wf;
}

Eigen::VectorXcd to_vector(const MomentumWavefunction& wf)
{
    const int M = wf.half_width();
    Eigen::VectorXcd v(2 * M + 1);
    for (int m = -M; m <= M; ++m) {
        v(m + M) = wf(m);
    }
    return v;
}

} // namespace

TEST_CASE("a single kick on the ground state gives Bessel amplitudes")
{
    const auto wf = kicked_ground(0.485, 16);
    for (int m = -16; m <= 16; ++m) {
        CAPTURE(m);
        CHECK(std::abs(wf(m) - oracle::resonant_amplitude(m, 0.485)) < 1e-14);
    }
    CHECK(std::abs(wf(0) - complex(0.94205266552017490791)) < 1e-14);
    CHECK(std::abs(wf(1) - complex(0.0, -0.2354392846786334848)) < 1e-14);
    CHECK(std::abs(wf(-1) - complex(0.0, -0.2354392846786334848)) < 1e-14);
}

TEST_CASE("zero-strength kick is the identity")
{
    std::mt19937_64 rng(5);
    const auto wf = oracle::random_state(24, 20, rng);
    const auto out = apply_kick(wf, KickOperator{0.0, KickSign::normal});
    CHECK(oracle::max_abs_diff(wf, out) < 1e-14);
}

TEST_CASE("property: a reversed kick undoes a kick")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> strength(0.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double phi = strength(rng);
        const auto wf = oracle::random_state(48, 10, rng);
        const auto there = apply_kick(wf, KickOperator{phi, KickSign::normal});
        const auto back = apply_kick(there, KickOperator{phi, KickSign::reversed});
        CAPTURE(phi);
        CHECK(oracle::max_abs_diff(wf, back) < 1e-13);
    }
}

TEST_CASE("property: a kick leaves the position density unchanged")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const auto wf = oracle::random_state(40, 12, rng);
        const auto grid = SpatialGrid::for_half_width(40);
        const auto kicked = apply_kick(wf, KickOperator{1.3, KickSign::normal}, grid);
        const auto a = position_density(to_position(wf, grid));
        const auto b = position_density(to_position(kicked, grid));
        CHECK(l1_distance(a, b) < 1e-12);
    }
}

TEST_CASE("free flight phases")
{
    std::mt19937_64 rng(31);
    const auto wf = oracle::random_state(12, 12, rng);

    const auto id = apply_free(wf, FreePhaseSpec::resonant_relative(1, 0.0));
    CHECK(oracle::max_abs_diff(wf, id) == 0.0);
    CHECK(FreePhaseSpec::resonant_relative(3, 0.0).is_identity());

    const double eps = 1e-3;
    const auto out = apply_free(wf, FreePhaseSpec::resonant_relative(2, eps));
    for (int m = -12; m <= 12; ++m) {
        const complex expected = wf(m) * std::polar(1.0, -2.0 * kTwoPi * m * m * eps);
        CHECK(std::abs(out(m) - expected) < 1e-15);
    }

    const auto full = apply_free(wf, FreePhaseSpec::general(4.0 * kPi));
    CHECK(oracle::max_abs_diff(wf, full) < 1e-13);

    const auto anti = apply_free(wf, FreePhaseSpec::general(kTwoPi));
    for (int m = -12; m <= 12; ++m) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        CHECK(std::abs(anti(m) - sign * wf(m)) < 1e-13);
    }
}

TEST_CASE("tiny detuning keeps full relative precision in the phase")
{
    const auto spec = FreePhaseSpec::resonant_relative(1, 1e-12);
    for (int m : {1, 10, 100, 1000}) {
        const double expected = kTwoPi * m * m * 1e-12;
        CHECK(std::abs(spec.phase(m) - expected) <= 4e-16 * expected);
    }
    const auto general = FreePhaseSpec::general(4.0 * kPi + 1e-9);
    CHECK(std::abs(general.phase(1000) - 0.5e-9 * 1e6) < 1e-9);
}

TEST_CASE("exact resonance reproduces the closed-form resonant state")
{
    for (int N : {1, 2, 5, 10, 40}) {
        const auto config = SimConfig::make(N, 0.485, 0.0);
        const auto wf = evolve(config);
        const auto ref = resonant_state(N, 0.485, wf.half_width());
        CAPTURE(N);
        CHECK(oracle::max_abs_diff(wf, ref) < 1e-12);
        for (int m = -5; m <= 5; ++m) {
            CHECK(std::abs(wf(m) - oracle::resonant_amplitude(m, N * 0.485)) < 1e-12);
        }

        const auto grid = SpatialGrid::for_half_width(wf.half_width());
        const auto rho = position_density(to_position(wf, grid));
        for (double v : rho.values()) {
            CHECK(std::abs(v - 1.0 / kTwoPi) < 1e-12);
        }
    }
}

TEST_CASE("norm is conserved over a hundred periods")
{
    const auto wf = evolve(SimConfig::make(100, 0.485, 0.013));
    CHECK(std::abs(wf.norm_squared() - 1.0) < 1e-10);
    CHECK(wf.truncation_healthy());
}

TEST_CASE("antiresonance alternates between the ground and the kicked state")
{
    for (int k = 1; k <= 10; ++k) {
        auto config = SimConfig::make(k, 0.485, 0.0);
        config.hbar_s = kTwoPi;
        const auto wf = evolve(config);
        CAPTURE(k);
        if (k % 2 == 0) {
            CHECK(std::abs(std::norm(wf(0)) - 1.0) < 1e-12);
        } else {
            for (int m = -6; m <= 6; ++m) {
                const double j = bessel_j(m, 0.485);
                CHECK(std::abs(std::norm(wf(m)) - j * j) < 1e-12);
            }
        }
    }
}

TEST_CASE("kick_matrix")
{
    const auto id = kick_matrix(0.0, 10);
    CHECK((id.matrix - Eigen::MatrixXcd::Identity(21, 21)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK_FALSE(id.truncation_warning);

    const auto k = kick_matrix(0.485, 20);
    CHECK(k.unitarity_error < 1e-14);
    CHECK_FALSE(k.truncation_warning);
    for (int n = -20; n <= 20; ++n) {
        CHECK(std::abs(k.matrix(n + 20, 20) - oracle::resonant_amplitude(n, 0.485)) < 1e-15);
    }

    CHECK(kick_matrix(8.0, 6).truncation_warning);

    const auto fwd = kick_matrix(1.7, 40);
    const auto bwd = kick_matrix(-1.7, 40);
    const Eigen::MatrixXcd prod = fwd.matrix * bwd.matrix;
    // interior block is far enough from the truncation edge
    const Eigen::MatrixXcd inner = prod.block(20, 20, 41, 41);
    CHECK((inner - Eigen::MatrixXcd::Identity(41, 41)).cwiseAbs().maxCoeff() < 1e-13);

    CHECK_THROWS_AS(kick_matrix(1.0, kDenseHalfWidthCap + 1), SizeGuardError);
}

TEST_CASE("property: spectral and dense propagation agree")
{
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> kicks(0, 12);
    std::uniform_real_distribution<double> strength(0.1, 2.0);
    std::uniform_real_distribution<double> detuning(-0.2, 0.2);
    std::uniform_int_distribution<int> order(1, 3);
    for (int trial = 0; trial < 12; ++trial) {
        SimConfig config;
        config.kicks = kicks(rng);
        config.phi_d = strength(rng);
        config.epsilon = detuning(rng);
        config.l = order(rng);
        config.half_width = std::min(128, SimConfig::default_half_width(config.kicks, config.phi_d));
        config.n_points = SimConfig::default_n_points(config.half_width);
        if (trial % 3 == 0) {
            config.hbar_s = strength(rng) * 3.0;
        }
        CAPTURE(config.kicks);
        CAPTURE(config.phi_d);
        CAPTURE(config.epsilon);
        const auto fast = evolve(config);
        const auto slow = evolve_dense(config);
        CHECK(oracle::max_abs_diff(fast, slow) < 1e-10);
    }

    SimConfig big = SimConfig::make(2, 0.485, 0.0);
    big.half_width = kDenseHalfWidthCap + 1;
    big.n_points = SimConfig::default_n_points(big.half_width);
    CHECK_THROWS_AS(evolve_dense(big), SizeGuardError);
}

TEST_CASE("fidelity protocol")
{
    for (int N : {1, 5, 20}) {
        CHECK(std::abs(fidelity_protocol(N, 0.485, 0.0) - 1.0) < 1e-12);
    }

    const int N = 5;
    const double eps = 1e-6;
    SimConfig config = SimConfig::make(N, 0.485, eps);
    const auto state = evolve_dense(config);
    const int M = state.half_width() + 8;
    const auto reverse = kick_matrix(-N * 0.485, M);
    const Eigen::VectorXcd out = reverse.matrix * to_vector(state.resized(M));
    const double expected = std::norm(from_vector(out, M)(0));
    CHECK(std::abs(fidelity_protocol(config) - expected) < 1e-12);
    CHECK(fidelity_protocol(config) < 1.0);

    for (double e : {1e-4, 3e-3, 0.02}) {
        const double plus = fidelity_protocol(12, 0.485, e);
        const double minus = fidelity_protocol(12, 0.485, -e);
        CHECK(std::abs(plus - minus) < 1e-12);
        CHECK(plus < 1.0);
    }

    CHECK_THROWS_AS(fidelity_protocol(0, 0.485, 0.0), DomainError);
}

TEST_CASE("leakage detection and ladder growth")
{
    CHECK_THROWS_AS(kicked_ground(20.0, 8), LeakageError);

    SimConfig tight = SimConfig::make(10, 0.485, 0.0);
    tight.half_width = 3;
    tight.n_points = 16;
    const auto wf = evolve(tight);
    CHECK(wf.half_width() > 3);
    CHECK(wf.truncation_healthy());
    CHECK(oracle::max_abs_diff(wf, resonant_state(10, 0.485, wf.half_width())) < 1e-12);

    SimConfig hopeless = SimConfig::make(3, 4500.0, 0.0);
    hopeless.half_width = 9000;
    hopeless.n_points = SimConfig::default_n_points(9000);
    try {
        evolve(hopeless);
        FAIL("expected LeakageError");
    } catch (const LeakageError& e) {
        CHECK(e.period() == 2);
    }
}
