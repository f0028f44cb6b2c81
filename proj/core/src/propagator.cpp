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

#include "qkr/propagator.hpp"

#include "qkr/error.hpp"

#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace qkr {

namespace {

constexpr int kMaxHalfWidth = 1 << 14;

std::size_t wrap(int m, int n)
{
    const int r = m % n;
    return static_cast<std::size_t>(r < 0 ? r + n : r);
}

// Precomputed kick factors and scratch for repeated kicks on one grid.
class Kicker {
public:
    Kicker(const KickOperator& op, const SpatialGrid& grid)
        : n_(grid.size()), factors_(static_cast<std::size_t>(n_)), buf_(static_cast<std::size_t>(n_))
    {
        const double s = static_cast<double>(static_cast<int>(op.sign));
        for (int j = 0; j < n_; ++j) {
            factors_[static_cast<std::size_t>(j)] = std::polar(1.0, -s * op.phi * std::cos(grid.node(j)));
        }
    }

    // The 1/sqrt(2 pi) and sqrt(2 pi)/n factors of the two transforms fold
    // into a single 1/n.
    void apply(MomentumWavefunction& wf)
    {
        const int M = wf.half_width();
        std::fill(buf_.begin(), buf_.end(), complex{});
        for (int m = -M; m <= M; ++m) {
            buf_[wrap(m, n_)] = wf(m);
        }
        detail::backward_dft(buf_);
        for (std::size_t j = 0; j < buf_.size(); ++j) {
            buf_[j] *= factors_[j];
        }
        detail::forward_dft(buf_);
        const double scale = 1.0 / n_;
        for (int m = -M; m <= M; ++m) {
            wf(m) = buf_[wrap(m, n_)] * scale;
        }
    }

private:
    int n_;
    std::vector<complex> factors_;
    std::vector<complex> buf_;
};

void check_leakage(const MomentumWavefunction& wf, int period)
{
    const double edge = wf.edge_occupancy();
    if (!(edge < MomentumWavefunction::kLeakageBound)) {
        std::string msg = "edge occupancy " + std::to_string(edge) + " exceeds truncation bound at M="
                          + std::to_string(wf.half_width());
        if (period > 0) {
            msg += " (kick " + std::to_string(period) + ")";
        }
        throw LeakageError(msg, period);
    }
}

void apply_free_in_place(MomentumWavefunction& wf, const FreePhaseSpec& spec)
{
    if (spec.is_identity()) {
        return;
    }
    const int M = wf.half_width();
    for (int m = -M; m <= M; ++m) {
        wf(m) *= std::polar(1.0, -spec.phase(m));
    }
}

SpatialGrid working_grid(int half_width, int requested)
{
    const SpatialGrid fallback = SpatialGrid::for_half_width(half_width);
    return requested >= fallback.size() ? SpatialGrid(requested) : fallback;
}

MomentumWavefunction run_kicks(const SimConfig& config, int half_width, const SpatialGrid& grid)
{
    auto wf = init_momentum_eigenstate(half_width);
    const FreePhaseSpec free = free_phase_of(config);
    Kicker kicker(KickOperator{config.phi_d, KickSign::normal}, grid);
    for (int k = 1; k <= config.kicks; ++k) {
        if (k > 1) {
            apply_free_in_place(wf, free);
        }
        kicker.apply(wf);
        check_leakage(wf, k);
    }
    return wf;
}

} // namespace

FreePhaseSpec FreePhaseSpec::resonant_relative(int l, double epsilon)
{
    if (l < 1) {
        throw DomainError("resonance order l must be >= 1");
    }
    if (!std::isfinite(epsilon)) {
        throw DomainError("epsilon must be finite");
    }
    FreePhaseSpec s;
    s.mode_ = Mode::resonant_relative;
    s.l_ = l;
    s.epsilon_ = epsilon;
    return s;
}

FreePhaseSpec FreePhaseSpec::general(double hbar_s)
{
    if (!std::isfinite(hbar_s) || hbar_s <= 0.0) {
        throw DomainError("hbar_s must be a positive real");
    }
    FreePhaseSpec s;
    s.mode_ = Mode::general;
    s.hbar_s_ = hbar_s;
    return s;
}

double FreePhaseSpec::phase(int m) const
{
    const double m2 = static_cast<double>(m) * m;
    if (mode_ == Mode::resonant_relative) {
        return kTwoPi * l_ * m2 * epsilon_;
    }
    // hbar_s m^2 / 2 = 2 pi * (hbar_s / 4 pi) m^2; keep only the fractional
    // number of turns, in long double.
    constexpr long double four_pi = 12.566370614359172953850573533118011536788677597500423283899778L;
    const long double turns = static_cast<long double>(hbar_s_) / four_pi * static_cast<long double>(m2);
    const long double frac = turns - std::floor(turns);
    return static_cast<double>(frac * (four_pi / 2.0L));
}

FreePhaseSpec free_phase_of(const SimConfig& config)
{
    if (config.hbar_s) {
        return FreePhaseSpec::general(*config.hbar_s);
    }
    return FreePhaseSpec::resonant_relative(config.l, config.epsilon);
}

MomentumWavefunction apply_kick(const MomentumWavefunction& wf, const KickOperator& op, const SpatialGrid& grid)
{
    if (!grid.resolves(wf.half_width())) {
        throw GridTooSmallError("grid of " + std::to_string(grid.size()) + " points cannot resolve ladder M="
                                + std::to_string(wf.half_width()));
    }
    MomentumWavefunction out = wf;
    Kicker(op, grid).apply(out);
    check_leakage(out, -1);
    return out;
}

MomentumWavefunction apply_kick(const MomentumWavefunction& wf, const KickOperator& op)
{
    return apply_kick(wf, op, SpatialGrid::for_half_width(wf.half_width()));
}

MomentumWavefunction apply_free(const MomentumWavefunction& wf, const FreePhaseSpec& spec)
{
    MomentumWavefunction out = wf;
    apply_free_in_place(out, spec);
    return out;
}

MomentumWavefunction evolve(const SimConfig& config)
{
    config.validate();
    int half_width = config.half_width;
    int n_points = config.n_points;
    for (;;) {
        try {
            return run_kicks(config, half_width, working_grid(half_width, n_points));
        } catch (const LeakageError& e) {
            if (2 * half_width > kMaxHalfWidth) {
                throw LeakageError(std::string(e.what()) + "; ladder cannot grow past M="
                                       + std::to_string(half_width),
                                   e.period());
            }
            half_width *= 2;
            n_points *= 2;
        }
    }
}

double fidelity_protocol(const SimConfig& config)
{
    if (config.kicks < 1) {
        throw DomainError("fidelity protocol needs at least one kick");
    }
    const MomentumWavefunction state = evolve(config);
    const double reversal = config.kicks * config.phi_d;

    // Room for the reversed pulse to spread the state further.
    int half_width = state.half_width() + static_cast<int>(std::ceil(reversal));
    for (;;) {
        try {
            const auto padded = state.resized(half_width);
            const auto grid = working_grid(half_width, config.n_points);
            const auto final_state = apply_kick(padded, KickOperator{reversal, KickSign::reversed}, grid);
            return std::norm(final_state(0));
        } catch (const LeakageError& e) {
            if (2 * half_width > kMaxHalfWidth) {
                throw LeakageError(std::string(e.what()) + " (reversal pulse)", config.kicks + 1);
            }
            half_width *= 2;
        }
    }
}

double fidelity_protocol(int kicks, double phi_d, double epsilon, int l)
{
    return fidelity_protocol(SimConfig::make(kicks, phi_d, epsilon, l));
}

} // namespace qkr
