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

#include "cli.hpp"

#include "qkr/qkr.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

namespace qkr::cli {

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CoreFlags {
    int kicks = 0;
    double phi_d = 0.485;
    double epsilon = 0.0;
    int l = 1;
    std::optional<int> basis;
    std::optional<int> grid;
    std::optional<double> hbar_s;
};

struct OutputFlags {
    std::string format = "csv";
    std::string out;
    bool reproducible = false;
    int threads = 1;
};

void add_core(CLI::App& cmd, CoreFlags& f, bool kicks_required = true)
{
    auto* k = cmd.add_option("--kicks", f.kicks, "Number of kicks N")->check(CLI::NonNegativeNumber);
    if (kicks_required) {
        k->required();
    }
    cmd.add_option("--phi-d", f.phi_d, "Effective kick strength K/hbar_s")->capture_default_str();
    cmd.add_option("--epsilon", f.epsilon, "Fractional detuning from the Talbot time")->capture_default_str();
    cmd.add_option("--l", f.l, "Resonance order")->check(CLI::PositiveNumber)->capture_default_str();
    cmd.add_option("--basis", f.basis, "Momentum ladder half width M")->check(CLI::PositiveNumber);
    cmd.add_option("--grid", f.grid, "Spatial grid points")->check(CLI::PositiveNumber);
    cmd.add_option("--hbar-s", f.hbar_s, "Use the general free phase hbar_s m^2/2 instead of epsilon");
}

void add_output(CLI::App& cmd, OutputFlags& f)
{
    cmd.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    cmd.add_option("--out", f.out, "Output path stem")->required();
    cmd.add_flag("--reproducible", f.reproducible, "Write a null wall time so outputs byte-compare");
    cmd.add_option("--threads", f.threads, "Worker threads (env QKR_THREADS)")->check(CLI::PositiveNumber);
}

SimConfig resolve(const CoreFlags& f)
{
    SimConfig c = SimConfig::make(f.kicks, f.phi_d, f.epsilon, f.l);
    if (f.basis) {
        c.half_width = *f.basis;
        c.n_points = SimConfig::default_n_points(c.half_width);
    }
    if (f.grid) {
        c.n_points = *f.grid;
    }
    c.hbar_s = f.hbar_s;
    c.validate();
    return c;
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    os << content;
    if (!os) {
        throw IoError("failed writing '" + path + "'");
    }
}

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

RunManifest manifest_for(const std::string& command, const SimConfig& config, const OutputFlags& o,
                         const Stopwatch& clock)
{
    RunManifest m;
    m.command = command;
    m.config = config;
    m.version = library_version();
    if (!o.reproducible) {
        m.wall_time_s = clock.seconds();
    }
    return m;
}

// Emits one data set either as <stem>.<suffix>.csv (plus a shared manifest
// written by the caller) or as a self-describing <stem>.<suffix>.json.
void emit(const OutputFlags& o, const std::string& suffix, const RunManifest& manifest, const Table& table,
          const Json& data_extras = Json::object(), const std::optional<Json>& fit = {})
{
    const std::string stem = suffix.empty() ? o.out : o.out + "." + suffix;
    if (o.format == "csv") {
        write_file(stem + ".csv", to_csv(table));
    } else {
        Json data = to_json(table);
        for (auto it = data_extras.begin(); it != data_extras.end(); ++it) {
            data[it.key()] = it.value();
        }
        write_file(stem + ".json", render_document(manifest, data, fit));
    }
}

void emit_manifest(const OutputFlags& o, const RunManifest& manifest, const Json& extras = Json::object(),
                   const std::optional<Json>& fit = {})
{
    if (o.format != "csv") {
        return;
    }
    Json j = manifest.to_json();
    for (auto it = extras.begin(); it != extras.end(); ++it) {
        j[it.key()] = it.value();
    }
    if (fit) {
        j["fit"] = *fit;
    }
    write_file(o.out + ".manifest.json", j.dump(2) + "\n");
}

HealthFlags health_of(const MomentumWavefunction& wf)
{
    return HealthFlags{wf.edge_occupancy(), std::abs(1.0 - wf.norm_squared())};
}

void require_healthy(const HealthFlags& h)
{
    if (!h.leakage_ok()) {
        throw LeakageError("numerical health: truncation leakage invariant failed (edge occupancy "
                           + format_double(h.edge_occupancy) + ")");
    }
    if (!h.norm_ok()) {
        throw LeakageError("numerical health: norm conservation invariant failed (drift "
                           + format_double(h.norm_drift) + ")");
    }
}

SpatialGrid output_grid(const SimConfig& config, int half_width)
{
    const auto g = SpatialGrid::for_half_width(half_width);
    return config.n_points > g.size() ? SpatialGrid(config.n_points) : g;
}

Table position_table(const Density& d)
{
    Column x{"X", {}};
    for (int j = 0; j < d.grid().size(); ++j) {
        x.values.push_back(d.grid().node(j));
    }
    return Table{{x, Column{"density", {d.values().begin(), d.values().end()}}}};
}

Table momentum_table(const Density& d)
{
    Column m{"m", {}};
    for (int k = -d.half_width(); k <= d.half_width(); ++k) {
        m.values.push_back(k);
    }
    return Table{{m, Column{"prob", {d.values().begin(), d.values().end()}}}};
}

int cmd_evolve(const CoreFlags& f, const OutputFlags& o)
{
    Stopwatch clock;
    const SimConfig config = resolve(f);
    const auto state = evolve(config);
    SimConfig used = config;
    used.half_width = state.half_width();
    used.n_points = output_grid(config, state.half_width()).size();

    auto manifest = manifest_for("evolve", used, o, clock);
    manifest.health = health_of(state);
    require_healthy(manifest.health);

    const auto pos = position_density(to_position(state, SpatialGrid(used.n_points)));
    const auto mom = momentum_density(state);
    if (!o.reproducible) {
        manifest.wall_time_s = clock.seconds();
    }
    emit(o, "position", manifest, position_table(pos));
    emit(o, "momentum", manifest, momentum_table(mom));
    emit_manifest(o, manifest);
    return kSuccess;
}

int cmd_perturbative(const CoreFlags& f, const OutputFlags& o)
{
    Stopwatch clock;
    if (f.hbar_s) {
        throw DomainError("--hbar-s is not supported by the perturbative command");
    }
    const SimConfig config = resolve(f);
    const auto state = evolve(config);
    SimConfig used = config;
    used.half_width = state.half_width();
    used.n_points = output_grid(config, state.half_width()).size();
    const SpatialGrid grid(used.n_points);

    auto manifest = manifest_for("perturbative", used, o, clock);
    manifest.health = health_of(state);
    require_healthy(manifest.health);

    const auto full = position_density(to_position(state, grid));
    const auto approx = perturbative_density(config.kicks, config.phi_d, config.epsilon, grid, used.half_width);

    Table t;
    Column x{"X", {}}, num{"numerical", {}}, pert{"perturbative", {}}, diff{"difference", {}};
    for (int j = 0; j < grid.size(); ++j) {
        const auto u = static_cast<std::size_t>(j);
        x.values.push_back(grid.node(j));
        num.values.push_back(full.values()[u]);
        pert.values.push_back(approx.values[u]);
        diff.values.push_back(full.values()[u] - approx.values[u]);
    }
    t.columns = {x, num, pert, diff};
    if (!o.reproducible) {
        manifest.wall_time_s = clock.seconds();
    }
    emit(o, "", manifest, t);
    emit_manifest(o, manifest);
    return kSuccess;
}

ScanMode parse_mode(const std::string& s)
{
    return s == "fidelity" ? ScanMode::fidelity : ScanMode::position;
}

struct ScanFlags {
    std::string mode = "position";
    std::string eps_max = "auto";
    int points = 65;
};

int cmd_scan(const CoreFlags& f, const ScanFlags& s, const OutputFlags& o, std::ostream& err)
{
    Stopwatch clock;
    const ScanMode mode = parse_mode(s.mode);
    if (f.kicks < 1) {
        throw DomainError("scan needs --kicks >= 1");
    }
    double range = 0.0;
    if (s.eps_max == "auto") {
        range = auto_range(f.kicks, f.phi_d, f.l, mode);
    } else {
        try {
            std::size_t used = 0;
            range = std::stod(s.eps_max, &used);
            if (used != s.eps_max.size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception&) {
            throw DomainError("--eps-max must be a number or 'auto', got '" + s.eps_max + "'");
        }
    }
    const auto scan = scan_epsilon(f.kicks, f.phi_d, f.l, mode, range, s.points, o.threads);

    SimConfig config = SimConfig::make(f.kicks, f.phi_d, 0.0, f.l);
    auto manifest = manifest_for("scan", config, o, clock);
    manifest.parameters = {{"mode", to_string(mode)}, {"eps_max", range}, {"points", s.points}};

    std::optional<double> width;
    std::string failure;
    try {
        width = scan_width(scan);
    } catch (const NoCrossingError& e) {
        failure = e.what();
    }

    const Table t{{Column{"epsilon", scan.epsilons}, Column{"value", scan.values}}};
    const Json extras = {{"fwhm", width ? Json(*width) : Json(nullptr)}};
    if (!o.reproducible) {
        manifest.wall_time_s = clock.seconds();
    }
    emit(o, "", manifest, t, extras);
    emit_manifest(o, manifest, extras);
    if (!width) {
        err << "qkr scan: no half-level crossing: " << failure << "\n";
        return kNumerical;
    }
    return kSuccess;
}

struct ScalingFlags {
    int n_from = 5;
    int n_to = 12;
    std::string mode = "position";
    int points = 65;
    double phi_d = 0.485;
    int l = 1;
    std::string widths_from;
};

Json fit_json(const PowerLawFit& fit)
{
    return {{"gamma", fit.gamma}, {"intercept", fit.intercept}, {"r_squared", fit.r_squared}};
}

int cmd_scaling(const ScalingFlags& s, const OutputFlags& o)
{
    Stopwatch clock;
    SimConfig config = SimConfig::make(s.n_to, s.phi_d, 0.0, s.l);
    auto manifest = manifest_for("scaling", config, o, clock);

    if (!s.widths_from.empty()) {
        std::ifstream in(s.widths_from, std::ios::binary);
        if (!in) {
            throw IoError("cannot read '" + s.widths_from + "'");
        }
        std::stringstream buf;
        buf << in.rdbuf();
        const Table fixture = parse_csv(buf.str());
        const auto& n = fixture.column("N").values;
        const auto& w = fixture.column("width").values;
        const auto fit = fit_power_law(n, w);
        manifest.parameters = {{"source", "fixture"}, {"fixture", s.widths_from}};
        if (!o.reproducible) {
            manifest.wall_time_s = clock.seconds();
        }
        const Table t{{Column{"N", n}, Column{"width", w}}};
        emit(o, "", manifest, t, Json::object(), fit_json(fit));
        emit_manifest(o, manifest, Json::object(), fit_json(fit));
        return kSuccess;
    }

    if (s.n_to < s.n_from) {
        throw DomainError("--n-to must not be below --n-from");
    }
    std::vector<int> kicks(static_cast<std::size_t>(s.n_to - s.n_from + 1));
    std::iota(kicks.begin(), kicks.end(), s.n_from);
    ScanOptions options;
    options.points = s.points;
    options.threads = o.threads;
    manifest.parameters = {{"mode", s.mode}, {"n_from", s.n_from}, {"n_to", s.n_to}, {"points", s.points}};

    Table t;
    Json fit;
    if (s.mode == "both") {
        const auto cmp = compare_modes(kicks, s.phi_d, s.l, options);
        Column n{"N", {}}, pw{"position_width", {}}, fw{"fidelity_width", {}}, r{"ratio", {}},
            b{"equal_budget_ratio", {}};
        for (const auto& row : cmp.rows) {
            n.values.push_back(row.kicks);
            pw.values.push_back(row.position_width);
            fw.values.push_back(row.fidelity_width);
            r.values.push_back(row.ratio);
            b.values.push_back(row.equal_budget_ratio);
        }
        t.columns = {n, pw, fw, r, b};
        fit = {{"position", fit_json(cmp.position.fit())},
               {"fidelity", fit_json(cmp.fidelity.fit())},
               {"crossover", cmp.crossover ? Json(*cmp.crossover) : Json(nullptr)},
               {"fit_crossover", cmp.fit_crossover}};
    } else {
        const auto ws = width_scaling(kicks, s.phi_d, s.l, parse_mode(s.mode), options);
        Column n{"N", {}};
        for (int k : ws.kicks) {
            n.values.push_back(k);
        }
        t.columns = {n, Column{"width", ws.widths}, Column{"eps_max", ws.ranges}};
        fit = fit_json(ws.fit());
    }
    if (!o.reproducible) {
        manifest.wall_time_s = clock.seconds();
    }
    emit(o, "", manifest, t, Json::object(), fit);
    emit_manifest(o, manifest, Json::object(), fit);
    return kSuccess;
}

int default_threads()
{
    if (const char* env = std::getenv("QKR_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) {
                return n;
            }
        } catch (const std::exception&) {
        }
    }
    return 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Quantum kicked rotor resonance simulator", "qkr"};
    app.require_subcommand(1);

    CoreFlags core;
    OutputFlags output;
    output.threads = default_threads();

    auto* evolve_cmd = app.add_subcommand("evolve", "Position and momentum densities after N kicks");
    add_core(*evolve_cmd, core);
    add_output(*evolve_cmd, output);

    auto* pert_cmd = app.add_subcommand("perturbative", "Full vs first-order position density");
    add_core(*pert_cmd, core);
    add_output(*pert_cmd, output);

    ScanFlags scan;
    auto* scan_cmd = app.add_subcommand("scan", "sigma_X or fidelity as a function of epsilon");
    scan_cmd->add_option("--kicks", core.kicks, "Number of kicks N")->required()->check(CLI::PositiveNumber);
    scan_cmd->add_option("--phi-d", core.phi_d, "Effective kick strength")->capture_default_str();
    scan_cmd->add_option("--l", core.l, "Resonance order")->check(CLI::PositiveNumber)->capture_default_str();
    scan_cmd->add_option("--mode", scan.mode)->check(CLI::IsMember({"position", "fidelity"}))->capture_default_str();
    scan_cmd->add_option("--eps-max", scan.eps_max, "Half range of the scan, or 'auto'")->capture_default_str();
    scan_cmd->add_option("--points", scan.points, "Odd number of epsilon samples >= 33")->capture_default_str();
    add_output(*scan_cmd, output);

    ScalingFlags scaling;
    auto* scaling_cmd = app.add_subcommand("scaling", "Resonance width versus kick number");
    scaling_cmd->add_option("--n-from", scaling.n_from)->capture_default_str();
    scaling_cmd->add_option("--n-to", scaling.n_to)->capture_default_str();
    scaling_cmd->add_option("--mode", scaling.mode)
        ->check(CLI::IsMember({"position", "fidelity", "both"}))
        ->capture_default_str();
    scaling_cmd->add_option("--points", scaling.points)->capture_default_str();
    scaling_cmd->add_option("--phi-d", scaling.phi_d)->capture_default_str();
    scaling_cmd->add_option("--l", scaling.l)->check(CLI::PositiveNumber)->capture_default_str();
    scaling_cmd->add_option("--widths-from", scaling.widths_from, "Fit an N,width CSV instead of simulating");
    add_output(*scaling_cmd, output);

    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "qkr: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (evolve_cmd->parsed()) {
            return cmd_evolve(core, output);
        }
        if (pert_cmd->parsed()) {
            return cmd_perturbative(core, output);
        }
        if (scan_cmd->parsed()) {
            return cmd_scan(core, scan, output, err);
        }
        return cmd_scaling(scaling, output);
    } catch (const DomainError& e) {
        err << "qkr: invalid arguments: " << e.what() << "\n";
        return kUsage;
    } catch (const GridTooSmallError& e) {
        err << "qkr: invalid arguments: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        err << "qkr: " << e.what() << "\n";
        return kIoFailure;
    } catch (const Error& e) {
        err << "qkr: numerical failure: " << e.what() << "\n";
        return kNumerical;
    }
}

} // namespace qkr::cli
