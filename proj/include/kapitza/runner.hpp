#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "kapitza/config.hpp"
#include "kapitza/propagator.hpp"

namespace kapitza {

struct RunManifest {
    json config_echo;
    std::vector<std::string> artifacts;
    double wall_ms = 0.0;
    json extra; // command-specific results (e.g. omega_th)
};

namespace detail {

inline std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class TableWriter {
public:
    TableWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void row(const std::vector<std::string>& cells) { rows_.push_back(cells); }

    void write_csv(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        for (size_t i = 0; i < columns_.size(); ++i)
            out << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
        for (const auto& r : rows_)
            for (size_t i = 0; i < r.size(); ++i)
                out << r[i] << (i + 1 < r.size() ? "," : "\n");
    }

    void write_json(const std::string& path) const {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["columns"] = columns_;
        j["rows"] = rows_;
        std::ofstream out(path, std::ios::binary);
        out << j.dump(2) << "\n";
    }

    std::string emit(const std::string& dir, const std::string& stem, OutputFormat fmt) const {
        const std::string path =
            dir + "/" + stem + (fmt == OutputFormat::csv ? ".csv" : ".json");
        if (fmt == OutputFormat::csv) write_csv(path);
        else write_json(path);
        return path;
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

inline ResonatorSpec resonator_spec_from_config(const RunConfig& cfg) {
    ResonatorSpec spec;
    spec.mirror_spacing = cfg.resonator.mirror_spacing;
    spec.wavenumber = cfg.resonator.wavenumber;
    spec.grid = cfg.grid;
    if (cfg.resonator.model == "phase") {
        spec.model = MirrorModel::phase;
        spec.delta1 = {cfg.resonator.profile_amplitude / cfg.resonator.wavenumber,
                       cfg.resonator.profile_beta};
    } else {
        spec.model = MirrorModel::reflectivity;
        spec.ln_sqrt_r1 = {-cfg.resonator.profile_amplitude, cfg.resonator.profile_beta};
        spec.gain_length = cfg.resonator.gain_length;
    }
    return spec;
}

} // namespace detail

inline RunManifest run(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(cfg.output_dir);

    RunManifest manifest;
    manifest.config_echo = config_to_json(cfg);

    using detail::fmt17;
    switch (cfg.command) {
        case Command::classical: {
            cfg.pendulum.validate();
            ClassicalState init{cplx{cfg.trajectory.theta0, cfg.trajectory.theta0_im},
                                cplx{cfg.trajectory.theta_dot0, 0.0}, 0.0};
            auto traj = simulate_trajectory(cfg.pendulum, init, cfg.trajectory.t_end,
                                            cfg.trajectory.dt);
            detail::TableWriter w({"t", "re_theta", "im_theta", "re_theta_dot",
                                   "im_theta_dot"});
            for (const auto& s : traj.states)
                w.row({fmt17(s.t), fmt17(s.theta.real()), fmt17(s.theta.imag()),
                       fmt17(s.theta_dot.real()), fmt17(s.theta_dot.imag())});
            manifest.artifacts.push_back(w.emit(cfg.output_dir, "trajectory", cfg.format));
            break;
        }
        case Command::veff: {
            const auto veff = cfg.potential.drive == DriveShape::sinusoidal
                                  ? veff_sinusoidal(cfg.potential, cfg.grid)
                                  : veff_square_wave(cfg.potential, cfg.grid);
            detail::TableWriter w({"x", "v_eff"});
            for (int j = 0; j < cfg.grid.point_count; ++j)
                w.row({fmt17(cfg.grid.node(j)), fmt17(veff.values[j])});
            manifest.artifacts.push_back(w.emit(cfg.output_dir, "veff", cfg.format));
            break;
        }
        case Command::floquet: {
            FloquetProblem p{cfg.potential, cfg.grid, cfg.harmonics};
            auto spec = solve_spectrum(p);
            detail::TableWriter w({"omega", "index", "re_eps_folded", "im_eps",
                                   "localization", "is_bound"});
            for (size_t i = 0; i < spec.entries.size(); ++i) {
                const auto& e = spec.entries[i];
                w.row({fmt17(cfg.potential.omega), std::to_string(i),
                       fmt17(e.eps_folded.real()), fmt17(e.eps.imag()),
                       fmt17(e.localization), e.is_bound ? "1" : "0"});
            }
            manifest.artifacts.push_back(w.emit(cfg.output_dir, "spectrum", cfg.format));
            manifest.extra["bound_count"] = spec.bound_count();
            if (const auto* b = spec.bound_entry()) {
                manifest.extra["bound_eps_folded_re"] = b->eps_folded.real();
                manifest.extra["bound_eps_im"] = b->eps.imag();
            }
            break;
        }
        case Command::scan: {
            auto scan = scan_transition(cfg.potential, cfg.grid, cfg.harmonics,
                                        cfg.scan.omega_min, cfg.scan.omega_max,
                                        cfg.scan.step);
            detail::TableWriter w({"omega", "max_abs_im_eps", "bound_count"});
            for (size_t i = 0; i < scan.omegas.size(); ++i)
                w.row({fmt17(scan.omegas[i]), fmt17(scan.max_abs_im[i]),
                       std::to_string(scan.bound_counts[i])});
            manifest.artifacts.push_back(w.emit(cfg.output_dir, "spectrum_scan", cfg.format));
            manifest.extra["omega_th"] = scan.omega_threshold;
            break;
        }
        case Command::evolve: {
            VectorXcd psi0(cfg.grid.point_count);
            if (cfg.evolve.initial == "delta_profile") {
                const auto veff = cfg.potential.drive == DriveShape::sinusoidal
                                      ? veff_sinusoidal(cfg.potential, cfg.grid)
                                      : veff_square_wave(cfg.potential, cfg.grid);
                // barrier-side potentials have no delta profile; fall back to mu
                // from |alpha| so the control runs use the same initial shape
                const double alpha = integrate_trapezoid(veff.values, cfg.grid);
                const double mu = std::abs(alpha);
                for (int j = 0; j < cfg.grid.point_count; ++j)
                    psi0[j] = std::sqrt(mu) * std::exp(-mu * std::abs(cfg.grid.node(j)));
            } else {
                const double w0 = cfg.evolve.gaussian_width;
                for (int j = 0; j < cfg.grid.point_count; ++j) {
                    const double x = cfg.grid.node(j);
                    psi0[j] = std::exp(-x * x / (2.0 * w0 * w0));
                }
            }
            psi0 /= psi0.norm() * std::sqrt(cfg.grid.spacing);
            auto trace = evolve(cfg.potential, cfg.grid, psi0, cfg.evolve.t_end,
                                cfg.evolve.dt);
            detail::TableWriter w({"t", "re_survival", "im_survival", "norm"});
            for (size_t i = 0; i < trace.times.size(); ++i)
                w.row({fmt17(trace.times[i]), fmt17(trace.survival[i].real()),
                       fmt17(trace.survival[i].imag()), fmt17(trace.norms[i])});
            manifest.artifacts.push_back(w.emit(cfg.output_dir, "evolution", cfg.format));
            break;
        }
        case Command::resonator: {
            const auto spec = detail::resonator_spec_from_config(cfg);
            const MatrixXcd rt = spec.model == MirrorModel::phase
                                     ? round_trip_phase(spec)
                                     : round_trip_reflectivity(spec);
            auto modes = cavity_modes(rt, spec);
            detail::TableWriter w({"index", "re_mu", "im_mu", "abs_eigenvalue",
                                   "localization", "classification"});
            for (size_t i = 0; i < modes.modes.size(); ++i) {
                const auto& m = modes.modes[i];
                w.row({std::to_string(i), fmt17(m.mu.real()), fmt17(m.mu.imag()),
                       fmt17(std::abs(m.eigenvalue)), fmt17(m.localization),
                       m.confined ? "confined" : "leaky"});
            }
            manifest.artifacts.push_back(w.emit(cfg.output_dir, "modes", cfg.format));
            manifest.extra["confined_count"] = modes.confined_count();
            break;
        }
    }

    manifest.wall_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();

    json mj;
    mj["schema_version"] = kSchemaVersion;
    mj["library_version"] = kLibraryVersion;
    mj["config"] = manifest.config_echo;
    mj["artifacts"] = manifest.artifacts;
    mj["wall_ms"] = manifest.wall_ms;
    mj["grid"] = {{"half_width", cfg.grid.half_width},
                  {"points", cfg.grid.point_count},
                  {"spacing", cfg.grid.spacing}};
    mj["harmonic_cutoff"] = cfg.harmonics;
    for (auto it = manifest.extra.begin(); it != manifest.extra.end(); ++it)
        mj[it.key()] = it.value();
    const std::string mpath = cfg.output_dir + "/manifest.json";
    std::ofstream out(mpath, std::ios::binary);
    out << mj.dump(2) << "\n";
    manifest.artifacts.push_back(mpath);
    return manifest;
}

} // namespace kapitza
