#pragma once

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "kapitza/classical.hpp"
#include "kapitza/effective.hpp"
#include "kapitza/errors.hpp"
#include "kapitza/floquet.hpp"
#include "kapitza/resonator.hpp"

namespace kapitza {

using json = nlohmann::json;

inline constexpr const char* kLibraryVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

enum class Command { classical, veff, floquet, scan, evolve, resonator };
enum class OutputFormat { csv, json_fmt };

struct TrajectoryConfig {
    double theta0 = 0.0;
    double theta0_im = 0.0;
    double theta_dot0 = 0.0;
    double t_end = 10.0;
    double dt = 1e-3;
};

struct ScanConfig {
    double omega_min = 2.0;
    double omega_max = 14.0;
    double step = 0.25;
};

struct EvolveConfig {
    double t_end = 10.0;
    double dt = 1e-3;
    std::string initial = "delta_profile"; // or "gaussian"
    double gaussian_width = 5.0;
};

struct ResonatorConfig {
    double mirror_spacing = 59.052493488529947; // mm
    double wavenumber = 2.0 * M_PI / 1.064e-3;  // 1/mm, lambda = 1064 nm
    std::string model = "reflectivity";
    double profile_amplitude = 2.0; // |ln sqrt(R1)| or k*Delta peak
    double profile_beta = 0.02;
    double gain_length = 2.0;       // g d (reflectivity model)
};

struct RunConfig {
    Command command = Command::floquet;
    Grid1D grid{40.0, 401};
    PotentialSpec potential;
    int harmonics = 2;
    PendulumParams pendulum;
    TrajectoryConfig trajectory;
    ScanConfig scan;
    EvolveConfig evolve;
    ResonatorConfig resonator;
    std::string output_dir = ".";
    OutputFormat format = OutputFormat::csv;
};

namespace detail {

inline void require_keys(const json& obj, const std::string& section,
                         const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key \"" + it.key() + "\" in " + section);
}

template <typename T>
void read_if(const json& obj, const char* key, T& out) {
    if (obj.contains(key)) out = obj.at(key).get<T>();
}

inline AmplitudeKind parse_kind(const std::string& s, const std::string& where) {
    if (s == "real") return AmplitudeKind::real;
    if (s == "imaginary") return AmplitudeKind::imaginary;
    throw ConfigError(where + ": kind must be \"real\" or \"imaginary\"");
}

inline Command parse_command(const std::string& s) {
    if (s == "classical") return Command::classical;
    if (s == "veff") return Command::veff;
    if (s == "floquet") return Command::floquet;
    if (s == "scan") return Command::scan;
    if (s == "evolve") return Command::evolve;
    if (s == "resonator") return Command::resonator;
    throw ConfigError("unknown command \"" + s + "\"");
}

inline std::string command_name(Command c) {
    switch (c) {
        case Command::classical: return "classical";
        case Command::veff: return "veff";
        case Command::floquet: return "floquet";
        case Command::scan: return "scan";
        case Command::evolve: return "evolve";
        case Command::resonator: return "resonator";
    }
    return "";
}

inline std::string kind_name(AmplitudeKind k) {
    return k == AmplitudeKind::imaginary ? "imaginary" : "real";
}

} // namespace detail

inline RunConfig config_from_json(const json& j) {
    detail::require_keys(j, "config",
                         {"command", "grid", "potential", "floquet", "pendulum",
                          "trajectory", "scan", "evolve", "resonator", "output_dir",
                          "format"});
    RunConfig cfg;
    if (!j.contains("command")) throw ConfigError("missing \"command\"");
    cfg.command = detail::parse_command(j.at("command").get<std::string>());

    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        detail::require_keys(g, "grid", {"half_width", "points"});
        double L = 40.0;
        int nx = 401;
        detail::read_if(g, "half_width", L);
        detail::read_if(g, "points", nx);
        if (!(L > 0.0)) throw ConfigError("grid.half_width must be positive");
        if (nx < 3) throw ConfigError("grid.points must be at least 3");
        cfg.grid = Grid1D(L, nx);
    }

    if (j.contains("potential")) {
        const auto& p = j.at("potential");
        detail::require_keys(p, "potential", {"v0", "beta", "kind", "drive", "omega", "period"});
        detail::read_if(p, "v0", cfg.potential.v0);
        detail::read_if(p, "beta", cfg.potential.beta);
        if (p.contains("kind"))
            cfg.potential.kind = detail::parse_kind(p.at("kind").get<std::string>(), "potential");
        if (p.contains("drive")) {
            const auto d = p.at("drive").get<std::string>();
            if (d == "sinusoidal") cfg.potential.drive = DriveShape::sinusoidal;
            else if (d == "square_wave") cfg.potential.drive = DriveShape::square_wave;
            else throw ConfigError("potential.drive must be \"sinusoidal\" or \"square_wave\"");
        }
        detail::read_if(p, "omega", cfg.potential.omega);
        detail::read_if(p, "period", cfg.potential.period);
        if (!(cfg.potential.v0 > 0.0)) throw ConfigError("v0 must be positive");
        if (!(cfg.potential.beta > 0.0)) throw ConfigError("beta must be positive");
        if (cfg.potential.drive == DriveShape::sinusoidal && !(cfg.potential.omega > 0.0))
            throw ConfigError("omega must be positive");
        if (cfg.potential.drive == DriveShape::square_wave && !(cfg.potential.period > 0.0))
            throw ConfigError("period must be positive");
    }

    if (j.contains("floquet")) {
        const auto& f = j.at("floquet");
        detail::require_keys(f, "floquet", {"harmonics"});
        detail::read_if(f, "harmonics", cfg.harmonics);
        if (cfg.harmonics < 1) throw ConfigError("floquet.harmonics must be >= 1");
    }

    if (j.contains("pendulum")) {
        const auto& p = j.at("pendulum");
        detail::require_keys(p, "pendulum", {"g", "l", "amplitude", "kind", "omega"});
        detail::read_if(p, "g", cfg.pendulum.g);
        detail::read_if(p, "l", cfg.pendulum.l);
        if (p.contains("kind"))
            cfg.pendulum.kind = detail::parse_kind(p.at("kind").get<std::string>(), "pendulum");
        double amp = 0.0;
        detail::read_if(p, "amplitude", amp);
        cfg.pendulum.drive_amplitude = cfg.pendulum.kind == AmplitudeKind::imaginary
                                           ? cplx{0.0, amp}
                                           : cplx{amp, 0.0};
        detail::read_if(p, "omega", cfg.pendulum.omega);
        if (!(cfg.pendulum.g > 0.0 && cfg.pendulum.l > 0.0 && cfg.pendulum.omega > 0.0))
            throw ConfigError("pendulum g, l, omega must be positive");
    }

    if (j.contains("trajectory")) {
        const auto& t = j.at("trajectory");
        detail::require_keys(t, "trajectory",
                             {"theta0", "theta0_im", "theta_dot0", "t_end", "dt"});
        detail::read_if(t, "theta0", cfg.trajectory.theta0);
        detail::read_if(t, "theta0_im", cfg.trajectory.theta0_im);
        detail::read_if(t, "theta_dot0", cfg.trajectory.theta_dot0);
        detail::read_if(t, "t_end", cfg.trajectory.t_end);
        detail::read_if(t, "dt", cfg.trajectory.dt);
        if (!(cfg.trajectory.dt > 0.0)) throw ConfigError("trajectory.dt must be positive");
    }

    if (j.contains("scan")) {
        const auto& s = j.at("scan");
        detail::require_keys(s, "scan", {"omega_min", "omega_max", "step"});
        detail::read_if(s, "omega_min", cfg.scan.omega_min);
        detail::read_if(s, "omega_max", cfg.scan.omega_max);
        detail::read_if(s, "step", cfg.scan.step);
        if (!(cfg.scan.omega_min > 0.0 && cfg.scan.step > 0.0))
            throw ConfigError("scan.omega_min and scan.step must be positive");
    }

    if (j.contains("evolve")) {
        const auto& e = j.at("evolve");
        detail::require_keys(e, "evolve", {"t_end", "dt", "initial", "gaussian_width"});
        detail::read_if(e, "t_end", cfg.evolve.t_end);
        detail::read_if(e, "dt", cfg.evolve.dt);
        detail::read_if(e, "initial", cfg.evolve.initial);
        detail::read_if(e, "gaussian_width", cfg.evolve.gaussian_width);
        if (cfg.evolve.initial != "delta_profile" && cfg.evolve.initial != "gaussian")
            throw ConfigError("evolve.initial must be \"delta_profile\" or \"gaussian\"");
    }

    if (j.contains("resonator")) {
        const auto& r = j.at("resonator");
        detail::require_keys(r, "resonator",
                             {"mirror_spacing", "wavenumber", "model", "profile_amplitude",
                              "profile_beta", "gain_length"});
        detail::read_if(r, "mirror_spacing", cfg.resonator.mirror_spacing);
        detail::read_if(r, "wavenumber", cfg.resonator.wavenumber);
        detail::read_if(r, "model", cfg.resonator.model);
        detail::read_if(r, "profile_amplitude", cfg.resonator.profile_amplitude);
        detail::read_if(r, "profile_beta", cfg.resonator.profile_beta);
        detail::read_if(r, "gain_length", cfg.resonator.gain_length);
        if (cfg.resonator.model != "phase" && cfg.resonator.model != "reflectivity")
            throw ConfigError("resonator.model must be \"phase\" or \"reflectivity\"");
        if (!(cfg.resonator.mirror_spacing > 0.0 && cfg.resonator.wavenumber > 0.0))
            throw ConfigError("resonator.mirror_spacing and wavenumber must be positive");
    }

    detail::read_if(j, "output_dir", cfg.output_dir);
    if (j.contains("format")) {
        const auto f = j.at("format").get<std::string>();
        if (f == "csv") cfg.format = OutputFormat::csv;
        else if (f == "json") cfg.format = OutputFormat::json_fmt;
        else throw ConfigError("format must be \"csv\" or \"json\"");
    }
    return cfg;
}

inline json config_to_json(const RunConfig& cfg) {
    json j;
    j["command"] = detail::command_name(cfg.command);
    j["grid"] = {{"half_width", cfg.grid.half_width}, {"points", cfg.grid.point_count}};
    json pot = {{"v0", cfg.potential.v0},
                {"beta", cfg.potential.beta},
                {"kind", detail::kind_name(cfg.potential.kind)},
                {"drive", cfg.potential.drive == DriveShape::sinusoidal ? "sinusoidal"
                                                                        : "square_wave"},
                {"omega", cfg.potential.omega},
                {"period", cfg.potential.period}};
    j["potential"] = pot;
    j["floquet"] = {{"harmonics", cfg.harmonics}};
    j["pendulum"] = {{"g", cfg.pendulum.g},
                     {"l", cfg.pendulum.l},
                     {"amplitude", cfg.pendulum.kind == AmplitudeKind::imaginary
                                       ? cfg.pendulum.drive_amplitude.imag()
                                       : cfg.pendulum.drive_amplitude.real()},
                     {"kind", detail::kind_name(cfg.pendulum.kind)},
                     {"omega", cfg.pendulum.omega}};
    j["trajectory"] = {{"theta0", cfg.trajectory.theta0},
                       {"theta0_im", cfg.trajectory.theta0_im},
                       {"theta_dot0", cfg.trajectory.theta_dot0},
                       {"t_end", cfg.trajectory.t_end},
                       {"dt", cfg.trajectory.dt}};
    j["scan"] = {{"omega_min", cfg.scan.omega_min},
                 {"omega_max", cfg.scan.omega_max},
                 {"step", cfg.scan.step}};
    j["evolve"] = {{"t_end", cfg.evolve.t_end},
                   {"dt", cfg.evolve.dt},
                   {"initial", cfg.evolve.initial},
                   {"gaussian_width", cfg.evolve.gaussian_width}};
    j["resonator"] = {{"mirror_spacing", cfg.resonator.mirror_spacing},
                      {"wavenumber", cfg.resonator.wavenumber},
                      {"model", cfg.resonator.model},
                      {"profile_amplitude", cfg.resonator.profile_amplitude},
                      {"profile_beta", cfg.resonator.profile_beta},
                      {"gain_length", cfg.resonator.gain_length}};
    j["output_dir"] = cfg.output_dir;
    j["format"] = cfg.format == OutputFormat::csv ? "csv" : "json";
    return j;
}

inline RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config validation error: ") + e.what());
    }
}

} // namespace kapitza
