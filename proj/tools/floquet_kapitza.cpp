// Batch frontend: floquet-kapitza <command> --config <path> [--out <dir>]
// [--format csv|json]. Exit codes: 0 success, 2 config error, 3 numerical
// failure.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kapitza/kapitza.hpp"

namespace {

void report_error(const std::string& kind, const std::string& what) {
    kapitza::json err;
    err["error"] = kind;
    err["message"] = what;
    std::cerr << err.dump(2) << std::endl;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kapitza stabilization toolkit: classical pendulum, Floquet "
                 "spectra, driven-Schrodinger propagation and optical resonators"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string format;

    for (const auto& name :
         {"classical", "veff", "floquet", "scan", "evolve", "resonator"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "path to JSON config")->required();
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option("--format", format, "csv or json (overrides config)")
            ->check(CLI::IsMember({"csv", "json"}));
    }

    CLI11_PARSE(app, argc, argv);

    try {
        kapitza::RunConfig cfg = kapitza::parse_config(config_path);
        const std::string sub = app.get_subcommands().front()->get_name();
        if (kapitza::detail::command_name(cfg.command) != sub)
            throw kapitza::ConfigError("config command \"" +
                                       kapitza::detail::command_name(cfg.command) +
                                       "\" does not match subcommand \"" + sub + "\"");
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (!format.empty())
            cfg.format = format == "csv" ? kapitza::OutputFormat::csv
                                         : kapitza::OutputFormat::json_fmt;
        auto manifest = kapitza::run(cfg);
        for (const auto& a : manifest.artifacts) std::cout << a << "\n";
        return 0;
    } catch (const kapitza::ConfigError& e) {
        report_error("config", e.what());
        return 2;
    } catch (const std::exception& e) {
        report_error("numerical", e.what());
        return 3;
    }
}
