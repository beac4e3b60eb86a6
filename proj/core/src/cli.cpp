#include "dform/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <tuple>

#include "dform/error.hpp"
#include "dform/experiments.hpp"
#include "dform/snapshot.hpp"

namespace dform {

namespace {

struct Overrides {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    int resolution = 0;
    double mu = -1.0;
    std::string interp;
};

RunConfig resolve(const Overrides& o, const CLI::App& cmd) {
    RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
    if (cmd.count("--seed")) {
        c.run.seed = o.seed;
        c.ensemble.seed = o.seed;
    }
    if (cmd.count("--resolution")) c.solver.resolution = o.resolution;
    if (cmd.count("--mu")) {
        c.nudging.mu = o.mu;
        c.dform.mu = o.mu;
    }
    if (cmd.count("--interp")) {
        const InterpolantSpec spec = InterpolantSpec::parse(o.interp);
        c.interpolant.kind = spec.kind;
        c.interpolant.resolution = spec.resolution;
        c.dform.interpolant = spec.label();
    }
    if (cmd.count("--out")) c.run.out = o.out;
    validate(c);
    return c;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"Nudging, determining-form and functional-inequality experiments for 2D periodic Navier-Stokes"};
    app.require_subcommand(1, 1);
    Overrides o;

    using Runner = Summary (*)(const RunConfig&, const std::filesystem::path&);
    const std::vector<std::tuple<const char*, const char*, Runner>> commands{
        {"simulate", "Integrate the forced equation and write diagnostics.csv and snapshots", run_simulate},
        {"sync", "Run one nudging experiment and write sync.csv", run_sync},
        {"sweep", "Sweep (mu, h) for every interpolant kind; write sweep.csv and constants.csv", run_sweep},
        {"dform", "Determining-form map and evolution; write evolution.csv and w_audit.csv", run_dform},
        {"verify", "Identity suite and inequality constants; write inequalities.csv", run_verify},
        {"constants", "Interpolant approximation constants; write constants.csv", run_constants},
    };
    std::vector<std::pair<CLI::App*, Runner>> subs;
    for (const auto& [name, help, fn] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", o.config, "INI configuration file")->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "Output directory");
        sub->add_option("--seed", o.seed, "Root seed (run and ensemble)");
        sub->add_option("--resolution", o.resolution, "Grid resolution N");
        sub->add_option("--mu", o.mu, "Nudging strength");
        sub->add_option("--interp", o.interp, "Interpolant as kind:N with kind in modal, volume, nodal");
        subs.emplace_back(sub, fn);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 1;
    }

    try {
        for (const auto& [sub, fn] : subs) {
            if (!sub->parsed()) continue;
            const RunConfig config = resolve(o, *sub);
            const std::filesystem::path out = config.run.out;
            const Summary summary = fn(config, out);
            summary.write(out / "summary.txt");
            summary.print(std::cout);
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 1;
    } catch (const SnapshotError& e) {
        std::cerr << "snapshot error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace dform
