#include <clocale>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "esim/repro.hpp"
#include "esim/rectifier.hpp"
#include "esim/runner.hpp"
#include "esim/scenario.hpp"
#include "esim/csv.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failure = 1;
constexpr int exit_config_error = 2;
constexpr int exit_simulation_error = 3;

void write_artifacts(const std::vector<esim::runner::Artifact>& artifacts,
                     const std::string& dir)
{
    for (const auto& a : artifacts) {
        const std::string path = dir.empty() ? a.filename : dir + "/" + a.filename;
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open output file " + path);
        out << a.content;
        std::cout << "wrote " << path << "\n";
    }
}

esim::scenario::Scenario scenario_for(esim::scenario::Module module,
                                      const std::string& config_path)
{
    if (!config_path.empty()) {
        auto s = esim::scenario::load_scenario(config_path);
        if (s.module != module)
            throw esim::scenario::ConfigError("scenario.module: config targets '" +
                                              to_string(s.module) +
                                              "' but the subcommand expects '" +
                                              to_string(module) + "'");
        return s;
    }
    nlohmann::ordered_json j;
    j["name"] = "default-" + esim::scenario::to_string(module);
    j["module"] = esim::scenario::to_string(module);
    j["parameters"] = esim::scenario::default_parameters(module);
    return esim::scenario::parse_scenario(j);
}

} // namespace

int main(int argc, char** argv)
{
    std::setlocale(LC_NUMERIC, "C");

    CLI::App app{"Behavioral simulator for capacitor-assisted power gating, NEMS power "
                 "gating, NEMS discrete-time amplification and piezo inductive "
                 "rectification"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string out_dir = ".";
    int workers = 0;

    struct ModuleCmd {
        CLI::App* cmd;
        esim::scenario::Module module;
    };
    std::vector<ModuleCmd> module_cmds;
    for (const auto& [name, module, help] :
         {std::tuple{"swcap", esim::scenario::Module::Swcap,
                     "Switched-capacitor assisted power gating sweeps and traces"},
          std::tuple{"nems-pg", esim::scenario::Module::NemsPg,
                     "NEMS vs FinFET power-gating energy gain"},
          std::tuple{"dt-amp", esim::scenario::Module::DtAmp,
                     "NEMS discrete-time amplifier simulation"},
          std::tuple{"piezo", esim::scenario::Module::Piezo,
                     "Pre-charge/accumulate inductive rectifier simulation"}}) {
        CLI::App* cmd = app.add_subcommand(name, help);
        cmd->add_option("--config", config_path, "scenario JSON file");
        cmd->add_option("--out", out_path, "primary output CSV path");
        cmd->add_option("--workers", workers, "sweep worker count (0 = auto)");
        module_cmds.push_back({cmd, module});
    }

    CLI::App* compare = app.add_subcommand(
        "compare", "Theoretical FoM comparison grid across rectifier architectures");
    double cmp_v_max = 12.0, cmp_v_oc = 1.0, cmp_v_out = 1.0;
    int cmp_steps = 41;
    compare->add_option("--v-max", cmp_v_max, "technology voltage limit");
    compare->add_option("--v-oc", cmp_v_oc, "piezo open-circuit amplitude");
    compare->add_option("--v-out", cmp_v_out, "rectified output voltage");
    compare->add_option("--steps", cmp_steps, "grid points");
    compare->add_option("--out", out_path, "output CSV path");

    CLI::App* repro_cmd =
        app.add_subcommand("repro", "Run a named table/figure reproduction bundle");
    std::string target;
    repro_cmd->add_option("target", target, "bundle name")
        ->required()
        ->check(CLI::IsMember(esim::repro::target_names()));
    repro_cmd->add_option("--out-dir", out_dir, "directory for CSV artifacts");
    repro_cmd->add_option("--workers", workers, "sweep worker count (0 = auto)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config_error;
    }

    try {
        for (const auto& mc : module_cmds) {
            if (!mc.cmd->parsed())
                continue;
            auto s = scenario_for(mc.module, config_path);
            if (!out_path.empty())
                s.output = out_path;
            write_artifacts(esim::runner::run_scenario(s, workers), "");
            return exit_ok;
        }

        if (compare->parsed()) {
            const auto rows =
                esim::rectifier::compare_architectures(cmp_v_max, cmp_v_oc, cmp_v_out,
                                                       cmp_steps);
            esim::csv::Writer w({"x_V", "fbr", "bias_flip", "sece", "investment",
                                 "precharge", "dpr", "proposed"});
            for (const auto& r : rows)
                w.add_row({r.x, r.fbr, r.bias_flip, r.sece, r.investment, r.precharge,
                           r.dpr, r.proposed});
            const std::string path = out_path.empty() ? "compare.csv" : out_path;
            std::ofstream out(path, std::ios::binary);
            if (!out)
                throw std::runtime_error("cannot open output file " + path);
            out << w.str();
            std::cout << "wrote " << path << "\n";
            return exit_ok;
        }

        if (repro_cmd->parsed()) {
            const auto result = esim::repro::run(target, workers);
            write_artifacts(result.artifacts, out_dir);
            std::cout << result.checks.report();
            const bool ok = result.checks.all_pass();
            std::cout << "repro " << target << ": " << (ok ? "PASS" : "FAIL") << "\n";
            return ok ? exit_ok : exit_check_failure;
        }
    } catch (const esim::scenario::ConfigError& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: simulation: " << e.what() << "\n";
        return exit_simulation_error;
    }
    return exit_ok;
}
