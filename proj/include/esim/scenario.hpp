#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "esim/dt_amp.hpp"
#include "esim/mos.hpp"
#include "esim/rectifier.hpp"
#include "esim/swcap.hpp"

namespace esim::scenario {

// Configuration problems: parse errors, schema violations, invariant
// violations. The CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    std::string path; // dotted path into parameters, e.g. "xdcr.c_pz"
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;
};

struct SwcapScenario {
    swcap::SwCapConfig cfg;
    mos::MosDevice device;
    double temperature = 300.0;
    // optional GIDL auto-calibration targets
    std::optional<double> calibrate_v_opt;
    std::optional<double> calibrate_ratio;
};

struct NemsPgScenario {
    std::string preset = "14nm";
    double alpha = 0.1;
    double t_on_over_t_off = 0.05;
    double f_pg = 1e3;
    double temperature = 300.0;
};

struct DtAmpInput {
    std::string kind = "dc"; // "dc" or "sine"
    double amplitude = 0.2;  // V
    double f_in = 5e3;       // Hz, sine only
    int n_samples = 1;
};

struct DtAmpScenario {
    dt_amp::AmpConfig cfg;
    DtAmpInput input;
    double temperature = 300.0;
};

struct PiezoScenario {
    rectifier::RectifierConfig cfg;
    int n_cycles = 25;
    bool steady_state = false; // solve v_out against r_l instead of fixed rail
};

enum class Module { Swcap, NemsPg, DtAmp, Piezo };

std::string to_string(Module m);

struct Scenario {
    std::string name;
    Module module = Module::Piezo;
    nlohmann::ordered_json parameters; // raw tree, kept for sweeps/round-trips
    std::variant<SwcapScenario, NemsPgScenario, DtAmpScenario, PiezoScenario> payload;
    std::optional<SweepSpec> sweep;
    std::string output; // default artifact path, may be overridden by --out

    nlohmann::ordered_json to_json() const;
};

Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const nlohmann::ordered_json& j);

// Re-parses the scenario with the swept parameter replaced; validation runs
// again on the modified tree.
Scenario with_sweep_value(const Scenario& s, double value);

// Thesis-default scenarios used by tests and the repro bundles.
nlohmann::ordered_json default_parameters(Module m);

} // namespace esim::scenario
