#include "esim/scenario.hpp"

#include <fstream>
#include <set>

#include "esim/nems_pg.hpp"

namespace esim::scenario {

using nlohmann::ordered_json;

namespace {

// Tracks which keys were consumed so unknown keys are rejected with their
// full path.
class Reader {
public:
    Reader(const ordered_json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            throw ConfigError(path_ + ": expected an object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    double num(const std::string& key, double fallback)
    {
        return has(key) ? num(key) : fallback;
    }

    double num(const std::string& key)
    {
        mark(key);
        const auto& v = at(key);
        if (!v.is_number())
            throw ConfigError(path_ + "." + key + ": expected a number");
        return v.get<double>();
    }

    int integer(const std::string& key, int fallback)
    {
        if (!has(key))
            return fallback;
        mark(key);
        const auto& v = at(key);
        if (!v.is_number_integer())
            throw ConfigError(path_ + "." + key + ": expected an integer");
        return v.get<int>();
    }

    bool boolean(const std::string& key, bool fallback)
    {
        if (!has(key))
            return fallback;
        mark(key);
        const auto& v = at(key);
        if (!v.is_boolean())
            throw ConfigError(path_ + "." + key + ": expected a boolean");
        return v.get<bool>();
    }

    std::string str(const std::string& key, const std::string& fallback)
    {
        if (!has(key))
            return fallback;
        return str(key);
    }

    std::string str(const std::string& key)
    {
        mark(key);
        const auto& v = at(key);
        if (!v.is_string())
            throw ConfigError(path_ + "." + key + ": expected a string");
        return v.get<std::string>();
    }

    Reader object(const std::string& key)
    {
        mark(key);
        return Reader(at(key), path_ + "." + key);
    }

    ordered_json raw_object(const std::string& key)
    {
        mark(key);
        const auto& v = at(key);
        if (!v.is_object())
            throw ConfigError(path_ + "." + key + ": expected an object");
        return v;
    }

    void finish() const
    {
        for (const auto& item : j_.items())
            if (!seen_.count(item.key()))
                throw ConfigError(path_ + "." + item.key() + ": unknown key");
    }

private:
    const ordered_json& at(const std::string& key) const
    {
        if (!j_.contains(key))
            throw ConfigError(path_ + "." + key + ": missing");
        return j_.at(key);
    }
    void mark(const std::string& key) { seen_.insert(key); }

    const ordered_json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

mos::MosDevice parse_device(Reader r, const mos::MosDevice& defaults)
{
    mos::MosDevice d = defaults;
    d.beta = r.num("beta", d.beta);
    d.n = r.num("n", d.n);
    d.v_th = r.num("v_th", d.v_th);
    d.v_sg_max = r.num("v_sg_max", d.v_sg_max);
    d.gidl_i0 = r.num("gidl_i0", d.gidl_i0);
    d.gidl_slope = r.num("gidl_slope", d.gidl_slope);
    d.gate_leak_density = r.num("gate_leak_density", d.gate_leak_density);
    d.width = r.num("width", d.width);
    r.finish();
    return d;
}

nems::NemsCapacitiveSwitch parse_cap_switch(Reader r, const nems::NemsCapacitiveSwitch& def)
{
    nems::NemsCapacitiveSwitch s = def;
    s.g0 = r.num("g0", s.g0);
    s.t_d = r.num("t_d", s.t_d);
    s.eps_d = r.num("eps_d", s.eps_d);
    s.area = r.num("area", s.area);
    s.k_eff = r.num("k_eff", s.k_eff);
    s.gamma = r.num("gamma", s.gamma);
    s.c_on = r.num("c_on", s.c_on);
    s.c_off = r.num("c_off", s.c_off);
    s.v_pi = r.num("v_pi", s.v_pi);
    s.v_po = r.num("v_po", s.v_po);
    s.t_mech = r.num("t_mech", s.t_mech);
    r.finish();
    return s;
}

nems::NemsOhmicSwitch parse_ohmic_switch(Reader r, const nems::NemsOhmicSwitch& def)
{
    nems::NemsOhmicSwitch s = def;
    s.v_pi = r.num("v_pi", s.v_pi);
    s.v_po = r.num("v_po", s.v_po);
    s.r_on = r.num("r_on", s.r_on);
    s.t_mech = r.num("t_mech", s.t_mech);
    s.c_gs_on = r.num("c_gs_on", s.c_gs_on);
    s.c_gd_on = r.num("c_gd_on", s.c_gd_on);
    s.c_gb_on = r.num("c_gb_on", s.c_gb_on);
    s.c_gs_off = r.num("c_gs_off", s.c_gs_off);
    s.c_gd_off = r.num("c_gd_off", s.c_gd_off);
    r.finish();
    return s;
}

SwcapScenario parse_swcap(const ordered_json& j)
{
    Reader r(j, "parameters");
    SwcapScenario out;
    const std::string variant = r.str("variant", "CMOS");
    if (variant == "CMOS")
        out.cfg.variant = swcap::Variant::CMOS;
    else if (variant == "MEMS")
        out.cfg.variant = swcap::Variant::MEMS;
    else
        throw ConfigError("parameters.variant: expected CMOS or MEMS");
    out.cfg.c_x = r.num("c_x", out.cfg.c_x);
    out.cfg.f_clk = r.num("f_clk", out.cfg.f_clk);
    out.cfg.v_dd = r.num("v_dd", out.cfg.v_dd);
    out.cfg.v_b_off = r.num("v_b_off", out.cfg.v_b_off);
    out.cfg.v_b_on = r.num("v_b_on", out.cfg.v_b_on);
    out.cfg.i_dis = r.num("i_dis", out.cfg.i_dis);
    out.cfg.diode_beta = r.num("diode_beta", out.cfg.diode_beta);
    out.cfg.diode_v_th = r.num("diode_v_th", out.cfg.diode_v_th);
    out.cfg.diode_n = r.num("diode_n", out.cfg.diode_n);
    out.temperature = r.num("temperature", out.temperature);

    mos::MosDevice dev;
    dev.beta = 60e-6;
    dev.n = 1.5;
    dev.v_th = 0.5;
    dev.v_sg_max = 3.3;
    dev.gate_leak_density = 1e-8; // 10 fA/um
    dev.width = 10e-3;
    if (r.has("device"))
        dev = parse_device(r.object("device"), dev);
    out.device = dev;

    if (r.has("calibrate")) {
        Reader c = r.object("calibrate");
        out.calibrate_v_opt = c.num("v_opt");
        out.calibrate_ratio = c.num("reduction_ratio");
        c.finish();
    }
    r.finish();

    try {
        out.cfg.validate();
        out.device.validate();
        Environment{out.temperature}.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("parameters: ") + e.what());
    }
    return out;
}

NemsPgScenario parse_nems_pg(const ordered_json& j)
{
    Reader r(j, "parameters");
    NemsPgScenario out;
    out.preset = r.str("preset", out.preset);
    out.alpha = r.num("alpha", out.alpha);
    out.t_on_over_t_off = r.num("t_on_over_t_off", out.t_on_over_t_off);
    out.f_pg = r.num("f_pg", out.f_pg);
    out.temperature = r.num("temperature", out.temperature);
    r.finish();

    try {
        nems_pg::TechPreset p = nems_pg::preset(out.preset);
        p.block.alpha = out.alpha;
        p.block.validate();
        nems_pg::DutySpec duty{out.t_on_over_t_off, out.f_pg};
        duty.validate();
        Environment{out.temperature}.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("parameters: ") + e.what());
    }
    return out;
}

DtAmpScenario parse_dt_amp(const ordered_json& j)
{
    Reader r(j, "parameters");
    DtAmpScenario out;
    out.cfg = dt_amp::reference_config();
    out.cfg.n_parallel = r.integer("n_parallel", out.cfg.n_parallel);
    out.cfg.v_bias = r.num("v_bias", out.cfg.v_bias);
    out.cfg.f_clk = r.num("f_clk", out.cfg.f_clk);
    out.cfg.c_large = r.num("c_large", out.cfg.c_large);
    out.cfg.differential = r.boolean("differential", out.cfg.differential);
    out.cfg.v_gb = r.num("v_gb", out.cfg.v_gb);
    out.cfg.p_clk = r.num("p_clk", out.cfg.p_clk);
    if (r.has("cap_switch"))
        out.cfg.cap_switch = parse_cap_switch(r.object("cap_switch"), out.cfg.cap_switch);
    if (r.has("ohmic"))
        out.cfg.ohmic = parse_ohmic_switch(r.object("ohmic"), out.cfg.ohmic);
    out.temperature = r.num("temperature", out.temperature);

    if (r.has("input")) {
        Reader in = r.object("input");
        out.input.kind = in.str("kind", out.input.kind);
        if (out.input.kind != "dc" && out.input.kind != "sine")
            throw ConfigError("parameters.input.kind: expected dc or sine");
        out.input.amplitude = in.num("amplitude", out.input.amplitude);
        out.input.f_in = in.num("f_in", out.input.f_in);
        out.input.n_samples = in.integer("n_samples", out.input.n_samples);
        if (out.input.n_samples < 1)
            throw ConfigError("parameters.input.n_samples: must be >= 1");
        in.finish();
    }
    r.finish();

    try {
        out.cfg.validate();
        Environment{out.temperature}.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("parameters: ") + e.what());
    }
    return out;
}

PiezoScenario parse_piezo(const ordered_json& j)
{
    Reader r(j, "parameters");
    PiezoScenario out;
    out.cfg = rectifier::RectifierConfig{}; // component defaults
    if (r.has("xdcr")) {
        Reader x = r.object("xdcr");
        out.cfg.xdcr.c_pz = x.num("c_pz", out.cfg.xdcr.c_pz);
        out.cfg.xdcr.f_pz = x.num("f_pz", out.cfg.xdcr.f_pz);
        out.cfg.xdcr.r_pz = x.num("r_pz", out.cfg.xdcr.r_pz);
        out.cfg.xdcr.v_oc = x.num("v_oc", out.cfg.xdcr.v_oc);
        x.finish();
    }
    out.cfg.l = r.num("l", out.cfg.l);
    out.cfg.v_max = r.num("v_max", out.cfg.v_max);
    out.cfg.v_pc_target = r.num("v_pc_target", out.cfg.v_pc_target);
    out.cfg.t_eng = r.num("t_eng", out.cfg.t_eng);
    out.cfg.v_out = r.num("v_out", out.cfg.v_out);
    out.cfg.r_l = r.num("r_l", out.cfg.r_l);
    out.cfg.c_out = r.num("c_out", out.cfg.c_out);
    out.cfg.r_tot = r.num("r_tot", out.cfg.r_tot);
    out.cfg.flip_loss_v = r.num("flip_loss_v", out.cfg.flip_loss_v);
    out.cfg.p_ctrl = r.num("p_ctrl", out.cfg.p_ctrl);
    out.cfg.detector_delay = r.num("detector_delay", out.cfg.detector_delay);
    out.n_cycles = r.integer("n_cycles", out.n_cycles);
    out.steady_state = r.boolean("steady_state", out.steady_state);
    r.finish();

    if (out.n_cycles < 1)
        throw ConfigError("parameters.n_cycles: must be >= 1");
    try {
        out.cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("parameters: ") + e.what());
    }
    return out;
}

nlohmann::json::json_pointer pointer_from_dotted(const std::string& dotted)
{
    std::string p = "/";
    for (const char c : dotted)
        p += (c == '.') ? '/' : c;
    return nlohmann::json::json_pointer(p);
}

} // namespace

std::string to_string(Module m)
{
    switch (m) {
    case Module::Swcap: return "swcap";
    case Module::NemsPg: return "nems-pg";
    case Module::DtAmp: return "dt-amp";
    case Module::Piezo: return "piezo";
    }
    return "?";
}

Scenario parse_scenario(const ordered_json& j)
{
    Reader r(j, "scenario");
    Scenario s;
    s.name = r.str("name");
    const std::string module = r.str("module");
    if (module == "swcap")
        s.module = Module::Swcap;
    else if (module == "nems-pg")
        s.module = Module::NemsPg;
    else if (module == "dt-amp")
        s.module = Module::DtAmp;
    else if (module == "piezo")
        s.module = Module::Piezo;
    else
        throw ConfigError("scenario.module: expected swcap, nems-pg, dt-amp or piezo");

    s.parameters = r.raw_object("parameters");
    switch (s.module) {
    case Module::Swcap: s.payload = parse_swcap(s.parameters); break;
    case Module::NemsPg: s.payload = parse_nems_pg(s.parameters); break;
    case Module::DtAmp: s.payload = parse_dt_amp(s.parameters); break;
    case Module::Piezo: s.payload = parse_piezo(s.parameters); break;
    }

    if (r.has("sweep")) {
        Reader sw = r.object("sweep");
        SweepSpec spec;
        spec.path = sw.str("path");
        spec.start = sw.num("start");
        spec.stop = sw.num("stop");
        spec.steps = sw.integer("steps", 0);
        sw.finish();
        if (spec.steps < 2)
            throw ConfigError("sweep.steps: must be >= 2");
        const auto ptr = pointer_from_dotted(spec.path);
        if (!s.parameters.contains(ptr))
            throw ConfigError("sweep.path: parameter '" + spec.path + "' not found");
        if (!s.parameters.at(ptr).is_number())
            throw ConfigError("sweep.path: parameter '" + spec.path + "' is not numeric");
        s.sweep = spec;
    }
    s.output = r.str("output", to_string(s.module) + ".csv");
    r.finish();
    return s;
}

Scenario with_sweep_value(const Scenario& s, double value)
{
    if (!s.sweep)
        throw ConfigError("with_sweep_value: scenario has no sweep");
    ordered_json j = s.to_json();
    j.erase("sweep");
    j.at("parameters")[pointer_from_dotted(s.sweep->path)] = value;
    return parse_scenario(j);
}

nlohmann::ordered_json Scenario::to_json() const
{
    ordered_json j;
    j["name"] = name;
    j["module"] = to_string(module);
    j["parameters"] = parameters;
    if (sweep) {
        j["sweep"] = {{"path", sweep->path},
                      {"start", sweep->start},
                      {"stop", sweep->stop},
                      {"steps", sweep->steps}};
    }
    j["output"] = output;
    return j;
}

nlohmann::ordered_json default_parameters(Module m)
{
    switch (m) {
    case Module::Swcap:
        return ordered_json{{"variant", "CMOS"},
                            {"c_x", 5e-12},
                            {"f_clk", 24.0},
                            {"v_dd", 1.8},
                            {"v_b_off", 0.75},
                            {"v_b_on", 1.5},
                            {"i_dis", 10e-12},
                            {"diode_beta", 60e-6},
                            {"diode_v_th", 0.5},
                            {"diode_n", 1.5},
                            {"temperature", 300.0},
                            {"calibrate", {{"v_opt", 0.3}, {"reduction_ratio", 186.0}}}};
    case Module::NemsPg:
        return ordered_json{{"preset", "14nm"},
                            {"alpha", 0.1},
                            {"t_on_over_t_off", 0.05},
                            {"f_pg", 1e3},
                            {"temperature", 300.0}};
    case Module::DtAmp:
        return ordered_json{{"n_parallel", 10},
                            {"v_bias", 4.0},
                            {"f_clk", 100e3},
                            {"c_large", 30e-12},
                            {"differential", false},
                            {"input", {{"kind", "dc"}, {"amplitude", 0.2}, {"n_samples", 1}}}};
    case Module::Piezo:
        return ordered_json{{"xdcr",
                             {{"c_pz", 19e-9}, {"f_pz", 146.0}, {"r_pz", 2e6}, {"v_oc", 1.0}}},
                            {"l", 47e-6},
                            {"v_max", 3.3},
                            {"v_pc_target", 0.0},
                            {"v_out", 1.0},
                            {"r_l", 100e3},
                            {"c_out", 20e-6},
                            {"r_tot", 0.0},
                            {"flip_loss_v", 0.0},
                            {"p_ctrl", 0.0},
                            {"n_cycles", 25}};
    }
    throw ConfigError("default_parameters: unknown module");
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("load_scenario: cannot open " + path);
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("load_scenario: ") + e.what());
    }
    return parse_scenario(j);
}

} // namespace esim::scenario
