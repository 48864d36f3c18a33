#include "esim/runner.hpp"

#include <array>
#include <cmath>
#include <variant>

#include "esim/csv.hpp"
#include "esim/nems_pg.hpp"
#include "esim/sweep.hpp"

namespace esim::runner {

using scenario::Scenario;

namespace {

std::vector<double> sweep_values(const scenario::SweepSpec& s)
{
    std::vector<double> xs(s.steps);
    for (int i = 0; i < s.steps; ++i)
        xs[i] = s.start + (s.stop - s.start) * i / (s.steps - 1);
    return xs;
}

std::string summary_name(const std::string& primary)
{
    const auto dot = primary.rfind('.');
    const std::string stem = dot == std::string::npos ? primary : primary.substr(0, dot);
    return stem + ".summary.csv";
}

std::vector<Artifact> run_swcap(const Scenario& s, int workers)
{
    const auto& sc = std::get<scenario::SwcapScenario>(s.payload);
    const Environment env{sc.temperature};

    auto resolve_device = [&](const scenario::SwcapScenario& p) {
        if (p.calibrate_v_opt)
            return mos::calibrate_gidl(p.device, *p.calibrate_v_opt, *p.calibrate_ratio, env);
        return p.device;
    };

    if (s.sweep) {
        const auto xs = sweep_values(*s.sweep);
        struct Row {
            double v_b, leak, r_on, v_avg;
        };
        const auto rows = sweep::map_indexed<Row>(xs.size(), workers, [&](std::size_t i) {
            const Scenario point = scenario::with_sweep_value(s, xs[i]);
            const auto& p = std::get<scenario::SwcapScenario>(point.payload);
            const Environment e{p.temperature};
            const mos::MosDevice dev = resolve_device(p);
            Row row;
            row.v_b = xs[i];
            row.leak = swcap::pg_leakage(p.cfg, dev, e);
            row.r_on = swcap::pg_on_resistance(p.cfg, dev, e);
            row.v_avg = swcap::avg_gate_voltage_super_off(p.cfg, e);
            return row;
        });
        csv::Writer w({"v_b_V", "leakage_A", "r_on_ohm", "v_g_avg_V"});
        for (const Row& r : rows)
            w.add_row({r.v_b, r.leak, r.r_on, r.v_avg});
        return {{s.output, w.str()}};
    }

    // No sweep: export the four-state gate-bias staircase trace.
    std::vector<std::pair<double, swcap::PgState>> schedule = {
        {0.0, swcap::PgState::OFF},
        {0.5, swcap::PgState::SUPER_OFF},
        {1.0, swcap::PgState::SUPER_ON},
        {1.5, swcap::PgState::ON},
    };
    const auto trace = swcap::simulate_gate_bias(sc.cfg, env, schedule, 2.0);
    csv::Writer w({"t_s", "v_g_V", "state"});
    for (const auto& piece : trace.pieces) {
        w.add_row_raw({csv::format(piece.t0), csv::format(piece.v0), to_string(piece.state)});
        w.add_row_raw({csv::format(piece.t1),
                       csv::format(piece.v0 + piece.slope * (piece.t1 - piece.t0)),
                       to_string(piece.state)});
    }
    return {{s.output, w.str()}};
}

std::vector<Artifact> run_nems_pg(const Scenario& s, int workers)
{
    auto row_for = [](const scenario::NemsPgScenario& p) {
        const Environment env{p.temperature};
        const nems_pg::TechPreset preset =
            nems_pg::preset_at_temperature(nems_pg::preset(p.preset), env);
        nems_pg::LogicBlockSpec block = preset.block;
        block.alpha = p.alpha;
        nems_pg::DutySpec duty{p.t_on_over_t_off, p.f_pg};
        const double e_g = nems_pg::energy_gain(block, preset.finfet, preset.nems, duty);
        return std::array<double, 5>{p.t_on_over_t_off, p.alpha, p.temperature, e_g,
                                     nems_pg::energy_saving_percent(e_g)};
    };

    csv::Writer w({"r", "alpha", "T_K", "e_g", "saving_pct"});
    if (s.sweep) {
        const auto xs = sweep_values(*s.sweep);
        const auto rows = sweep::map_indexed<std::array<double, 5>>(
            xs.size(), workers, [&](std::size_t i) {
                const Scenario point = scenario::with_sweep_value(s, xs[i]);
                return row_for(std::get<scenario::NemsPgScenario>(point.payload));
            });
        for (const auto& r : rows)
            w.add_row({r[0], r[1], r[2], r[3], r[4]});
    } else {
        const auto r = row_for(std::get<scenario::NemsPgScenario>(s.payload));
        w.add_row({r[0], r[1], r[2], r[3], r[4]});
    }
    return {{s.output, w.str()}};
}

std::vector<Artifact> run_dt_amp(const Scenario& s, int workers)
{
    const auto& sc = std::get<scenario::DtAmpScenario>(s.payload);
    const Environment env{sc.temperature};

    if (s.sweep && s.sweep->path == "input.amplitude") {
        // Gain versus amplitude, single-ended and differential.
        const auto xs = sweep_values(*s.sweep);
        const auto rows = sweep::map_indexed<std::array<double, 3>>(
            xs.size(), workers, [&](std::size_t i) {
                const double a = xs[i];
                const double g_se = dt_amp::simulate(sc.cfg, {a}, env).outputs[0] / a;
                const double g_diff =
                    dt_amp::simulate_differential(sc.cfg, {a}, env).outputs[0] / a;
                return std::array<double, 3>{a, g_se, g_diff};
            });
        csv::Writer w({"amplitude_V", "gain_single_ended", "gain_differential"});
        for (const auto& r : rows)
            w.add_row({r[0], r[1], r[2]});
        return {{s.output, w.str()}};
    }

    // Sample simulation of a DC or sine input.
    std::vector<double> samples(sc.input.n_samples);
    for (int i = 0; i < sc.input.n_samples; ++i) {
        samples[i] = sc.input.kind == "dc"
                         ? sc.input.amplitude
                         : sc.input.amplitude *
                               std::sin(2.0 * pi * sc.input.f_in * i / sc.cfg.f_clk);
    }
    const dt_amp::SimResult res =
        sc.cfg.differential ? dt_amp::simulate_differential(sc.cfg, samples, env)
                            : dt_amp::simulate(sc.cfg, samples, env);
    csv::Writer w({"sample_index", "t_s", "v_in_V", "v_out_V", "fault_flags"});
    for (std::size_t i = 0; i < samples.size(); ++i)
        w.add_row({static_cast<double>(i), static_cast<double>(i) / sc.cfg.f_clk, samples[i],
                   res.outputs[i], static_cast<double>(res.faults[i])});
    return {{s.output, w.str()}};
}

void add_summary_row(csv::Writer& w, double x, const rectifier::RectifierConfig& cfg,
                     const rectifier::SimTrace& trace, double v_out_used)
{
    const auto& led = trace.ledger;
    const double p = led.net_power();
    w.add_row({x, p, rectifier::fom(p, cfg.xdcr), led.e_out, led.e_inv, led.e_loss_rtot,
               led.e_loss_rpz, led.e_loss_flip, led.e_ctrl, led.t_span,
               static_cast<double>(trace.cycles), v_out_used});
}

std::vector<Artifact> run_piezo(const Scenario& s, int workers)
{
    const auto& sc = std::get<scenario::PiezoScenario>(s.payload);
    const std::vector<std::string> summary_header = {
        "x",          "p_out_W",      "fom",          "e_out_J",
        "e_inv_J",    "e_loss_rtot_J", "e_loss_rpz_J", "e_loss_flip_J",
        "e_ctrl_J",   "t_span_s",     "cycles",       "v_out_V"};

    if (s.sweep) {
        const auto xs = sweep_values(*s.sweep);
        struct Row {
            rectifier::RectifierConfig cfg;
            rectifier::SimTrace trace;
            double v_out = 0.0;
        };
        const auto rows = sweep::map_indexed<Row>(xs.size(), workers, [&](std::size_t i) {
            const Scenario point = scenario::with_sweep_value(s, xs[i]);
            const auto& p = std::get<scenario::PiezoScenario>(point.payload);
            Row row;
            row.cfg = p.cfg;
            if (p.steady_state)
                row.cfg.v_out = rectifier::steady_state_vout(row.cfg);
            row.trace = rectifier::simulate(row.cfg, p.n_cycles);
            row.v_out = row.cfg.v_out;
            return row;
        });
        csv::Writer w(summary_header);
        for (std::size_t i = 0; i < rows.size(); ++i)
            add_summary_row(w, xs[i], rows[i].cfg, rows[i].trace, rows[i].v_out);
        return {{s.output, w.str()}};
    }

    rectifier::RectifierConfig cfg = sc.cfg;
    if (sc.steady_state)
        cfg.v_out = rectifier::steady_state_vout(cfg);
    const rectifier::SimTrace trace = rectifier::simulate(cfg, sc.n_cycles);

    csv::Writer w({"t_s", "state", "v_pz_V", "v_pzp_V", "v_pzn_V", "i_l_A"});
    for (const auto& e : trace.events)
        w.add_row_raw({csv::format(e.t), to_string(e.state), csv::format(e.v_pz),
                       csv::format(e.v_pzp), csv::format(e.v_pzn), csv::format(e.i_l)});

    csv::Writer ws(summary_header);
    add_summary_row(ws, 0.0, cfg, trace, cfg.v_out);
    (void)workers;
    return {{s.output, w.str()}, {summary_name(s.output), ws.str()}};
}

} // namespace

std::vector<Artifact> run_scenario(const Scenario& s, int workers)
{
    switch (s.module) {
    case scenario::Module::Swcap: return run_swcap(s, workers);
    case scenario::Module::NemsPg: return run_nems_pg(s, workers);
    case scenario::Module::DtAmp: return run_dt_amp(s, workers);
    case scenario::Module::Piezo: return run_piezo(s, workers);
    }
    throw std::logic_error("run_scenario: unhandled module");
}

} // namespace esim::runner
