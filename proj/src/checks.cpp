#include "esim/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "esim/csv.hpp"
#include "esim/dt_amp.hpp"
#include "esim/mos.hpp"
#include "esim/nems.hpp"
#include "esim/nems_pg.hpp"
#include "esim/rectifier.hpp"
#include "esim/runner.hpp"
#include "esim/scenario.hpp"
#include "esim/swcap.hpp"
#include "esim/sweep.hpp"

namespace esim::checks {

void CheckList::add_abs(const std::string& name, double actual, double expected, double tol)
{
    checks.push_back({name, expected, actual, tol, std::abs(actual - expected) <= tol});
}

void CheckList::add_rel(const std::string& name, double actual, double expected,
                        double rel_tol)
{
    add_abs(name, actual, expected, rel_tol * std::abs(expected));
}

void CheckList::add_range(const std::string& name, double actual, double lo, double hi)
{
    checks.push_back({name, 0.5 * (lo + hi), actual, 0.5 * (hi - lo),
                      actual >= lo && actual <= hi});
}

void CheckList::add_bool(const std::string& name, bool ok)
{
    checks.push_back({name, 1.0, ok ? 1.0 : 0.0, 0.0, ok});
}

void CheckList::merge(const CheckList& other)
{
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool CheckList::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string CheckList::report() const
{
    std::ostringstream out;
    for (const Check& c : checks) {
        out << "CHECK " << c.name << ": expected=" << csv::format(c.expected)
            << " actual=" << csv::format(c.actual) << " tol=" << csv::format(c.tolerance)
            << " -> " << (c.pass ? "PASS" : "FAIL") << "\n";
    }
    return out.str();
}

namespace {

const Environment kRoom{300.0};

swcap::SwCapConfig ref_180nm_config()
{
    swcap::SwCapConfig cfg;
    cfg.variant = swcap::Variant::CMOS;
    cfg.c_x = 5e-12;
    cfg.f_clk = 24.0;
    cfg.v_dd = 1.8;
    cfg.v_b_off = 0.75;
    cfg.v_b_on = 1.5;
    cfg.i_dis = 10e-12;
    cfg.diode_beta = 60e-6;
    cfg.diode_v_th = 0.5;
    cfg.diode_n = 1.5;
    return cfg;
}

mos::MosDevice ref_pg_device()
{
    mos::MosDevice dev;
    dev.beta = 60e-6;
    dev.n = 1.5;
    dev.v_th = 0.5;
    dev.v_sg_max = 3.3;
    dev.gate_leak_density = 1e-8;
    dev.width = 10e-3;
    return dev;
}

CheckList criterion_1()
{
    CheckList c;
    swcap::SwCapConfig cfg;
    cfg.v_dd = 0.7;
    cfg.v_b_off = 0.5;
    cfg.c_x = 5e-12;
    cfg.i_dis = 100e-12;
    const double f1 = swcap::required_refresh_frequency(cfg, 0.05);
    const double formula = cfg.i_dis / (4.0 * 0.05 * (cfg.v_dd + cfg.v_b_off) * cfg.c_x);
    c.add_rel("refresh_freq_formula_exact", f1, formula, 1e-12);
    c.add_abs("refresh_freq_83Hz", f1, 83.0, 1.0);
    cfg.i_dis = 1e-9;
    const double f2 = swcap::required_refresh_frequency(cfg, 0.05);
    c.add_abs("refresh_freq_833Hz_hot", f2, 833.0, 1.0);
    return c;
}

CheckList criterion_2()
{
    CheckList c;
    const auto e = swcap::voltage_error(ref_180nm_config(), kRoom);
    c.add_abs("voltage_error_total_V", e.total, 0.45, 0.03);
    c.add_range("voltage_error_diode_fraction", e.diode_term / e.total, 0.95, 1.0);
    c.add_abs("voltage_error_refresh_V", e.refresh_term, 20.8e-3, 0.1e-3);
    return c;
}

CheckList criterion_3()
{
    CheckList c;
    const auto errs = sweep::map_indexed<double>(50, 0, [&](std::size_t i) {
        std::mt19937 rng(2024u + static_cast<unsigned>(i));
        std::uniform_real_distribution<double> u(0.0, 1.0);
        swcap::SwCapConfig cfg;
        cfg.variant = (i % 2 == 0) ? swcap::Variant::CMOS : swcap::Variant::MEMS;
        cfg.c_x = 1e-12 + 19e-12 * u(rng);
        cfg.f_clk = 10.0 + 990.0 * u(rng);
        cfg.v_dd = 0.5 + 1.5 * u(rng);
        cfg.v_b_off = 0.2 + 1.3 * u(rng);
        cfg.v_b_on = 1.0 + 0.5 * u(rng);
        cfg.i_dis = 1e-12 + 99e-12 * u(rng);
        const bool use_off = (i % 4 < 2);
        const auto state = use_off ? swcap::PgState::SUPER_OFF : swcap::PgState::SUPER_ON;
        const int halves = 6 + static_cast<int>(34.0 * u(rng));
        const double duration = halves * 0.5 / cfg.f_clk;
        const auto trace = swcap::simulate_gate_bias(cfg, kRoom, {{0.0, state}}, duration);
        const double avg = trace.time_average(0.0, duration);
        const double expect = use_off ? swcap::avg_gate_voltage_super_off(cfg, kRoom)
                                      : swcap::avg_gate_voltage_super_on(cfg, kRoom);
        return std::abs(avg / expect - 1.0);
    });
    c.add_range("sawtooth_avg_max_rel_err_50cfg", *std::max_element(errs.begin(), errs.end()),
                0.0, 1e-3);
    return c;
}

CheckList criterion_4()
{
    CheckList c;
    const mos::MosDevice cal = mos::calibrate_gidl(ref_pg_device(), 0.3, 186.0, kRoom);
    const double v_opt = mos::optimal_super_cutoff_bias(cal, kRoom);
    const double ratio =
        mos::total_off_leakage(cal, 0.0, kRoom) / mos::total_off_leakage(cal, v_opt, kRoom);
    c.add_abs("v_gsp_opt_V", v_opt, 0.30, 0.01);
    c.add_rel("leakage_reduction_ratio", ratio, 186.0, 0.01);

    const double v300 = mos::optimal_super_cutoff_bias(cal, Environment{300.0});
    const double v330 = mos::optimal_super_cutoff_bias(cal, Environment{330.0});
    const double v360 = mos::optimal_super_cutoff_bias(cal, Environment{360.0});
    c.add_bool("v_opt_increases_with_T", v300 < v330 && v330 < v360);

    mos::MosDevice scaled = cal;
    scaled.beta *= 3.7;
    scaled.gidl_i0 *= 3.7;
    const double v_scaled = mos::optimal_super_cutoff_bias(scaled, kRoom);
    c.add_abs("v_opt_process_invariant_V", v_scaled, v_opt, 1.01e-4);
    return c;
}

CheckList criterion_5()
{
    CheckList c;
    const double expect_saving[3] = {3.54, 10.35, 15.54};
    const double expect_breakeven[3] = {1.7, 5.2, 8.4};
    const auto presets = nems_pg::all_presets();
    for (std::size_t i = 0; i < presets.size(); ++i) {
        const auto& p = presets[i];
        nems_pg::DutySpec duty{0.05, 1e3};
        const double e_g = nems_pg::energy_gain(p.block, p.finfet, p.nems, duty);
        if (i == 2)
            c.add_abs("saving_pct_14nm_r5", nems_pg::energy_saving_percent(e_g),
                      expect_saving[i], 1.0);
        const double r10 = nems_pg::breakeven_duty(p.block, p.finfet, p.nems, duty, 10.0);
        c.add_abs("breakeven_pct_" + p.name, 100.0 * r10, expect_breakeven[i], 1.0);
    }

    const auto& p14 = presets[2];
    nems_pg::DutySpec big{100.0, 1e3};
    c.add_range("e_g_limit_r100", nems_pg::energy_gain(p14.block, p14.finfet, p14.nems, big),
                1.0, 1.01);

    nems_pg::DutySpec lo{0.05, 1.0};
    nems_pg::DutySpec hi{0.05, 1e6};
    const double eg_lo = nems_pg::energy_gain(p14.block, p14.finfet, p14.nems, lo);
    const double eg_hi = nems_pg::energy_gain(p14.block, p14.finfet, p14.nems, hi);
    c.add_range("e_g_f_pg_insensitivity", std::abs(eg_hi / eg_lo - 1.0), 0.0, 0.01);
    return c;
}

CheckList criterion_6()
{
    CheckList c;
    const auto sw = nems::reference_capacitive_switch();
    c.add_rel("ideal_gain", dt_amp::ideal_gain(sw), 5.1, 1e-9);
    c.add_abs("loaded_gain", dt_amp::loaded_gain(dt_amp::reference_config()), 4.77, 0.01);
    c.add_rel("theoretical_gain", dt_amp::theoretical_gain(sw), 10.36, 1e-9);

    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        nems::NemsCapacitiveSwitch g;
        g.g0 = 50e-9 + 450e-9 * u(rng);
        g.t_d = 20e-9 + 280e-9 * u(rng);
        g.eps_d = 2.0 + 8.0 * u(rng);
        g.area = 1e-12 + 99e-12 * u(rng);
        g.k_eff = 0.1 + 9.9 * u(rng);
        const auto [v_pi, v_po] = nems::cap_pull_voltages_factored(g);
        worst = std::max(worst, std::abs(v_po / v_pi / nems::cap_pull_ratio(g) - 1.0));
        const auto [v_pi_d, v_po_d] = nems::cap_pull_voltages(g);
        worst = std::max(worst, std::abs(v_pi_d / v_pi - 1.0));
        worst = std::max(worst, std::abs(v_po_d / v_po - 1.0));
    }
    c.add_range("pull_ratio_identity_max_rel_err", worst, 0.0, 1e-12);
    return c;
}

CheckList criterion_7()
{
    CheckList c;
    const auto cfg = dt_amp::reference_config();
    const auto p = dt_amp::dynamic_power(cfg);
    c.add_rel("p_amp_W", p.p_amp, 0.44e-6, 0.02);

    auto cfg2 = cfg;
    cfg2.f_clk *= 2.0;
    c.add_rel("p_amp_linear_in_f", dt_amp::dynamic_power(cfg2).p_amp, 2.0 * p.p_amp, 1e-9);
    auto cfg3 = cfg;
    cfg3.v_bias *= 2.0;
    c.add_rel("p_amp_quadratic_in_vbias", dt_amp::dynamic_power(cfg3).p_amp, 4.0 * p.p_amp,
              1e-9);
    return c;
}

dt_amp::AmpConfig linear_gain5_config()
{
    // Stiff beam (negligible deflection) and no ohmic parasitics: the ideal
    // charge-redistribution amplifier with gain exactly 5.
    dt_amp::AmpConfig cfg = dt_amp::reference_config();
    nems::NemsCapacitiveSwitch sw = cfg.cap_switch;
    sw.k_eff = 1e5;
    sw.gamma = 5.0 / 10.36;
    sw.c_on = sw.gamma * eps0 * sw.eps_d * sw.area / sw.t_d; // 5 * c_off
    cfg.cap_switch = sw;
    cfg.ohmic.c_gs_on = 0.0;
    cfg.ohmic.c_gd_on = 0.0;
    cfg.ohmic.c_gs_off = 0.0;
    cfg.ohmic.c_gd_off = 0.0;
    return cfg;
}

CheckList criterion_8()
{
    CheckList c;
    const auto lin = linear_gain5_config();
    const auto pos = dt_amp::simulate(lin, {0.2}, kRoom);
    const auto neg = dt_amp::simulate(lin, {-0.2}, kRoom);
    c.add_abs("dc_gain5_pos_V", pos.outputs[0], 1.0, 1e-5);
    c.add_abs("dc_gain5_neg_V", neg.outputs[0], -1.0, 1e-5);
    c.add_bool("dc_gain5_no_fault", pos.faults[0] == 0 && neg.faults[0] == 0);
    c.add_range("charge_drift_per_cycle", pos.max_charge_drift, 0.0, 1e-12);

    const auto cfg = dt_amp::reference_config();
    const double droop_se = dt_amp::gain_droop(cfg, 0.325, 1e-3, false, kRoom);
    const double droop_diff = dt_amp::gain_droop(cfg, 0.325, 1e-3, true, kRoom);
    c.add_range("droop_single_ended", droop_se, 0.005, 0.07);
    c.add_range("droop_differential", droop_diff, 0.005, 0.07);
    c.add_bool("droop_diff_le_single", droop_diff <= droop_se);
    return c;
}

CheckList criterion_9()
{
    CheckList c;
    PiezoTransducer x{19e-9, 146.0, 2e6, 1.0};
    rectifier::ArchParams p;
    p.v_max = 3.3;
    p.v_pc = 1.5;
    p.v_out = 1.0;
    const double p_fbr = rectifier::analytic_pout(rectifier::Arch::FBR, x, p);
    c.add_rel("fbr_pout_W", p_fbr, 2.77e-6, 0.005);
    c.add_rel("proposed_fom_theoretical",
              rectifier::fom(rectifier::analytic_pout(rectifier::Arch::PROPOSED, x, p), x),
              9.6, 1e-12);
    c.add_rel("sece_over_fbr",
              rectifier::analytic_pout(rectifier::Arch::SECE, x, p) / p_fbr, 4.0, 1e-12);

    for (const auto& [vmax, voc] : {std::pair{12.0, 1.0}, std::pair{3.3, 0.5}}) {
        bool dominated = true;
        for (const auto& row : rectifier::compare_architectures(vmax, voc, 1.0, 25)) {
            const double best_baseline =
                std::max({row.fbr, row.bias_flip, row.sece, row.investment, row.precharge,
                          row.dpr});
            dominated = dominated && row.proposed >= best_baseline - 1e-12;
        }
        c.add_bool("proposed_dominates_grid_vmax_" + csv::format(vmax), dominated);
    }
    return c;
}

CheckList criterion_10()
{
    CheckList c;
    struct Sample {
        double pout_err, audit_err, min_node, acc_err;
    };
    const auto runs = sweep::map_indexed<Sample>(25, 0, [&](std::size_t i) {
        std::mt19937 rng(91u + static_cast<unsigned>(i));
        std::uniform_real_distribution<double> u(0.0, 1.0);
        rectifier::RectifierConfig cfg;
        cfg.xdcr.c_pz = 4e-9 + 21e-9 * u(rng);
        cfg.xdcr.f_pz = 60.0 + 190.0 * u(rng);
        cfg.xdcr.r_pz = std::numeric_limits<double>::infinity();
        cfg.xdcr.v_oc = 0.5 + 0.7 * u(rng);
        cfg.l = 10e-6 + 50e-6 * u(rng);
        cfg.v_max = 2.5 + 3.5 * u(rng);
        cfg.v_pc_target = (i % 2 == 0) ? 0.0 : (0.3 + 0.2 * u(rng)) * cfg.v_max;
        // keep at least one full half cycle of accumulation per harvest
        cfg.v_pc_target =
            std::min(cfg.v_pc_target, std::max(0.0, cfg.v_max - 2.0 * cfg.xdcr.v_oc));
        cfg.v_out = 1.0 + 0.3 * cfg.v_max;
        cfg.r_tot = 0.0;
        cfg.flip_loss_v = 0.0;
        cfg.p_ctrl = 0.0;
        cfg.detector_delay = 0.0;

        const double span = cfg.v_max - cfg.v_pc_target;
        const int n_cycles =
            std::max(25, static_cast<int>(std::ceil(120.0 * cfg.xdcr.v_oc / span)));
        const auto trace = rectifier::simulate(cfg, n_cycles);

        rectifier::ArchParams ap;
        ap.v_max = cfg.v_max;
        ap.v_pc = cfg.v_pc_target;
        const double p_ref = rectifier::analytic_pout(rectifier::Arch::PROPOSED, cfg.xdcr, ap);
        const double t_ref = rectifier::accumulation_time(
            cfg.v_max, cfg.v_pc_target, cfg.xdcr.v_oc, 1.0 / cfg.xdcr.f_pz, 0.0);

        Sample s;
        s.pout_err = std::abs(trace.ledger.net_power() / p_ref - 1.0);
        s.audit_err = std::abs(trace.ledger.audit_residual()) /
                      std::max(trace.ledger.e_out, 1e-30);
        s.min_node = trace.min_node_voltage;
        s.acc_err = std::abs(trace.mean_accumulation_time / t_ref - 1.0);
        return s;
    });

    double p_err = 0.0, a_err = 0.0, node = 0.0, acc = 0.0;
    for (const auto& s : runs) {
        p_err = std::max(p_err, s.pout_err);
        a_err = std::max(a_err, s.audit_err);
        node = std::min(node, s.min_node);
        acc = std::max(acc, s.acc_err);
    }
    c.add_range("lossless_pout_vs_closed_form_max_rel_err", p_err, 0.0, 0.01);
    c.add_range("energy_audit_max_residual_frac", a_err, 0.0, 0.005);
    c.add_range("min_node_voltage_V", node, -1e-3, 1.0);
    c.add_range("accumulation_time_max_rel_err", acc, 0.0, 0.005);
    return c;
}

CheckList criterion_11()
{
    CheckList c;
    const double t_pz = 1.0 / 146.0;
    const double t_lossless = rectifier::accumulation_time(3.3, 0.0, 1.0, t_pz, 0.0);
    const double t_lossy = rectifier::accumulation_time(3.3, 0.0, 1.0, t_pz, 0.8);
    c.add_abs("accumulation_increase_pct", 100.0 * (t_lossy / t_lossless - 1.0), 48.5, 0.5);

    const auto cfg_nopc = rectifier::calibrated_config(0.0);
    const double vss_nopc = rectifier::steady_state_vout(cfg_nopc);
    c.add_rel("steady_state_vout_no_precharge_V", vss_nopc, 0.921, 0.10);

    const auto cfg_pc = rectifier::calibrated_config(1.5);
    const double vss_pc = rectifier::steady_state_vout(cfg_pc);
    c.add_rel("steady_state_vout_precharge_V", vss_pc, 1.01, 0.10);

    const double p_out = vss_pc * vss_pc / cfg_pc.r_l;
    c.add_range("calibrated_fom", rectifier::fom(p_out, cfg_pc.xdcr), 3.3, 4.1);
    return c;
}

CheckList criterion_12()
{
    CheckList c;
    // Determinism: the same scenario renders byte-identical artifacts.
    nlohmann::ordered_json j;
    j["name"] = "determinism-probe";
    j["module"] = "piezo";
    j["parameters"] = scenario::default_parameters(scenario::Module::Piezo);
    j["parameters"]["n_cycles"] = 8;
    j["output"] = "probe.csv";
    const auto s = scenario::parse_scenario(j);
    const auto a = runner::run_scenario(s, 4);
    const auto b = runner::run_scenario(s, 1);
    bool identical = a.size() == b.size();
    for (std::size_t i = 0; identical && i < a.size(); ++i)
        identical = a[i].filename == b[i].filename && a[i].content == b[i].content;
    c.add_bool("identical_scenario_identical_csv", identical);

    // Round-trip: parse -> serialize -> parse -> serialize is a fixed point.
    bool roundtrip = true;
    for (const auto m : {scenario::Module::Swcap, scenario::Module::NemsPg,
                         scenario::Module::DtAmp, scenario::Module::Piezo}) {
        nlohmann::ordered_json sj;
        sj["name"] = "roundtrip-" + scenario::to_string(m);
        sj["module"] = scenario::to_string(m);
        sj["parameters"] = scenario::default_parameters(m);
        sj["output"] = "roundtrip.csv";
        const auto s1 = scenario::parse_scenario(sj);
        const auto s2 = scenario::parse_scenario(s1.to_json());
        roundtrip = roundtrip && s1.to_json().dump() == s2.to_json().dump();
    }
    c.add_bool("scenario_roundtrip_stable", roundtrip);
    return c;
}

} // namespace

int criterion_count() { return 12; }

std::string criterion_title(int index)
{
    switch (index) {
    case 1: return "refresh-frequency sizing";
    case 2: return "switch-network voltage error";
    case 3: return "gate-bias sawtooth oracle";
    case 4: return "optimal super cut-off bias";
    case 5: return "NEMS PG energy gain";
    case 6: return "amplifier gains";
    case 7: return "amplifier dynamic power";
    case 8: return "amplifier simulation";
    case 9: return "rectifier closed forms";
    case 10: return "rectifier simulation oracle";
    case 11: return "rectifier loss reconstruction";
    case 12: return "determinism and round-trip";
    }
    return "?";
}

CheckList criterion(int index)
{
    switch (index) {
    case 1: return criterion_1();
    case 2: return criterion_2();
    case 3: return criterion_3();
    case 4: return criterion_4();
    case 5: return criterion_5();
    case 6: return criterion_6();
    case 7: return criterion_7();
    case 8: return criterion_8();
    case 9: return criterion_9();
    case 10: return criterion_10();
    case 11: return criterion_11();
    case 12: return criterion_12();
    }
    throw std::out_of_range("criterion: index must be 1..12");
}

} // namespace esim::checks
