#include "esim/dt_amp.hpp"

#include <cmath>
#include <stdexcept>

#include "esim/constants.hpp"

namespace esim::dt_amp {

void AmpConfig::validate() const
{
    cap_switch.validate();
    ohmic.validate();
    if (n_parallel < 1)
        throw std::invalid_argument("AmpConfig: n_parallel must be >= 1");
    if (!(v_bias > 0.0 && f_clk > 0.0 && c_large > 0.0))
        throw std::invalid_argument("AmpConfig: v_bias, f_clk, c_large must be > 0");
    const double half_period = 0.5 / f_clk;
    if (!(half_period > cap_switch.t_mech && half_period > ohmic.t_mech))
        throw std::invalid_argument(
            "AmpConfig: half clock period must exceed both mechanical delays");
}

double ideal_gain(const nems::NemsCapacitiveSwitch& sw)
{
    return sw.c_on / sw.c_off;
}

double theoretical_gain(const nems::NemsCapacitiveSwitch& sw)
{
    return 1.0 + sw.g0 * sw.eps_d / sw.t_d;
}

double practical_gain(const nems::NemsCapacitiveSwitch& sw)
{
    return theoretical_gain(sw) * sw.gamma;
}

double parasitic_load(const AmpConfig& cfg)
{
    // One conducting and one blocking ohmic switch hang on each bank node in
    // both phases.
    return cfg.ohmic.c_gs_on + cfg.ohmic.c_gs_off;
}

double loaded_gain(const AmpConfig& cfg)
{
    const double n = static_cast<double>(cfg.n_parallel);
    const double cp = parasitic_load(cfg);
    return (n * cfg.cap_switch.c_on + cp) / (n * cfg.cap_switch.c_off + cp);
}

RangeReport validate_voltage_range(const AmpConfig& cfg, double v_in_max)
{
    RangeReport r;
    r.pull_in_margin = cfg.v_bias - cfg.cap_switch.v_pi - v_in_max;
    r.pull_in_ok = r.pull_in_margin >= 0.0;
    r.v_out_max = loaded_gain(cfg) * v_in_max;
    r.pull_out_margin = cfg.cap_switch.v_po - r.v_out_max;
    r.pull_out_ok = r.pull_out_margin > 0.0;
    return r;
}

NoiseResult output_noise(const AmpConfig& cfg, const Environment& env)
{
    const double c_on_total = static_cast<double>(cfg.n_parallel) * cfg.cap_switch.c_on;
    const double a_v = loaded_gain(cfg);
    NoiseResult out;
    out.power = 2.0 * k_boltzmann * env.temperature / c_on_total * (1.0 + a_v);
    if (cfg.differential)
        out.power *= 2.0;
    out.rms = std::sqrt(out.power);
    return out;
}

DynamicPower dynamic_power(const AmpConfig& cfg)
{
    const double n = static_cast<double>(cfg.n_parallel);
    DynamicPower p;
    p.p_amp = 2.0 *
              (2.0 * n * cfg.cap_switch.c_on + 4.0 * cfg.ohmic.c_gs_on +
               4.0 * cfg.ohmic.c_gs_off) *
              cfg.v_bias * cfg.v_bias * cfg.f_clk;
    const double c_par_on = cfg.ohmic.c_gs_on + cfg.ohmic.c_gd_on + cfg.ohmic.c_gb_on;
    p.p_sw = 2.0 * (6.0 * c_par_on + 3.0 * cfg.ohmic.c_gb_on) * cfg.v_gb * cfg.v_gb *
             cfg.f_clk;
    p.total = p.p_amp + p.p_sw + cfg.p_clk;
    return p;
}

SimResult simulate(const AmpConfig& cfg, const std::vector<double>& input_samples,
                   const Environment& env)
{
    (void)env;
    cfg.validate();
    const nems::NemsCapacitiveSwitch& sw = cfg.cap_switch;
    const double n = static_cast<double>(cfg.n_parallel);
    const double cp = parasitic_load(cfg);

    SimResult res;
    res.outputs.reserve(input_samples.size());
    res.faults.reserve(input_samples.size());

    for (const double v_in : input_samples) {
        std::uint8_t flags = 0;

        // Sample phase: the floating c_large sources place v_in +/- v_bias
        // across the two banks.
        const double va = v_in + cfg.v_bias;
        const double vb = v_in - cfg.v_bias;
        auto [ca, contact_a] = nems::cap_capacitance(sw, va, false);
        auto [cb, contact_b] = nems::cap_capacitance(sw, vb, false);
        if (!contact_a || !contact_b)
            flags |= fault_pull_in;

        const double q_total = (n * ca + cp) * va + (n * cb + cp) * vb;

        // Hold phase: banks shorted, bias charge cancels, beams release when
        // the node voltage sits below pull-out.
        const double c_closed_total = n * ca + n * cb + 2.0 * cp;
        const double v_mid = q_total / c_closed_total;
        bool stay_a = contact_a && std::abs(v_mid) >= sw.v_po;
        bool stay_b = contact_b && std::abs(v_mid) >= sw.v_po;
        if (stay_a || stay_b)
            flags |= fault_pull_out;

        double v = v_mid;
        auto total_cap = [&](double volts) {
            const double c_a = stay_a ? sw.c_on : nems::cap_capacitance(sw, volts, false).first;
            const double c_b = stay_b ? sw.c_on : nems::cap_capacitance(sw, volts, false).first;
            return n * c_a + n * c_b + 2.0 * cp;
        };
        for (int it = 0; it < 100; ++it) {
            const double v_next = q_total / total_cap(v);
            const double step = 0.5 * (v_next - v);
            v += step;
            if (std::abs(step) < 1e-6)
                break;
        }
        const double c_final = total_cap(v);
        const double v_out = q_total / c_final; // exact charge balance at the solved capacitance
        if (std::abs(v_out) >= sw.v_pi)
            flags |= fault_pull_out; // amplified node would re-close the beams

        const double q_after = c_final * v_out;
        const double q_ref = std::max(std::abs(q_total), 1e-30);
        res.max_charge_drift = std::max(res.max_charge_drift,
                                        std::abs(q_after - q_total) / q_ref);

        PhaseState hold;
        hold.phase = Phase::Hold;
        const double c_a_final = stay_a ? sw.c_on : nems::cap_capacitance(sw, v_out, false).first;
        hold.q_top_a = (n * c_a_final + cp) * v_out;
        hold.q_top_b = q_after - hold.q_top_a;
        hold.contact_a = stay_a;
        hold.contact_b = stay_b;
        hold.v_a = v_out;
        hold.v_b = v_out;

        res.outputs.push_back(v_out);
        res.faults.push_back(flags);
        res.hold_states.push_back(hold);
    }
    return res;
}

SimResult simulate_differential(const AmpConfig& cfg, const std::vector<double>& diff_samples,
                                const Environment& env)
{
    std::vector<double> pos(diff_samples.size());
    std::vector<double> neg(diff_samples.size());
    for (std::size_t i = 0; i < diff_samples.size(); ++i) {
        pos[i] = 0.5 * diff_samples[i];
        neg[i] = -0.5 * diff_samples[i];
    }
    const SimResult rp = simulate(cfg, pos, env);
    const SimResult rn = simulate(cfg, neg, env);

    SimResult res;
    res.outputs.resize(diff_samples.size());
    res.faults.resize(diff_samples.size());
    for (std::size_t i = 0; i < diff_samples.size(); ++i) {
        res.outputs[i] = rp.outputs[i] - rn.outputs[i];
        res.faults[i] = rp.faults[i] | rn.faults[i];
    }
    res.max_charge_drift = std::max(rp.max_charge_drift, rn.max_charge_drift);
    return res;
}

double gain_droop(const AmpConfig& cfg, double amplitude, double ref_amplitude,
                  bool differential, const Environment& env)
{
    auto gain_at = [&](double a) {
        if (differential)
            return simulate_differential(cfg, {a}, env).outputs[0] / a;
        return simulate(cfg, {a}, env).outputs[0] / a;
    };
    return 1.0 - gain_at(amplitude) / gain_at(ref_amplitude);
}

AmpConfig reference_config()
{
    AmpConfig cfg;
    cfg.cap_switch = nems::reference_capacitive_switch();
    cfg.ohmic = nems::reference_ohmic_switch();
    cfg.n_parallel = 10;
    cfg.v_bias = 4.0;
    cfg.f_clk = 100e3;
    cfg.c_large = 30e-12;
    return cfg;
}

} // namespace esim::dt_amp
