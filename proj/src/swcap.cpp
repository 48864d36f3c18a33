#include "esim/swcap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace esim::swcap {

void SwCapConfig::validate() const
{
    if (!(c_x > 0.0))
        throw std::invalid_argument("SwCapConfig: c_x must be > 0");
    if (!(f_clk > 0.0))
        throw std::invalid_argument("SwCapConfig: f_clk must be > 0");
    if (v_b_off < 0.0 || v_b_on < 0.0)
        throw std::invalid_argument("SwCapConfig: bias voltages must be >= 0");
    if (i_dis < 0.0)
        throw std::invalid_argument("SwCapConfig: i_dis must be >= 0");
    if (variant == Variant::CMOS &&
        !(diode_beta > 0.0 && diode_v_th > 0.0 && diode_n > 1.0))
        throw std::invalid_argument("SwCapConfig: invalid diode parameters");
}

std::string to_string(PgState s)
{
    switch (s) {
    case PgState::ON: return "ON";
    case PgState::OFF: return "OFF";
    case PgState::SUPER_ON: return "SUPER_ON";
    case PgState::SUPER_OFF: return "SUPER_OFF";
    }
    return "?";
}

double refresh_error(const SwCapConfig& cfg)
{
    return cfg.i_dis / (4.0 * cfg.c_x * cfg.f_clk);
}

VoltageError voltage_error(const SwCapConfig& cfg, const Environment& env)
{
    if (cfg.variant != Variant::CMOS)
        throw std::invalid_argument("voltage_error: defined for the CMOS variant only");

    // Diode devices carry I_dis in steady state and must sit in
    // subthreshold: V_GS = alpha*V_TH with alpha in (0,1).
    const double n_vt = cfg.diode_n * env.thermal_voltage();
    const double prefactor = cfg.diode_beta * (cfg.diode_n - 1.0) * env.thermal_voltage() *
                             env.thermal_voltage();
    const double alpha = 1.0 - (n_vt / cfg.diode_v_th) * std::log(prefactor / cfg.i_dis);
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("voltage_error: diode not in subthreshold; model invalid");

    VoltageError e;
    e.alpha = alpha;
    e.diode_term = 2.0 * alpha * cfg.diode_v_th;
    e.refresh_term = refresh_error(cfg);
    e.total = e.diode_term + e.refresh_term;
    return e;
}

namespace {

double error_term(const SwCapConfig& cfg, const Environment& env)
{
    if (cfg.i_dis == 0.0)
        return 0.0; // lossless hold, no refresh decay and no diode current
    if (cfg.variant == Variant::MEMS)
        return refresh_error(cfg);
    return voltage_error(cfg, env).total;
}

} // namespace

double avg_gate_voltage_super_off(const SwCapConfig& cfg, const Environment& env)
{
    return cfg.v_dd + cfg.v_b_off - error_term(cfg, env);
}

double avg_gate_voltage_super_on(const SwCapConfig& cfg, const Environment& env)
{
    return -cfg.v_b_on + error_term(cfg, env);
}

double required_refresh_frequency(const SwCapConfig& cfg, double max_error_fraction)
{
    if (!(max_error_fraction > 0.0 && max_error_fraction <= 1.0))
        throw std::invalid_argument("required_refresh_frequency: fraction must be in (0, 1]");
    // refresh error I*T/(4C) held below fraction*(v_dd + v_b_off)
    return cfg.i_dis / (4.0 * max_error_fraction * (cfg.v_dd + cfg.v_b_off) * cfg.c_x);
}

double pg_leakage(const SwCapConfig& cfg, const mos::MosDevice& dev, const Environment& env)
{
    const double v_gsp_eff = avg_gate_voltage_super_off(cfg, env) - cfg.v_dd;
    return mos::total_off_leakage(dev, v_gsp_eff, env);
}

double pg_on_resistance(const SwCapConfig& cfg, const mos::MosDevice& dev,
                        const Environment& env)
{
    const double v_sg_eff = cfg.v_dd - avg_gate_voltage_super_on(cfg, env);
    if (v_sg_eff > dev.v_sg_max)
        throw std::domain_error("pg_on_resistance: v_sg " + std::to_string(v_sg_eff) +
                                " V exceeds v_sg_max " + std::to_string(dev.v_sg_max) + " V");
    return mos::on_resistance(dev, v_sg_eff);
}

double optimal_v_b_off(const SwCapConfig& cfg, const mos::MosDevice& dev,
                       const Environment& env)
{
    return mos::optimal_super_cutoff_bias(dev, env) + error_term(cfg, env);
}

double GateBiasTrace::value(double t) const
{
    for (const Piece& p : pieces)
        if (t >= p.t0 && t <= p.t1)
            return p.v0 + p.slope * (t - p.t0);
    throw std::out_of_range("GateBiasTrace::value: t outside trace");
}

double GateBiasTrace::time_average(double t0, double t1) const
{
    if (!(t1 > t0))
        throw std::invalid_argument("GateBiasTrace::time_average: empty window");
    double integral = 0.0;
    for (const Piece& p : pieces) {
        const double a = std::max(t0, p.t0);
        const double b = std::min(t1, p.t1);
        if (b <= a)
            continue;
        const double va = p.v0 + p.slope * (a - p.t0);
        const double vb = p.v0 + p.slope * (b - p.t0);
        integral += 0.5 * (va + vb) * (b - a);
    }
    return integral / (t1 - t0);
}

GateBiasTrace simulate_gate_bias(const SwCapConfig& cfg, const Environment& env,
                                 const std::vector<std::pair<double, PgState>>& schedule,
                                 double duration)
{
    cfg.validate();
    if (schedule.empty())
        throw std::invalid_argument("simulate_gate_bias: empty schedule");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (!(schedule[i].first > schedule[i - 1].first))
            throw std::invalid_argument("simulate_gate_bias: timestamps must increase");
    if (!(duration > schedule.front().first))
        throw std::invalid_argument("simulate_gate_bias: duration too short");

    const double half_t = 0.5 / cfg.f_clk;
    const double slope_mag = cfg.i_dis / cfg.c_x;
    const double err = error_term(cfg, env);

    GateBiasTrace trace;
    auto flat_piece = [&](double a, double b, double v, PgState s) {
        trace.pieces.push_back({a, b, v, 0.0, s});
    };

    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const double t_begin = schedule[i].first;
        const double t_end = (i + 1 < schedule.size())
                                 ? std::min(schedule[i + 1].first, duration)
                                 : duration;
        if (t_end <= t_begin)
            continue;
        const PgState s = schedule[i].second;
        switch (s) {
        case PgState::ON:
            flat_piece(t_begin, t_end, 0.0, s);
            break;
        case PgState::OFF:
            flat_piece(t_begin, t_end, cfg.v_dd, s);
            break;
        case PgState::SUPER_OFF:
        case PgState::SUPER_ON: {
            // Refresh restores the post-diode-drop level; the refresh error
            // accrues over the following half period. Discharge pulls the
            // gate toward the rails: down in super turn-off, up in super
            // turn-on.
            const bool off = (s == PgState::SUPER_OFF);
            const double v_start = off ? cfg.v_dd + cfg.v_b_off - (err - refresh_error(cfg))
                                       : -cfg.v_b_on + (err - refresh_error(cfg));
            const double slope = off ? -slope_mag : slope_mag;
            for (double t = t_begin; t < t_end; t += half_t) {
                const double seg_end = std::min(t + half_t, t_end);
                trace.pieces.push_back({t, seg_end, v_start, slope, s});
                trace.refresh_events.push_back(t);
            }
            break;
        }
        }
    }
    return trace;
}

} // namespace esim::swcap
