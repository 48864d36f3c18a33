#include "esim/nems_pg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "esim/constants.hpp"

namespace esim::nems_pg {

void LogicBlockSpec::validate() const
{
    if (!(v_dd > 0.0 && f_logic > 0.0 && c_l > 0.0 && i_static_on > 0.0))
        throw std::invalid_argument("LogicBlockSpec: fields must be > 0");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("LogicBlockSpec: alpha must be in [0, 1]");
}

void PgSwitchSpec::validate() const
{
    if (!(r_on > 0.0))
        throw std::invalid_argument("PgSwitchSpec: r_on must be > 0");
    if (kind == SwitchKind::NEMS && i_leak_off != 0.0)
        throw std::invalid_argument("PgSwitchSpec: NEMS switch must have zero off-leakage");
    if (i_leak_off < 0.0 || c_gate < 0.0)
        throw std::invalid_argument("PgSwitchSpec: negative capacitance or leakage");
}

void DutySpec::validate() const
{
    if (!(t_on_over_t_off > 0.0 && f_pg > 0.0))
        throw std::invalid_argument("DutySpec: fields must be > 0");
}

double active_power(const LogicBlockSpec& block)
{
    return block.v_dd *
           (block.alpha * block.c_l * block.v_dd * block.f_logic + block.i_static_on);
}

double energy_gain(const LogicBlockSpec& block, const PgSwitchSpec& finfet,
                   const PgSwitchSpec& nems, const DutySpec& duty)
{
    const double r = duty.t_on_over_t_off;
    const double p_active = active_power(block);
    const double num = finfet.c_gate * block.v_dd * block.v_dd * duty.f_pg * (1.0 + r) +
                       p_active * r + block.v_dd * finfet.i_leak_off;
    const double den = nems.c_gate * nems.drive_voltage * nems.drive_voltage * duty.f_pg *
                           (1.0 + r) +
                       p_active * r;
    return num / den;
}

double energy_saving_percent(double e_g)
{
    if (!(e_g > 0.0))
        throw std::invalid_argument("energy_saving_percent: e_g must be > 0");
    return 100.0 * (1.0 - 1.0 / e_g);
}

SizedSwitch size_pg_switch(const PgSwitchSpec& unit, double target_r_on)
{
    if (!(target_r_on > 0.0))
        throw std::invalid_argument("size_pg_switch: target_r_on must be > 0");
    SizedSwitch out;
    out.count = static_cast<long>(std::ceil(unit.unit_r_on / target_r_on - 1e-12));
    if (out.count < 1)
        out.count = 1;
    out.aggregate = unit;
    out.aggregate.r_on = unit.unit_r_on / static_cast<double>(out.count);
    out.aggregate.c_gate = unit.unit_c_gate * static_cast<double>(out.count);
    if (unit.kind == SwitchKind::FINFET)
        out.aggregate.i_leak_off = unit.i_leak_off * static_cast<double>(out.count);
    else
        out.aggregate.i_leak_off = 0.0;
    return out;
}

double breakeven_duty(const LogicBlockSpec& block, const PgSwitchSpec& finfet,
                      const PgSwitchSpec& nems, const DutySpec& duty,
                      double target_saving_percent)
{
    if (target_saving_percent <= 0.0)
        return std::numeric_limits<double>::infinity();

    auto saving_at = [&](double r) {
        DutySpec d = duty;
        d.t_on_over_t_off = r;
        return energy_saving_percent(energy_gain(block, finfet, nems, d));
    };

    double lo = 1e-9;
    if (saving_at(lo) < target_saving_percent)
        throw std::domain_error("breakeven_duty: target saving unreachable even as duty -> 0");
    double hi = 1.0;
    while (saving_at(hi) > target_saving_percent && hi < 1e9)
        hi *= 2.0;

    // saving is monotone decreasing in r
    for (int it = 0; it < 200 && (hi - lo) > 1e-6 * hi; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (saving_at(mid) > target_saving_percent)
            lo = mid;
        else
            hi = mid;
    }
    return std::sqrt(lo * hi);
}

namespace {

TechPreset make_preset(const std::string& name, double f_logic, double i_static,
                       double i_leak_finfet, double c_gf, double r_on_f, double c_gn,
                       double r_on_n, long n_nems, double nems_area)
{
    constexpr double v_dd = 0.7;
    constexpr double i_average_alpha1 = 0.535; // A

    TechPreset p;
    p.name = name;
    p.block.v_dd = v_dd;
    p.block.f_logic = f_logic;
    p.block.i_static_on = i_static;
    p.block.c_l = (i_average_alpha1 - i_static) / (v_dd * f_logic); // back-solved
    p.block.alpha = 0.1;

    p.finfet.kind = SwitchKind::FINFET;
    p.finfet.c_gate = c_gf;
    p.finfet.drive_voltage = v_dd;
    p.finfet.r_on = r_on_f;
    p.finfet.i_leak_off = i_leak_finfet;
    p.finfet.unit_r_on = r_on_f; // single aggregate device
    p.finfet.unit_c_gate = c_gf;

    p.nems.kind = SwitchKind::NEMS;
    p.nems.c_gate = c_gn;
    p.nems.drive_voltage = 2.5; // above pull-in; dynamic term is negligible
    p.nems.r_on = r_on_n;
    p.nems.i_leak_off = 0.0;
    p.nems.unit_r_on = r_on_n * static_cast<double>(n_nems);
    p.nems.unit_c_gate = c_gn / static_cast<double>(n_nems);
    p.nems.unit_area = nems_area / static_cast<double>(n_nems);
    return p;
}

} // namespace

TechPreset preset(const std::string& name)
{
    if (name == "20nm")
        return make_preset("20nm", 2.00e9, 340e-6, 99e-6, 13.9e-12, 22e-3, 225e-15,
                           22.2e-3, 4505, 1802e-12);
    if (name == "17nm")
        return make_preset("17nm", 2.75e9, 1170e-6, 315e-6, 12.3e-12, 20.6e-3, 242e-15,
                           20.7e-3, 4840, 1936e-12);
    if (name == "14nm")
        return make_preset("14nm", 3.50e9, 1710e-6, 502e-6, 10.2e-12, 23.3e-3, 215e-15,
                           23.2e-3, 4310, 1724e-12);
    throw std::invalid_argument("preset: unknown technology '" + name + "'");
}

std::vector<TechPreset> all_presets()
{
    return {preset("20nm"), preset("17nm"), preset("14nm")};
}

double leakage_temperature_scale(const TechPreset& p, const Environment& env)
{
    const double vt_ref = k_boltzmann * 300.0 / q_electron;
    const double vt = env.thermal_voltage();
    return std::exp(p.leak_v_th / (p.leak_n * vt_ref) - p.leak_v_th / (p.leak_n * vt));
}

TechPreset preset_at_temperature(const TechPreset& p, const Environment& env)
{
    const double s = leakage_temperature_scale(p, env);
    TechPreset out = p;
    out.block.i_static_on *= s;
    out.finfet.i_leak_off *= s;
    return out;
}

std::vector<SocRow> soc_report(const std::vector<SocUnit>& units, const TechPreset& p,
                               const Environment& env)
{
    const TechPreset pt = preset_at_temperature(p, env);
    std::vector<SocRow> rows;
    rows.reserve(units.size());
    for (const SocUnit& u : units) {
        LogicBlockSpec block = pt.block;
        block.alpha = u.alpha;
        block.f_logic = u.f_logic;
        DutySpec duty;
        duty.t_on_over_t_off = u.t_on_over_t_off;
        SocRow row;
        row.unit = u;
        row.e_g = energy_gain(block, pt.finfet, pt.nems, duty);
        row.saving_percent = energy_saving_percent(row.e_g);
        rows.push_back(row);
    }
    return rows;
}

} // namespace esim::nems_pg
