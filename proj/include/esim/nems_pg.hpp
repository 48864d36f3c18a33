#pragma once

#include <string>
#include <vector>

#include "esim/environment.hpp"

namespace esim::nems_pg {

// Digital load behind the PG switch.
struct LogicBlockSpec {
    double v_dd = 0.7;        // V
    double f_logic = 3.5e9;   // Hz
    double c_l = 0.0;         // F, total switched capacitance
    double i_static_on = 0.0; // A, on-state leakage of the logic
    double alpha = 0.1;       // activity factor, [0, 1]

    void validate() const;
};

enum class SwitchKind { FINFET, NEMS };

struct PgSwitchSpec {
    SwitchKind kind = SwitchKind::FINFET;
    double c_gate = 0.0;        // F, aggregate gate capacitance
    double drive_voltage = 0.0; // V, V_DD or the NEMS actuation voltage
    double r_on = 0.0;          // ohm, aggregate
    double i_leak_off = 0.0;    // A, 0 for NEMS
    double unit_r_on = 0.0;     // ohm, single switch
    double unit_c_gate = 0.0;   // F, single switch
    double unit_area = 0.0;     // m^2, single switch

    void validate() const;
};

struct DutySpec {
    double t_on_over_t_off = 0.05;
    double f_pg = 1e3; // Hz

    void validate() const;
};

// V_DD * (alpha*C_L*V_DD*f_Logic + I_Static)
double active_power(const LogicBlockSpec& block);

// Total-energy ratio of FinFET over NEMS gating across one on/off period.
double energy_gain(const LogicBlockSpec& block, const PgSwitchSpec& finfet,
                   const PgSwitchSpec& nems, const DutySpec& duty);

// 100*(1 - 1/E_G)
double energy_saving_percent(double e_g);

struct SizedSwitch {
    long count = 0;
    PgSwitchSpec aggregate;
};

// Parallel-unit count needed to hit an aggregate on-resistance target.
SizedSwitch size_pg_switch(const PgSwitchSpec& unit, double target_r_on);

// T_ON/T_OFF at which the saving drops to target_saving_percent; saving is
// monotone decreasing in the duty ratio so the root is unique. Returns
// +inf for a 0% target.
double breakeven_duty(const LogicBlockSpec& block, const PgSwitchSpec& finfet,
                      const PgSwitchSpec& nems, const DutySpec& duty,
                      double target_saving_percent);

// Technology preset with back-solved load primitives and the subthreshold
// parameters used to scale leakage away from the 300 K reference.
struct TechPreset {
    std::string name;
    LogicBlockSpec block;   // at 300 K, alpha as configured
    PgSwitchSpec finfet;    // at 300 K
    PgSwitchSpec nems;
    double leak_n = 1.1;    // FinFET subthreshold factor for scaling
    double leak_v_th = 0.32; // V
};

TechPreset preset(const std::string& name); // "20nm", "17nm", "14nm"
std::vector<TechPreset> all_presets();

// Leakage multiplier exp(v_th/(n*Vt(300K)) - v_th/(n*Vt(T))).
double leakage_temperature_scale(const TechPreset& p, const Environment& env);

// Preset with i_static_on and i_leak_off moved to the environment's
// temperature.
TechPreset preset_at_temperature(const TechPreset& p, const Environment& env);

struct SocUnit {
    std::string name;
    double alpha = 0.0;
    double t_on_over_t_off = 0.0;
    double f_logic = 0.0; // Hz
};

struct SocRow {
    SocUnit unit;
    double e_g = 0.0;
    double saving_percent = 0.0;
};

// Per-functional-unit saving for a SoC built on the given preset.
std::vector<SocRow> soc_report(const std::vector<SocUnit>& units, const TechPreset& p,
                               const Environment& env);

} // namespace esim::nems_pg
