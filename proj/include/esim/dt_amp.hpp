#pragma once

#include <cstdint>
#include <vector>

#include "esim/environment.hpp"
#include "esim/nems.hpp"

namespace esim::dt_amp {

// Two banks of parallel NEMS capacitive switches sampled through ohmic
// switches; c_large forms the floating bias sources that place v_in +/- v_bias
// across the banks during the sample phase.
struct AmpConfig {
    nems::NemsCapacitiveSwitch cap_switch;
    int n_parallel = 10;
    nems::NemsOhmicSwitch ohmic;
    double v_bias = 4.0;    // V
    double f_clk = 100e3;   // Hz
    double c_large = 30e-12; // F
    bool differential = false;
    double v_gb = 2.0;      // V, ohmic switch body-drive amplitude
    double p_clk = 80e-9;   // W, non-overlap clock generator

    void validate() const;
};

// C_ON/C_OFF.
double ideal_gain(const nems::NemsCapacitiveSwitch& sw);

// 1 + g0*eps_d/t_d from geometry, and the same derated by gamma.
double theoretical_gain(const nems::NemsCapacitiveSwitch& sw);
double practical_gain(const nems::NemsCapacitiveSwitch& sw);

// Ohmic-switch parasitic seen by each bank in both phases.
double parasitic_load(const AmpConfig& cfg);

// (n*C_ON + Cp)/(n*C_OFF + Cp).
double loaded_gain(const AmpConfig& cfg);

struct RangeReport {
    bool pull_in_ok = false;
    bool pull_out_ok = false;
    double pull_in_margin = 0.0;  // V, v_bias - v_pi - v_in_max
    double pull_out_margin = 0.0; // V, v_po - v_out_max
    double v_out_max = 0.0;       // V, loaded_gain * v_in_max
    bool ok() const { return pull_in_ok && pull_out_ok; }
};

RangeReport validate_voltage_range(const AmpConfig& cfg, double v_in_max);

struct NoiseResult {
    double power = 0.0; // V^2
    double rms = 0.0;   // V
};

// kT/C sampled noise referred to the output; doubled for the differential
// configuration.
NoiseResult output_noise(const AmpConfig& cfg, const Environment& env);

struct DynamicPower {
    double p_amp = 0.0; // W
    double p_sw = 0.0;  // W
    double total = 0.0; // W, p_amp + p_sw + p_clk
};

DynamicPower dynamic_power(const AmpConfig& cfg);

// Per-sample fault flags.
inline constexpr std::uint8_t fault_pull_in = 1;  // a bank failed to close in sample
inline constexpr std::uint8_t fault_pull_out = 2; // a bank failed to release in hold

enum class Phase { Sample, Hold };

// Snapshot of the two banks at the end of a phase. Top-plate charge is
// conserved from the sample snapshot to the hold snapshot of the same cycle.
struct PhaseState {
    Phase phase = Phase::Sample;
    double q_top_a = 0.0; // C
    double q_top_b = 0.0; // C
    bool contact_a = false;
    bool contact_b = false;
    double v_a = 0.0; // V
    double v_b = 0.0; // V
};

struct SimResult {
    std::vector<double> outputs;        // V, one per input sample
    std::vector<std::uint8_t> faults;   // flag bits per sample
    std::vector<PhaseState> hold_states; // end-of-hold snapshot per sample
    double max_charge_drift = 0.0;      // relative, across hold redistributions
};

// Sample/hold amplification of a sequence of input samples. The hold-phase
// output solves the charge balance against the voltage-dependent released
// capacitance by damped fixed-point iteration.
SimResult simulate(const AmpConfig& cfg, const std::vector<double>& input_samples,
                   const Environment& env);

// Differential front end: each differential sample d drives two single-ended
// instances at +d/2 and -d/2; the output is their difference.
SimResult simulate_differential(const AmpConfig& cfg, const std::vector<double>& diff_samples,
                                const Environment& env);

// Small-signal-to-large-signal gain droop, 1 - gain(amplitude)/gain(ref).
double gain_droop(const AmpConfig& cfg, double amplitude, double ref_amplitude,
                  bool differential, const Environment& env);

// Reference configuration: ten table-calibrated capacitive switches per bank
// loaded by the ohmic-switch parasitics.
AmpConfig reference_config();

} // namespace esim::dt_amp
