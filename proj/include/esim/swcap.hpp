#pragma once

#include <string>
#include <vector>

#include "esim/environment.hpp"
#include "esim/mos.hpp"

namespace esim::swcap {

enum class Variant { CMOS, MEMS };

// Switched-capacitor gate-bias network around a PMOS PG switch. Two
// capacitors of value c_x refresh each other every half clock period. The
// diode parameters describe the self cut-off diode-connected devices of the
// CMOS switch network; the MEMS variant has no diode drop.
struct SwCapConfig {
    Variant variant = Variant::CMOS;
    double c_x = 5e-12;        // F, each of C1/C2
    double f_clk = 24.0;       // Hz, refresh clock
    double v_dd = 1.8;         // V
    double v_b_off = 0.0;      // V
    double v_b_on = 0.0;       // V
    double i_dis = 10e-12;     // A, lumped gate + switch-network discharge
    double diode_beta = 60e-6; // A/V^2, mu*Cox*W/L of the diode devices
    double diode_v_th = 0.5;   // V
    double diode_n = 1.5;

    void validate() const;
};

enum class PgState { ON, OFF, SUPER_ON, SUPER_OFF };

std::string to_string(PgState s);

struct VoltageError {
    double alpha = 0.0;        // subthreshold diode-drop factor, in (0,1)
    double diode_term = 0.0;   // V, 2*alpha*V_TH
    double refresh_term = 0.0; // V, I_dis*T/(4*C_X)
    double total = 0.0;        // V
};

// Piecewise-affine gate-voltage waveform. Each piece carries its slope so
// the sawtooth between refresh instants is exact.
struct GateBiasTrace {
    struct Piece {
        double t0 = 0.0;
        double t1 = 0.0;
        double v0 = 0.0;    // value at t0
        double slope = 0.0; // V/s
        PgState state = PgState::OFF;
    };
    std::vector<Piece> pieces;
    std::vector<double> refresh_events;

    double value(double t) const;
    double time_average(double t0, double t1) const;
};

// I_dis*T/(4*C_X), the refresh half of the voltage error.
double refresh_error(const SwCapConfig& cfg);

// Diode-drop analysis of the CMOS switch network. Throws for the MEMS
// variant and when the diodes leave the subthreshold region (alpha outside
// (0,1)).
VoltageError voltage_error(const SwCapConfig& cfg, const Environment& env);

// Average V_G during the super states, including the variant's error terms.
double avg_gate_voltage_super_off(const SwCapConfig& cfg, const Environment& env);
double avg_gate_voltage_super_on(const SwCapConfig& cfg, const Environment& env);

// Refresh clock needed to keep the average gate-voltage error below
// max_error_fraction of (v_dd + v_b_off).
double required_refresh_frequency(const SwCapConfig& cfg, double max_error_fraction);

// PG-switch leakage with the gate held at the super turn-off average, and
// on-resistance with the gate at the super turn-on average. The on-state
// bias is checked against the device's voltage-stress limit.
double pg_leakage(const SwCapConfig& cfg, const mos::MosDevice& dev, const Environment& env);
double pg_on_resistance(const SwCapConfig& cfg, const mos::MosDevice& dev,
                        const Environment& env);

// V_B(off) giving maximum leakage reduction: optimal super cut-off bias plus
// the variant's voltage error.
double optimal_v_b_off(const SwCapConfig& cfg, const mos::MosDevice& dev,
                       const Environment& env);

// Event-driven gate-bias waveform across a PG-state schedule. Conventional
// states are flat (0 V on, v_dd off for the PMOS switch); super states are
// sawtooths refreshed every half clock period.
GateBiasTrace simulate_gate_bias(const SwCapConfig& cfg, const Environment& env,
                                 const std::vector<std::pair<double, PgState>>& schedule,
                                 double duration);

} // namespace esim::swcap
