#pragma once

#include <utility>

namespace esim::nems {

// Electrostatically actuated capacitive switch. Geometry fields describe the
// parallel-plate actuator (air gap over a dielectric layer); the measured
// fields (v_pi, v_po, c_on, c_off, t_mech) are the authoritative terminal
// behavior. gamma derates the closed-plate capacitance for fringing and beam
// curvature, so c_on = gamma * eps0*eps_d*area/t_d while c_off stays at the
// undeflected geometric value.
struct NemsCapacitiveSwitch {
    // geometry
    double g0 = 0.0;    // m, air gap
    double t_d = 0.0;   // m, dielectric thickness
    double eps_d = 1.0; // relative permittivity
    double area = 0.0;  // m^2, overlap W x L_B
    double k_eff = 0.0; // N/m
    double gamma = 1.0; // practical-gain derating, (0, 1]
    // terminal data
    double c_on = 0.0;  // F
    double c_off = 0.0; // F
    double v_pi = 0.0;  // V
    double v_po = 0.0;  // V
    double t_mech = 0.0; // s

    void validate() const;

    // g0 + t_d/eps_d, the undeflected electrostatic gap.
    double effective_gap() const { return g0 + t_d / eps_d; }
};

struct NemsOhmicSwitch {
    double v_pi = 0.0;     // V
    double v_po = 0.0;     // V
    double r_on = 0.0;     // ohm
    double t_mech = 0.0;   // s
    double c_gs_on = 0.0;  // F
    double c_gd_on = 0.0;  // F
    double c_gb_on = 0.0;  // F
    double c_gs_off = 0.0; // F
    double c_gd_off = 0.0; // F

    void validate() const;
};

// Design equations for the pull voltages from the spring/electrostatic
// balance. These describe the geometry, not the measured terminal values;
// the two need not agree for a fabricated part.
std::pair<double, double> cap_pull_voltages(const NemsCapacitiveSwitch& sw);

// Same voltages factored through the theoretical gain A_V = 1 + g0*eps_d/t_d.
std::pair<double, double> cap_pull_voltages_factored(const NemsCapacitiveSwitch& sw);

// v_po/v_pi = sqrt(27/4) * sqrt((A_V - 1)/A_V^3).
double cap_pull_ratio(const NemsCapacitiveSwitch& sw);

// Hysteretic C(V). prior_contact selects the branch: a closed switch stays
// closed down to v_po, an open switch closes at v_pi. On the open branch the
// capacitance follows the static beam deflection, saturating once the static
// balance loses its stable root.
std::pair<double, bool> cap_capacitance(const NemsCapacitiveSwitch& sw, double v,
                                        bool prior_contact);

// Uniform geometric scaling by eta: voltages, capacitances and mechanical
// delay scale linearly, the capacitance ratio is invariant.
NemsCapacitiveSwitch scale(const NemsCapacitiveSwitch& sw, double eta);
NemsOhmicSwitch scale(const NemsOhmicSwitch& sw, double eta);

// Measured reference parts used across the amplifier work: 3.2/1.8 V
// pull voltages, 6.63/1.30 fF, 250 ns for the capacitive switch.
NemsCapacitiveSwitch reference_capacitive_switch();
NemsOhmicSwitch reference_ohmic_switch();

} // namespace esim::nems
