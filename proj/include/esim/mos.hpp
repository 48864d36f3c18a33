#pragma once

#include "esim/environment.hpp"

namespace esim::mos {

// PMOS power-gating switch model. beta lumps mu_p*C_OX*W/L. The two GIDL
// parameters extend the subthreshold law with a temperature-independent
// band-to-band tunneling term.
struct MosDevice {
    double beta = 60e-6;            // A/V^2
    double n = 1.5;                 // subthreshold slope factor, > 1
    double v_th = 0.5;              // V, |V_THP|
    double v_sg_max = 2.5;          // V, maximum allowed source-to-gate voltage
    double gidl_i0 = 0.0;           // A
    double gidl_slope = 0.1;        // V
    double gate_leak_density = 0.0; // A/m of width
    double width = 0.0;             // m

    double gate_leakage() const { return gate_leak_density * width; }

    void validate() const;
};

// I_leak = beta*(n-1)*Vt^2*exp((v_sg - v_th)/(n*Vt)). v_sg may be
// negative (super cut-off depth is passed as -v_gsp).
double subthreshold_current(const MosDevice& dev, double v_sg, const Environment& env);

// 1/(beta*(v_sg - v_th)); requires triode conduction v_sg > v_th.
double on_resistance(const MosDevice& dev, double v_sg);

// Channel subthreshold leakage at gate-source reverse bias v_gsp plus the
// GIDL term. Unimodal in v_gsp when gidl_i0 > 0.
double total_off_leakage(const MosDevice& dev, double v_gsp, const Environment& env);

// Minimizer of total_off_leakage over [0, v_sg_max], 0.1 mV absolute
// tolerance. Requires gidl_i0 > 0.
double optimal_super_cutoff_bias(const MosDevice& dev, const Environment& env);

// Fits (gidl_i0, gidl_slope) so that the optimal bias equals target_v_opt
// and total_off_leakage(0)/total_off_leakage(v_opt) equals
// target_reduction_ratio. Throws if the ratio exceeds the pure-subthreshold
// bound exp(target_v_opt/(n*Vt)).
MosDevice calibrate_gidl(const MosDevice& dev, double target_v_opt,
                         double target_reduction_ratio, const Environment& env);

} // namespace esim::mos
