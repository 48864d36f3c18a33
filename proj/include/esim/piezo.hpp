#pragma once

#include <cmath>
#include <stdexcept>

#include "esim/constants.hpp"

namespace esim {

// Norton behavioral model of the piezoelectric transducer: a sinusoidal
// current source in parallel with c_pz and r_pz. t = 0 sits at a
// positive-going zero crossing of the current.
struct PiezoTransducer {
    double c_pz = 19e-9;  // F
    double f_pz = 146.0;  // Hz
    double r_pz = 2e6;    // ohm, may be +inf for a lossless source
    double v_oc = 1.0;    // V, open-circuit amplitude

    // Peak current so that the open-circuit steady state has amplitude v_oc.
    double peak_current() const { return 2.0 * pi * f_pz * c_pz * v_oc; }

    double current(double t) const { return peak_current() * std::sin(2.0 * pi * f_pz * t); }

    void validate() const
    {
        if (!(c_pz > 0.0 && f_pz > 0.0 && r_pz > 0.0 && v_oc > 0.0))
            throw std::invalid_argument("PiezoTransducer: all fields must be > 0");
    }
};

} // namespace esim
