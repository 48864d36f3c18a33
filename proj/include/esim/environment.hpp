#pragma once

#include <stdexcept>

#include "esim/constants.hpp"

namespace esim {

// Operating environment. Temperature enters all device models only through
// the thermal voltage.
struct Environment {
    double temperature = 300.0; // K

    double thermal_voltage() const { return k_boltzmann * temperature / q_electron; }

    void validate() const
    {
        if (!(temperature > 0.0))
            throw std::invalid_argument("Environment: temperature must be > 0 K");
    }
};

} // namespace esim
