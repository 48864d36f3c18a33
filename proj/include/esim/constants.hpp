#pragma once

namespace esim {

// 2019 SI exact values.
inline constexpr double k_boltzmann = 1.380649e-23;   // J/K
inline constexpr double q_electron = 1.602176634e-19; // C
inline constexpr double eps0 = 8.8541878128e-12;      // F/m

inline constexpr double pi = 3.14159265358979323846;

} // namespace esim
