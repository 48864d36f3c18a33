#include <doctest.h>

#include <cmath>

#include "esim/constants.hpp"
#include "esim/piezo.hpp"

using namespace esim;

TEST_CASE("piezo source phase convention and amplitude")
{
    PiezoTransducer x{19e-9, 146.0, 2e6, 1.0};
    CHECK(x.current(0.0) == 0.0);
    CHECK(x.peak_current() == doctest::Approx(17.43e-6).epsilon(5e-4));

    // integrating one half cycle into the bare capacitance raises it by 2*v_oc
    const double t_half = 0.5 / x.f_pz;
    const int n = 20000;
    double q = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = t_half * i / n;
        const double b = t_half * (i + 1) / n;
        q += (b - a) / 6.0 * (x.current(a) + 4.0 * x.current(0.5 * (a + b)) + x.current(b));
    }
    CHECK(q / x.c_pz == doctest::Approx(2.0 * x.v_oc).epsilon(1e-6));
}

TEST_CASE("open-circuit steady state has amplitude v_oc")
{
    PiezoTransducer x{19e-9, 146.0, 2e6, 0.7};
    // forward-Euler reference integration of dv/dt = i/C from v = -v_oc
    const double dt = 1.0 / (x.f_pz * 200000.0);
    double v = -x.v_oc;
    double vmax = v, vmin = v;
    for (double t = 0.0; t < 3.0 / x.f_pz; t += dt) {
        v += x.current(t) / x.c_pz * dt;
        vmax = std::max(vmax, v);
        vmin = std::min(vmin, v);
    }
    CHECK(vmax == doctest::Approx(x.v_oc).epsilon(5e-3));
    CHECK(vmin == doctest::Approx(-x.v_oc).epsilon(5e-3));
}

TEST_CASE("validation")
{
    PiezoTransducer x{19e-9, 146.0, 2e6, 1.0};
    CHECK_NOTHROW(x.validate());
    x.c_pz = 0.0;
    CHECK_THROWS_AS(x.validate(), std::invalid_argument);
}
