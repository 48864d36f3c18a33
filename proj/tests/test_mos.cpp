#include <doctest.h>

#include <cmath>
#include <random>

#include "esim/mos.hpp"

using namespace esim;
using namespace esim::mos;

namespace {

const Environment room{300.0};

MosDevice base_device()
{
    MosDevice d;
    d.beta = 60e-6;
    d.n = 1.5;
    d.v_th = 0.5;
    d.v_sg_max = 3.3;
    return d;
}

// brute-force argmin oracle, independent of the golden-section path
double grid_scan_min(const MosDevice& d, const Environment& env, double step)
{
    double best_v = 0.0;
    double best = total_off_leakage(d, 0.0, env);
    for (double v = step; v <= d.v_sg_max; v += step) {
        const double val = total_off_leakage(d, v, env);
        if (val < best) {
            best = val;
            best_v = v;
        }
    }
    return best_v;
}

} // namespace

TEST_CASE("subthreshold current at v_sg = v_th reduces to the prefactor")
{
    const MosDevice d = base_device();
    const double vt = room.thermal_voltage();
    const double prefactor = d.beta * (d.n - 1.0) * vt * vt;
    CHECK(subthreshold_current(d, d.v_th, room) == doctest::Approx(prefactor).epsilon(1e-12));
    CHECK(prefactor == doctest::Approx(2.005e-8).epsilon(5e-4));
}

TEST_CASE("subthreshold current at v_sg = 0")
{
    const MosDevice d = base_device();
    const double vt = room.thermal_voltage();
    const double expect =
        d.beta * (d.n - 1.0) * vt * vt * std::exp(-d.v_th / (d.n * vt));
    CHECK(subthreshold_current(d, 0.0, room) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("subthreshold slope: one decade per n*Vt*ln(10)")
{
    const MosDevice d = base_device();
    const double dec = d.n * room.thermal_voltage() * std::log(10.0);
    for (const double v : {-0.3, 0.0, 0.2, 0.45}) {
        const double ratio =
            subthreshold_current(d, v, room) / subthreshold_current(d, v - dec, room);
        CHECK(ratio == doctest::Approx(10.0).epsilon(1e-12));
    }
}

TEST_CASE("log-linearity: finite-difference slope equals 1/(n*Vt)")
{
    const MosDevice d = base_device();
    const double h = 1e-3;
    for (const double v : {-0.2, 0.1, 0.4}) {
        const double slope = (std::log(subthreshold_current(d, v + h, room)) -
                              std::log(subthreshold_current(d, v - h, room))) /
                             (2.0 * h);
        CHECK(slope == doctest::Approx(1.0 / (d.n * room.thermal_voltage())).epsilon(1e-9));
    }
}

TEST_CASE("on-resistance basics")
{
    MosDevice d = base_device();
    CHECK(on_resistance(d, d.v_th + 1.0 / d.beta) == doctest::Approx(1.0).epsilon(1e-12));
    const double r1 = on_resistance(d, d.v_th + 0.4);
    const double r2 = on_resistance(d, d.v_th + 0.8);
    CHECK(r1 == doctest::Approx(2.0 * r2).epsilon(1e-12));
    // super turn-on beats the conventional gate drive
    CHECK(on_resistance(d, d.v_sg_max) < on_resistance(d, 1.2));
    CHECK_THROWS_AS(on_resistance(d, d.v_th), std::domain_error);
    CHECK_THROWS_AS(on_resistance(d, 0.1), std::domain_error);
}

TEST_CASE("total off-state leakage with GIDL disabled reduces to the channel term")
{
    const MosDevice d = base_device();
    for (const double v : {0.0, 0.2, 0.6}) {
        CHECK(total_off_leakage(d, v, room) ==
              doctest::Approx(subthreshold_current(d, -v, room)).epsilon(1e-12));
    }
}

TEST_CASE("calibrated device: optimum bias and reduction ratio round-trip")
{
    const MosDevice cal = calibrate_gidl(base_device(), 0.30, 186.0, room);
    const double v_opt = optimal_super_cutoff_bias(cal, room);
    CHECK(v_opt == doctest::Approx(0.30).epsilon(0.0034));
    const double ratio =
        total_off_leakage(cal, 0.0, room) / total_off_leakage(cal, v_opt, room);
    CHECK(ratio == doctest::Approx(186.0).epsilon(0.01));

    // against the brute-force grid scan at 0.1 mV
    CHECK(std::abs(v_opt - grid_scan_min(cal, room, 1e-4)) <= 2e-4);
}

TEST_CASE("optimizer matches the stationarity closed form on random devices")
{
    std::mt19937 rng(11u);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 40; ++i) {
        MosDevice d = base_device();
        d.n = 1.2 + 0.8 * u(rng);
        d.v_th = 0.3 + 0.4 * u(rng);
        d.gidl_slope = 0.05 + 0.3 * u(rng);
        const double i_sub0 = subthreshold_current(d, 0.0, room);
        d.gidl_i0 = i_sub0 * (1e-5 + 1e-3 * u(rng));

        const double n_vt = d.n * room.thermal_voltage();
        const double s = d.gidl_slope;
        const double expect = (n_vt * s / (n_vt + s)) *
                              std::log(i_sub0 * s / (d.gidl_i0 * n_vt));
        if (expect <= 0.0 || expect >= d.v_sg_max)
            continue;
        CHECK(optimal_super_cutoff_bias(d, room) == doctest::Approx(expect).epsilon(1e-3));
    }
}

TEST_CASE("off-leakage is unimodal over random calibrated devices")
{
    std::mt19937 rng(23u);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        MosDevice d = base_device();
        d.n = 1.2 + 0.8 * u(rng);
        d.v_th = 0.3 + 0.4 * u(rng);
        const double v_opt = 0.1 + 0.5 * u(rng);
        const double bound = std::exp(v_opt / (d.n * room.thermal_voltage()));
        const double target = 1.0 + (bound - 1.0) * (0.05 + 0.9 * u(rng));
        MosDevice cal;
        try {
            cal = calibrate_gidl(d, v_opt, target, room);
        } catch (const std::exception&) {
            continue; // numerically extreme corner of the random draw
        }

        int sign_changes = 0;
        double prev = total_off_leakage(cal, 0.0, room);
        bool decreasing = true;
        for (double v = 1e-3; v <= d.v_sg_max; v += 1e-3) {
            const double cur = total_off_leakage(cal, v, room);
            if (decreasing && cur > prev) {
                decreasing = false;
                ++sign_changes;
            } else if (!decreasing && cur < prev) {
                ++sign_changes; // would indicate a second extremum
            }
            prev = cur;
        }
        CHECK(sign_changes == 1);
    }
}

TEST_CASE("optimum bias rises with temperature and ignores common-factor scaling")
{
    const MosDevice cal = calibrate_gidl(base_device(), 0.30, 186.0, room);
    const double v300 = optimal_super_cutoff_bias(cal, Environment{300.0});
    const double v330 = optimal_super_cutoff_bias(cal, Environment{330.0});
    const double v360 = optimal_super_cutoff_bias(cal, Environment{360.0});
    CHECK(v300 < v330);
    CHECK(v330 < v360);

    MosDevice scaled = cal;
    scaled.beta *= 2.7;
    scaled.gidl_i0 *= 2.7;
    CHECK(std::abs(optimal_super_cutoff_bias(scaled, room) - v300) <= 1.01e-4);
}

TEST_CASE("calibration rejects ratios beyond the subthreshold bound")
{
    const MosDevice d = base_device();
    const double bound = std::exp(0.30 / (d.n * room.thermal_voltage()));
    CHECK_THROWS_AS(calibrate_gidl(d, 0.30, bound * 1.001, room), std::domain_error);
    CHECK_THROWS_AS(optimal_super_cutoff_bias(d, room), std::domain_error); // GIDL off
}

TEST_CASE("thick-oxide comparison point: 0.27 V / 706x is feasible at n = 1.5")
{
    const MosDevice d = base_device();
    const double bound = std::exp(0.27 / (d.n * room.thermal_voltage()));
    REQUIRE(bound > 706.0);
    const MosDevice cal = calibrate_gidl(d, 0.27, 706.0, room);
    const double v_opt = optimal_super_cutoff_bias(cal, room);
    CHECK(v_opt == doctest::Approx(0.27).epsilon(0.004));
    CHECK(total_off_leakage(cal, 0.0, room) / total_off_leakage(cal, v_opt, room) ==
          doctest::Approx(706.0).epsilon(0.01));
}

TEST_CASE("device validation rejects nonsense")
{
    MosDevice d = base_device();
    d.n = 1.0;
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
    d = base_device();
    d.v_sg_max = d.v_th;
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
    d = base_device();
    d.gidl_slope = 0.0;
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}
