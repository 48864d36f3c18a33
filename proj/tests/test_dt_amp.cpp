#include <doctest.h>

#include <cmath>

#include "esim/constants.hpp"
#include "esim/dt_amp.hpp"

using namespace esim;
using namespace esim::dt_amp;

namespace {

const Environment room{300.0};

AmpConfig linear_gain5()
{
    AmpConfig cfg = reference_config();
    nems::NemsCapacitiveSwitch sw = cfg.cap_switch;
    sw.k_eff = 1e5; // negligible deflection: constant C_OFF
    sw.gamma = 5.0 / 10.36;
    sw.c_on = sw.gamma * eps0 * sw.eps_d * sw.area / sw.t_d;
    cfg.cap_switch = sw;
    cfg.ohmic.c_gs_on = 0.0;
    cfg.ohmic.c_gd_on = 0.0;
    cfg.ohmic.c_gs_off = 0.0;
    cfg.ohmic.c_gd_off = 0.0;
    return cfg;
}

} // namespace

TEST_CASE("gain definitions")
{
    const auto sw = nems::reference_capacitive_switch();
    CHECK(ideal_gain(sw) == doctest::Approx(5.1).epsilon(1e-12));
    CHECK(theoretical_gain(sw) == doctest::Approx(10.36).epsilon(1e-12));
    CHECK(practical_gain(sw) == doctest::Approx(5.1).epsilon(1e-12));

    auto unity = sw;
    unity.gamma = 1.0;
    CHECK(practical_gain(unity) == doctest::Approx(theoretical_gain(unity)).epsilon(1e-12));

    // scaling leaves every gain unchanged
    const auto half = nems::scale(sw, 0.5);
    CHECK(ideal_gain(half) == doctest::Approx(ideal_gain(sw)).epsilon(1e-12));
    CHECK(theoretical_gain(half) == doctest::Approx(theoretical_gain(sw)).epsilon(1e-12));
}

TEST_CASE("loaded gain with ohmic parasitics")
{
    AmpConfig cfg = reference_config();
    // (10*6.63 + 1 + 0.13) / (10*1.30 + 1 + 0.13)
    const double expect = (66.3e-15 + 1.13e-15) / (13.0e-15 + 1.13e-15);
    CHECK(loaded_gain(cfg) == doctest::Approx(expect).epsilon(1e-9));
    CHECK(loaded_gain(cfg) == doctest::Approx(4.77).epsilon(0.002));

    AmpConfig clean = cfg;
    clean.ohmic.c_gs_on = 0.0;
    clean.ohmic.c_gs_off = 0.0;
    CHECK(loaded_gain(clean) == doctest::Approx(ideal_gain(cfg.cap_switch)).epsilon(1e-12));

    AmpConfig many = cfg;
    many.n_parallel = 1000000;
    CHECK(loaded_gain(many) ==
          doctest::Approx(ideal_gain(cfg.cap_switch)).epsilon(1e-4));

    // monotone in n and bounded by the ideal gain
    double prev = 0.0;
    for (const int n : {1, 2, 5, 10, 50, 1000}) {
        AmpConfig c = cfg;
        c.n_parallel = n;
        const double g = loaded_gain(c);
        CHECK(g > prev);
        CHECK(g <= ideal_gain(cfg.cap_switch));
        prev = g;
    }
}

TEST_CASE("voltage-range validation")
{
    const AmpConfig cfg = reference_config();
    const auto r = validate_voltage_range(cfg, 0.2);
    CHECK(r.pull_in_ok);
    CHECK(r.pull_in_margin == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(r.pull_out_ok);

    // output swing exactly at the pull-out limit fails
    const double a_limit = cfg.cap_switch.v_po / loaded_gain(cfg);
    CHECK(a_limit == doctest::Approx(0.377).epsilon(2e-3));
    CHECK(!validate_voltage_range(cfg, a_limit).pull_out_ok);
    CHECK(validate_voltage_range(cfg, a_limit - 1e-3).pull_out_ok);
}

TEST_CASE("output noise")
{
    AmpConfig cfg = reference_config();
    cfg.differential = true;
    const auto n_diff = output_noise(cfg, room);
    // 4kT(1+A_V)/C_on,total with A_V = 4.772, C = 66.3 fF
    CHECK(n_diff.power == doctest::Approx(1.44e-6).epsilon(0.01));
    CHECK(n_diff.rms == doctest::Approx(1.20e-3).epsilon(0.01));

    cfg.differential = false;
    const auto n_se = output_noise(cfg, room);
    CHECK(n_diff.power == doctest::Approx(2.0 * n_se.power).epsilon(1e-12));

    // doubling n halves the noise when the loading is scaled along
    AmpConfig twice = cfg;
    twice.n_parallel *= 2;
    twice.ohmic.c_gs_on *= 2.0;
    twice.ohmic.c_gs_off *= 2.0;
    CHECK(output_noise(twice, room).power == doctest::Approx(0.5 * n_se.power).epsilon(1e-12));
}

TEST_CASE("dynamic power")
{
    const AmpConfig cfg = reference_config();
    const auto p = dynamic_power(cfg);
    CHECK(p.p_amp == doctest::Approx(0.44e-6).epsilon(0.02));
    CHECK(p.p_sw + cfg.p_clk == doctest::Approx(0.16e-6).epsilon(0.02));
    CHECK(p.total == doctest::Approx(0.6e-6).epsilon(0.02));

    AmpConfig off = cfg;
    off.f_clk = 1e-30;
    CHECK(dynamic_power(off).p_amp < 1e-30);

    // switch-drive power: linear in f_clk, quadratic in the drive amplitude
    AmpConfig fast = cfg;
    fast.f_clk *= 3.0;
    CHECK(dynamic_power(fast).p_sw == doctest::Approx(3.0 * p.p_sw).epsilon(1e-12));
    AmpConfig hard = cfg;
    hard.v_gb *= 2.0;
    CHECK(dynamic_power(hard).p_sw == doctest::Approx(4.0 * p.p_sw).epsilon(1e-12));
}

TEST_CASE("noise tracks the environment temperature")
{
    const AmpConfig cfg = reference_config();
    const double n300 = output_noise(cfg, Environment{300.0}).power;
    const double n350 = output_noise(cfg, Environment{350.0}).power;
    CHECK(n350 / n300 == doctest::Approx(350.0 / 300.0).epsilon(1e-12));
}

TEST_CASE("simulation: ideal gain-5 operating point")
{
    const AmpConfig cfg = linear_gain5();
    const auto pos = simulate(cfg, {0.2}, room);
    const auto neg = simulate(cfg, {-0.2}, room);
    CHECK(pos.outputs[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(neg.outputs[0] == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(pos.faults[0] == 0);
    CHECK(pos.max_charge_drift < 1e-12);

    const auto zero = simulate(cfg, {0.0}, room);
    CHECK(zero.outputs[0] == 0.0); // no bias leaks to the output
}

TEST_CASE("simulation: per-sample fault flags")
{
    AmpConfig cfg = linear_gain5();

    // pull-in violated: |v_in - v_bias| < v_pi
    const auto weak = simulate(cfg, {0.9}, room);
    CHECK((weak.faults[0] & fault_pull_in) != 0);

    // pull-out violated: the sampled node stays above v_po when shorted
    AmpConfig strong = cfg;
    strong.v_bias = 6.0;
    const auto stuck = simulate(strong, {2.0}, room);
    CHECK((stuck.faults[0] & fault_pull_out) != 0);
    CHECK(stuck.outputs[0] == doctest::Approx(2.0).epsilon(1e-9)); // saturates closed
}

TEST_CASE("simulation: charge conservation over a sine train")
{
    const AmpConfig cfg = reference_config();
    std::vector<double> samples(64);
    for (std::size_t i = 0; i < samples.size(); ++i)
        samples[i] = 0.3 * std::sin(2.0 * pi * 5e3 * i / cfg.f_clk);
    const auto res = simulate(cfg, samples, room);
    CHECK(res.max_charge_drift < 1e-12);
    for (const auto f : res.faults)
        CHECK(f == 0);

    // top-plate charge in the hold snapshot equals the sampled charge
    const double n = cfg.n_parallel;
    const double cp = parasitic_load(cfg);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double q_sampled = 2.0 * (n * cfg.cap_switch.c_on + cp) * samples[i];
        const auto& h = res.hold_states[i];
        CHECK(h.q_top_a + h.q_top_b ==
              doctest::Approx(q_sampled).epsilon(1e-12));
        CHECK(!h.contact_a);
        CHECK(!h.contact_b);
    }
}

TEST_CASE("gain droop: differential cancels even-order distortion")
{
    const AmpConfig cfg = reference_config();
    const double droop_se = gain_droop(cfg, 0.325, 1e-3, false, room);
    const double droop_diff = gain_droop(cfg, 0.325, 1e-3, true, room);
    CHECK(droop_se == doctest::Approx(0.05).epsilon(0.3));   // ~4.8% measured
    CHECK(droop_diff == doctest::Approx(0.02).epsilon(0.75)); // ~1.2% measured
    CHECK(droop_diff <= droop_se);

    // differential transfer is odd-symmetric by construction
    const auto dp = simulate_differential(cfg, {0.25}, room);
    const auto dn = simulate_differential(cfg, {-0.25}, room);
    CHECK(dp.outputs[0] == doctest::Approx(-dn.outputs[0]).epsilon(1e-12));

    // non-linearity ordering holds across amplitudes
    for (const double a : {0.05, 0.15, 0.25, 0.325}) {
        CHECK(gain_droop(cfg, a, 1e-3, true, room) <=
              gain_droop(cfg, a, 1e-3, false, room) + 1e-12);
    }
}

TEST_CASE("config validation: mechanical timing")
{
    AmpConfig cfg = reference_config();
    cfg.f_clk = 1e6; // half period 500 ns < 600 ns ohmic delay
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = reference_config();
    cfg.n_parallel = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
