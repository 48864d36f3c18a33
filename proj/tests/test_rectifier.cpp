#include <doctest.h>

#include <cmath>
#include <limits>

#include "esim/rectifier.hpp"

using namespace esim;
using namespace esim::rectifier;

namespace {

PiezoTransducer ref_xdcr() { return PiezoTransducer{19e-9, 146.0, 2e6, 1.0}; }

RectifierConfig lossless_config()
{
    RectifierConfig cfg;
    cfg.xdcr = ref_xdcr();
    cfg.xdcr.r_pz = std::numeric_limits<double>::infinity();
    cfg.l = 47e-6;
    cfg.v_max = 3.3;
    cfg.v_out = 1.0;
    cfg.r_tot = 0.0;
    cfg.flip_loss_v = 0.0;
    cfg.p_ctrl = 0.0;
    return cfg;
}

// test-side half-cycle recursion, structured as voltage bookkeeping per
// vibration period rather than per half cycle
double accumulation_oracle(double v_max, double v_pc, double v_oc, double t_pz,
                           double loss)
{
    double v = v_pc;
    double t = 0.0;
    while (true) {
        const double next = v + 2.0 * v_oc;
        if (next >= v_max)
            return t + 0.5 * t_pz * (v_max - v) / (2.0 * v_oc);
        v = std::max(0.0, next - loss);
        t += 0.5 * t_pz;
    }
}

} // namespace

TEST_CASE("closed-form baseline powers")
{
    const auto x = ref_xdcr();
    ArchParams p;
    p.v_max = 3.3;
    p.v_pc = 1.5;
    p.v_out = 1.0;

    const double fbr = analytic_pout(Arch::FBR, x, p);
    CHECK(fbr == doctest::Approx(19e-9 * 146.0).epsilon(1e-12)); // 2.774 uW
    CHECK(fbr == doctest::Approx(2.77e-6).epsilon(0.005));

    CHECK(analytic_pout(Arch::SECE, x, p) / fbr == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(analytic_pout(Arch::PROPOSED, x, p) == doctest::Approx(26.6e-6).epsilon(2e-3));
    CHECK(fom(analytic_pout(Arch::PROPOSED, x, p), x) == doctest::Approx(9.6).epsilon(1e-12));

    CHECK(fom(fbr, x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fom(10.2e-6, x) == doctest::Approx(3.68).epsilon(2e-3));

    // investment and pre-charge forms at a shared grid point
    p.v_inv = 1.0;
    CHECK(analytic_pout(Arch::INVESTMENT, x, p) ==
          doctest::Approx(2.0 * 19e-9 * 146.0 * 5.0).epsilon(1e-12));
    p.v_init = 0.5;
    CHECK(analytic_pout(Arch::DPR, x, p) ==
          doctest::Approx(4.0 * 19e-9 * 146.0 * 1.5).epsilon(1e-12));
}

TEST_CASE("pre-charge voltage from the energize time")
{
    CHECK(precharge_voltage(1.0, 1.417e-6, 47e-6, 19e-9) ==
          doctest::Approx(1.5).epsilon(1e-3));
    CHECK(precharge_voltage(1.0, 0.0, 47e-6, 19e-9) == 0.0);

    // energy identity: L/2*(V*t/L)^2 == C/2*V_PC^2
    const double t_eng = 0.9e-6, l = 47e-6, c = 19e-9, v_out = 1.3;
    const double i_l = v_out * t_eng / l;
    const double v_pc = precharge_voltage(v_out, t_eng, l, c);
    CHECK(0.5 * l * i_l * i_l == doctest::Approx(0.5 * c * v_pc * v_pc).epsilon(1e-12));
}

TEST_CASE("accumulation time recursion")
{
    const double t_pz = 1.0 / 146.0;
    CHECK(accumulation_time(3.3, 0.0, 1.0, t_pz, 0.0) ==
          doctest::Approx(0.825 * t_pz).epsilon(1e-12));
    CHECK(accumulation_time(3.3, 1.5, 1.0, t_pz, 0.0) ==
          doctest::Approx(0.45 * t_pz).epsilon(1e-12));

    const double lossy = accumulation_time(3.3, 0.0, 1.0, t_pz, 0.8);
    CHECK(lossy == doctest::Approx(1.225 * t_pz).epsilon(1e-12));
    CHECK(lossy == doctest::Approx(accumulation_oracle(3.3, 0.0, 1.0, t_pz, 0.8))
                       .epsilon(1e-12));
    CHECK(lossy / accumulation_time(3.3, 0.0, 1.0, t_pz, 0.0) - 1.0 ==
          doctest::Approx(0.485).epsilon(2e-3));

    // monotone in the flip loss
    double prev = 0.0;
    for (const double loss : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
        const double t = accumulation_time(3.3, 0.0, 1.0, t_pz, loss);
        CHECK(t >= prev);
        prev = t;
    }

    CHECK(accumulation_time(1.0, 1.2, 1.0, t_pz, 0.0) == 0.0);
    CHECK_THROWS_AS(accumulation_time(5.0, 0.0, 1.0, t_pz, 2.0), std::domain_error);
}

TEST_CASE("lossless simulation matches the closed form")
{
    RectifierConfig cfg = lossless_config();
    const auto trace = simulate(cfg, 40);

    ArchParams p;
    p.v_max = cfg.v_max;
    p.v_pc = 0.0;
    const double p_ref = analytic_pout(Arch::PROPOSED, cfg.xdcr, p);
    CHECK(trace.ledger.net_power() == doctest::Approx(p_ref).epsilon(0.01));
    CHECK(std::abs(trace.ledger.audit_residual()) <= 0.005 * trace.ledger.e_out);
    CHECK(trace.min_node_voltage >= -1e-3);
    CHECK(trace.mean_accumulation_time ==
          doctest::Approx(accumulation_time(3.3, 0.0, 1.0, 1.0 / 146.0, 0.0)).epsilon(0.005));

    // inductor current is fully drained at every integration entry
    for (const auto& e : trace.events)
        if (e.state == FsmState::INT_P || e.state == FsmState::INT_N)
            CHECK(e.i_l == 0.0);
}

TEST_CASE("pre-charge scales the lossless output per the closed form")
{
    RectifierConfig cfg = lossless_config();
    const double p0 = simulate(cfg, 40).ledger.net_power();
    cfg.v_pc_target = 1.5;
    const double p1 = simulate(cfg, 40).ledger.net_power();
    CHECK(p1 / p0 == doctest::Approx(4.8 / 3.3).epsilon(0.015));
}

TEST_CASE("loss knobs move the output the right way")
{
    RectifierConfig base = lossless_config();
    base.xdcr.r_pz = 2e6;

    auto power_with = [&](double r_tot, double flip, double r_pz) {
        RectifierConfig c = base;
        c.r_tot = r_tot;
        c.flip_loss_v = flip;
        c.xdcr.r_pz = r_pz;
        return simulate(c, 60).ledger.net_power();
    };

    const double inf = std::numeric_limits<double>::infinity();
    // non-increasing in series resistance
    CHECK(power_with(0.0, 0.0, inf) >= power_with(2.0, 0.0, inf));
    CHECK(power_with(2.0, 0.0, inf) >= power_with(5.0, 0.0, inf));
    // non-increasing in flip loss
    CHECK(power_with(0.0, 0.0, inf) >= power_with(0.0, 0.4, inf));
    CHECK(power_with(0.0, 0.4, inf) >= power_with(0.0, 0.8, inf));
    // non-decreasing in transducer parallel resistance
    CHECK(power_with(0.0, 0.0, 5e5) <= power_with(0.0, 0.0, 2e6));
    CHECK(power_with(0.0, 0.0, 2e6) <= power_with(0.0, 0.0, inf));
}

TEST_CASE("explicit energize time behaves like the equivalent pre-charge target")
{
    RectifierConfig by_target = lossless_config();
    by_target.v_pc_target = 1.5;
    RectifierConfig by_time = lossless_config();
    by_time.t_eng = 1.5 * std::sqrt(by_time.l * by_time.xdcr.c_pz) / by_time.v_out;
    const double p_target = simulate(by_target, 30).ledger.net_power();
    const double p_time = simulate(by_time, 30).ledger.net_power();
    CHECK(p_time == doctest::Approx(p_target).epsilon(1e-6));
}

TEST_CASE("detector delay keeps the invariants and barely moves the output")
{
    RectifierConfig cfg = lossless_config();
    cfg.detector_delay = 20e-6;
    const auto trace = simulate(cfg, 30);
    CHECK(trace.min_node_voltage >= -1e-3);
    CHECK(std::abs(trace.ledger.audit_residual()) <= 0.005 * trace.ledger.e_out);

    cfg.detector_delay = 0.0;
    const double p_ideal = simulate(cfg, 30).ledger.net_power();
    CHECK(trace.ledger.net_power() == doctest::Approx(p_ideal).epsilon(0.02));
}

TEST_CASE("lossless FoM is independent of the output rail")
{
    RectifierConfig cfg = lossless_config();
    double fom_min = 1e99, fom_max = 0.0;
    for (const double v : {0.5, 1.0, 2.0, 3.0}) {
        cfg.v_out = v;
        const double f = fom(simulate(cfg, 30).ledger.net_power(), cfg.xdcr);
        fom_min = std::min(fom_min, f);
        fom_max = std::max(fom_max, f);
    }
    CHECK((fom_max - fom_min) / fom_min < 0.01);
}

TEST_CASE("steady-state output voltage")
{
    RectifierConfig cfg = lossless_config();
    cfg.r_l = 100e3;
    // closed-form accumulate-only power 18.3 uW -> 1.35 V on 100 kohm
    CHECK(steady_state_vout(cfg) == doctest::Approx(1.35).epsilon(0.01));

    RectifierConfig open_load = cfg;
    open_load.r_l = 1e15;
    CHECK_THROWS_AS(steady_state_vout(open_load), std::runtime_error);
}

TEST_CASE("calibrated loss bundle lands in the measured neighborhood")
{
    const auto cfg = calibrated_config(1.5);
    const auto trace = simulate(cfg, 40);
    CHECK(trace.total_flips > 0); // pre-charge does not eliminate the flips
    CHECK(trace.ledger.net_power() > 5e-6);
    CHECK(trace.ledger.net_power() < 20e-6);
    CHECK(std::abs(trace.ledger.audit_residual()) <= 0.005 * trace.ledger.e_out);
    CHECK(trace.min_node_voltage >= -1e-3);
}

TEST_CASE("configuration guards")
{
    RectifierConfig cfg = lossless_config();
    cfg.l = 1e-2; // violates the 100x resonance separation
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = lossless_config();
    cfg.v_pc_target = cfg.v_max;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    // unreachable v_max deadlocks the FSM and is reported as such
    cfg = lossless_config();
    cfg.flip_loss_v = 2.5;
    cfg.v_max = 5.0;
    CHECK_THROWS_WITH_AS(simulate(cfg, 1), doctest::Contains("deadlock"),
                         std::runtime_error);
}

TEST_CASE("architecture comparison grids")
{
    const auto rows_a = compare_architectures(12.0, 1.0, 1.0, 25);
    CHECK(rows_a.front().bias_flip == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(rows_a.front().sece == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(rows_a.front().proposed == doctest::Approx(24.0).epsilon(1e-12));

    const auto rows_b = compare_architectures(3.3, 0.5, 1.0, 25);
    for (const auto* rows : {&rows_a, &rows_b}) {
        for (const auto& r : *rows) {
            const double best = std::max(
                {r.fbr, r.bias_flip, r.sece, r.investment, r.precharge, r.dpr});
            CHECK(r.proposed >= best - 1e-12);
        }
    }
}
