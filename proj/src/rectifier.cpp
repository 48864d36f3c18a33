#include "esim/rectifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "esim/constants.hpp"

namespace esim::rectifier {

void RectifierConfig::validate() const
{
    xdcr.validate();
    if (!(l > 0.0 && v_max > 0.0 && v_out > 0.0 && r_l > 0.0 && c_out > 0.0))
        throw std::invalid_argument("RectifierConfig: l, v_max, v_out, r_l, c_out must be > 0");
    if (r_tot < 0.0 || flip_loss_v < 0.0 || p_ctrl < 0.0 || detector_delay < 0.0 ||
        t_eng < 0.0)
        throw std::invalid_argument("RectifierConfig: loss fields must be >= 0");
    if (!(v_pc_target >= 0.0 && v_pc_target < v_max))
        throw std::invalid_argument("RectifierConfig: requires 0 <= v_pc_target < v_max");
    const double f_lc = 1.0 / (2.0 * pi * std::sqrt(l * xdcr.c_pz));
    if (f_lc < 100.0 * xdcr.f_pz)
        throw std::invalid_argument("RectifierConfig: LC resonance must exceed 100x f_pz");
    const double alpha = r_tot / (2.0 * l);
    if (alpha * alpha >= 1.0 / (l * xdcr.c_pz))
        throw std::invalid_argument("RectifierConfig: power stage overdamped (r_tot too large)");
    if (detector_delay > 0.05 / xdcr.f_pz)
        throw std::invalid_argument("RectifierConfig: detector_delay too large");
}

std::string to_string(FsmState s)
{
    switch (s) {
    case FsmState::INT_P: return "INT_P";
    case FsmState::INT_N: return "INT_N";
    case FsmState::BF_P: return "BF_P";
    case FsmState::BF_N: return "BF_N";
    case FsmState::TRANS_P: return "TRANS_P";
    case FsmState::TRANS_N: return "TRANS_N";
    case FsmState::HAR_P: return "HAR_P";
    case FsmState::HAR_N: return "HAR_N";
    case FsmState::ENG_P: return "ENG_P";
    case FsmState::ENG_N: return "ENG_N";
    case FsmState::PC_P: return "PC_P";
    case FsmState::PC_N: return "PC_N";
    }
    return "?";
}

std::string to_string(Arch a)
{
    switch (a) {
    case Arch::FBR: return "fbr";
    case Arch::INVESTMENT: return "investment";
    case Arch::PRECHARGE: return "precharge";
    case Arch::DPR: return "dpr";
    case Arch::BIAS_FLIP: return "bias_flip";
    case Arch::SECE: return "sece";
    case Arch::PROPOSED: return "proposed";
    }
    return "?";
}

double analytic_pout(Arch arch, const PiezoTransducer& x, const ArchParams& p)
{
    const double base = x.c_pz * x.v_oc * x.f_pz;
    switch (arch) {
    case Arch::FBR: return base * x.v_oc;
    case Arch::INVESTMENT: return 2.0 * base * (p.v_inv + 4.0 * x.v_oc);
    case Arch::PRECHARGE: return 4.0 * base * (p.v_pc + x.v_oc);
    case Arch::DPR: return 4.0 * base * (p.v_init + x.v_oc);
    case Arch::BIAS_FLIP: return 4.0 * base * p.v_out;
    case Arch::SECE: return 4.0 * base * x.v_oc;
    case Arch::PROPOSED: return 2.0 * base * (p.v_max + p.v_pc);
    }
    throw std::invalid_argument("analytic_pout: unknown architecture");
}

double fom(double p_out, const PiezoTransducer& xdcr)
{
    return p_out / (xdcr.c_pz * xdcr.v_oc * xdcr.v_oc * xdcr.f_pz);
}

double precharge_voltage(double v_out, double t_eng, double l, double c_pz)
{
    return v_out * t_eng / std::sqrt(l * c_pz);
}

double accumulation_time(double v_max, double v_pc, double v_oc, double t_pz,
                         double flip_loss_v)
{
    if (v_max <= v_pc)
        return 0.0;
    const double gain = 2.0 * v_oc;
    if (flip_loss_v >= gain && v_max > v_pc + gain)
        throw std::domain_error("accumulation_time: flip loss cancels the half-cycle gain; "
                                "v_max unreachable");
    double v = v_pc;
    double halves = 0.0;
    for (long it = 0; it < 10'000'000; ++it) {
        if (v + gain >= v_max) {
            halves += (v_max - v) / gain; // fractional terminal half cycle, no flip
            return halves * 0.5 * t_pz;
        }
        v += gain;
        halves += 1.0;
        v = std::max(0.0, v - flip_loss_v);
    }
    throw std::domain_error("accumulation_time: did not terminate");
}

namespace {

struct Rlc {
    double alpha = 0.0;   // r/(2L)
    double omega_d = 0.0; // damped angular frequency
};

Rlc make_rlc(double l, double c, double r)
{
    Rlc out;
    out.alpha = r / (2.0 * l);
    out.omega_d = std::sqrt(1.0 / (l * c) - out.alpha * out.alpha);
    return out;
}

// v(t) on the transducer while only the source and r_pz are connected.
struct IntDynamics {
    double a = 0.0, b = 0.0; // particular solution a*sin(wt) + b*cos(wt)
    double k = 0.0;          // transient coefficient
    double inv_tau = 0.0;    // 1/(r_pz*c_pz), 0 for infinite r_pz
    double t0 = 0.0;
    double omega = 0.0;

    double value(double t) const
    {
        return a * std::sin(omega * t) + b * std::cos(omega * t) +
               k * std::exp(-(t - t0) * inv_tau);
    }
};

IntDynamics make_int(const PiezoTransducer& x, double t0, double v0)
{
    IntDynamics d;
    d.omega = 2.0 * pi * x.f_pz;
    d.t0 = t0;
    if (std::isinf(x.r_pz)) {
        d.a = 0.0;
        d.b = -x.v_oc;
        d.inv_tau = 0.0;
    } else {
        const double wt = d.omega * x.r_pz * x.c_pz;
        d.a = x.peak_current() * x.r_pz / (1.0 + wt * wt);
        d.b = -wt * d.a;
        d.inv_tau = 1.0 / (x.r_pz * x.c_pz);
    }
    d.k = v0 - (d.a * std::sin(d.omega * t0) + d.b * std::cos(d.omega * t0));
    return d;
}

struct Engine {
    const RectifierConfig& cfg;
    SimTrace& trace;
    double t = 0.0;
    double v = 0.0;  // signed V_PZ
    int pol = +1;    // +1: S_P on, nodes (v, 0); -1: S_N on, nodes (0, -v)
    long halves_since_harvest = 0;

    Engine(const RectifierConfig& c, SimTrace& tr) : cfg(c), trace(tr) {}

    FsmState int_state() const { return pol > 0 ? FsmState::INT_P : FsmState::INT_N; }

    void record(double time, FsmState s, double v_signed, double i_l)
    {
        const double v_pzp = pol > 0 ? v_signed : 0.0;
        const double v_pzn = pol > 0 ? 0.0 : -v_signed;
        trace.min_node_voltage = std::min({trace.min_node_voltage, v_pzp, v_pzn});
        if (std::min(v_pzp, v_pzn) < -1e-3)
            throw std::runtime_error("rectifier: node-voltage invariant violated at t=" +
                                     std::to_string(time) + " s in state " + to_string(s));
        trace.events.push_back({time, s, v_signed, v_pzp, v_pzn, i_l});
    }

    // Advances the INT state to t_stop unless pol*v reaches v_max first.
    // Returns true when the ZVD event fired (t, v left at the event).
    bool run_int(double t_stop)
    {
        const PiezoTransducer& x = cfg.xdcr;
        if (t_stop <= t)
            return false;
        IntDynamics dyn = make_int(x, t, v);
        const double h = 1.0 / (x.f_pz * 512.0);

        record(t, int_state(), v, 0.0);
        double t_a = t;
        double v_a = v;
        int tick = 0;
        while (t_a < t_stop) {
            double t_b = std::min(t_a + h, t_stop);
            double v_b = dyn.value(t_b);

            if (pol * v_b >= cfg.v_max) {
                // bisect the ZVD instant
                double lo = t_a, hi = t_b;
                for (int it = 0; it < 100; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (pol * dyn.value(mid) >= cfg.v_max)
                        hi = mid;
                    else
                        lo = mid;
                }
                accumulate_energy(dyn, t_a, hi);
                t = hi;
                v = dyn.value(hi);
                record(t, int_state(), v, 0.0);
                return true;
            }
            if (pol * v_b < 0.0) {
                // polarity comparator flips S_P/S_N at the v zero crossing
                double lo = t_a, hi = t_b;
                for (int it = 0; it < 100; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (pol * dyn.value(mid) < 0.0)
                        hi = mid;
                    else
                        lo = mid;
                }
                accumulate_energy(dyn, t_a, hi);
                t_a = hi;
                v_a = 0.0;
                record(t_a, int_state(), 0.0, 0.0);
                pol = -pol;
                record(t_a, int_state(), 0.0, 0.0);
                continue;
            }

            accumulate_energy(dyn, t_a, t_b);
            t_a = t_b;
            v_a = v_b;
            if ((++tick & 15) == 0 || t_a >= t_stop)
                record(t_a, int_state(), v_a, 0.0);
        }
        t = t_stop;
        v = v_a;
        return false;
    }

    // Simpson quadrature of source energy and r_pz loss over [ta, tb].
    void accumulate_energy(const IntDynamics& dyn, double ta, double tb)
    {
        if (tb <= ta)
            return;
        const PiezoTransducer& x = cfg.xdcr;
        const double tm = 0.5 * (ta + tb);
        auto src = [&](double tt) { return x.current(tt) * dyn.value(tt); };
        trace.ledger.e_src += (tb - ta) / 6.0 * (src(ta) + 4.0 * src(tm) + src(tb));
        if (!std::isinf(x.r_pz)) {
            auto leak = [&](double tt) {
                const double vv = dyn.value(tt);
                return vv * vv / x.r_pz;
            };
            trace.ledger.e_loss_rpz +=
                (tb - ta) / 6.0 * (leak(ta) + 4.0 * leak(tm) + leak(tb));
        }
    }

    void bias_flip()
    {
        const FsmState s = pol > 0 ? FsmState::BF_P : FsmState::BF_N;
        const double v0 = v;
        if (std::abs(v0) < 1e-12) {
            pol = -pol; // nothing to flip, just track the current direction
            return;
        }
        const double c = cfg.xdcr.c_pz;
        const Rlc rlc = make_rlc(cfg.l, c, cfg.r_tot);
        const double tau_half = pi / rlc.omega_d;
        const double tau_cross = (pi - std::atan2(rlc.omega_d, rlc.alpha)) / rlc.omega_d;
        const double eff = std::exp(-rlc.alpha * tau_half);
        const double v_rlc = std::abs(v0) * eff;
        const double v_after = std::max(0.0, v_rlc - cfg.flip_loss_v);

        auto v_of = [&](double tau) {
            return v0 * std::exp(-rlc.alpha * tau) *
                   (std::cos(rlc.omega_d * tau) +
                    rlc.alpha / rlc.omega_d * std::sin(rlc.omega_d * tau));
        };
        auto i_of = [&](double tau) {
            return std::abs(v0) / (cfg.l * rlc.omega_d) * std::exp(-rlc.alpha * tau) *
                   std::sin(rlc.omega_d * tau);
        };
        for (int k = 0; k <= 8; ++k) {
            const double tau = tau_cross * k / 8.0;
            record(t + tau, s, v_of(tau), i_of(tau));
        }
        pol = -pol; // handover at the v zero crossing keeps both nodes positive
        const FsmState s2 = pol > 0 ? FsmState::BF_P : FsmState::BF_N;
        for (int k = 1; k <= 8; ++k) {
            const double tau = tau_cross + (tau_half - tau_cross) * k / 8.0;
            record(t + tau, s2, v_of(tau), i_of(tau));
        }

        trace.ledger.e_loss_rtot += 0.5 * c * (v0 * v0 - v_rlc * v_rlc);
        trace.ledger.e_loss_flip += 0.5 * c * (v_rlc * v_rlc - v_after * v_after);
        v = (v0 > 0.0 ? -1.0 : 1.0) * v_after;
        t += tau_half;
        record(t, s2, v, 0.0);
        ++trace.total_flips;
    }

    // TRANS followed by HAR: drain the transducer into the inductor, then
    // ramp the inductor into the output rail.
    void transfer()
    {
        const double c = cfg.xdcr.c_pz;
        const Rlc rlc = make_rlc(cfg.l, c, cfg.r_tot);
        const double v0 = v;
        const FsmState s_tr = pol > 0 ? FsmState::TRANS_P : FsmState::TRANS_N;
        const FsmState s_har = pol > 0 ? FsmState::HAR_P : FsmState::HAR_N;

        const double tau_q = (pi - std::atan2(rlc.omega_d, rlc.alpha)) / rlc.omega_d;
        const double i_pk = std::abs(v0) * std::sqrt(c / cfg.l) * std::exp(-rlc.alpha * tau_q);
        auto v_of = [&](double tau) {
            return v0 * std::exp(-rlc.alpha * tau) *
                   (std::cos(rlc.omega_d * tau) +
                    rlc.alpha / rlc.omega_d * std::sin(rlc.omega_d * tau));
        };
        auto i_of = [&](double tau) {
            return std::abs(v0) / (cfg.l * rlc.omega_d) * std::exp(-rlc.alpha * tau) *
                   std::sin(rlc.omega_d * tau);
        };
        for (int k = 0; k <= 8; ++k) {
            const double tau = tau_q * k / 8.0;
            record(t + tau, s_tr, v_of(tau), i_of(tau));
        }
        trace.ledger.e_loss_rtot += 0.5 * c * v0 * v0 - 0.5 * cfg.l * i_pk * i_pk;
        t += tau_q;
        v = 0.0;

        // HAR: L di/dt = -v_out - r*i until i = 0
        double t_har, q_har;
        if (cfg.r_tot < 1e-9) {
            t_har = cfg.l * i_pk / cfg.v_out;
            q_har = 0.5 * i_pk * t_har;
        } else {
            t_har = cfg.l / cfg.r_tot * std::log1p(i_pk * cfg.r_tot / cfg.v_out);
            q_har = (cfg.l * i_pk - cfg.v_out * t_har) / cfg.r_tot;
        }
        auto i_har = [&](double tau) {
            if (cfg.r_tot < 1e-9)
                return i_pk - cfg.v_out / cfg.l * tau;
            return (i_pk + cfg.v_out / cfg.r_tot) * std::exp(-cfg.r_tot * tau / cfg.l) -
                   cfg.v_out / cfg.r_tot;
        };
        for (int k = 0; k <= 8; ++k) {
            const double tau = t_har * k / 8.0;
            record(t + tau, s_har, 0.0, std::max(0.0, i_har(tau)));
        }
        trace.ledger.e_out += cfg.v_out * q_har;
        trace.ledger.e_loss_rtot += 0.5 * cfg.l * i_pk * i_pk - cfg.v_out * q_har;
        t += t_har;
    }

    // ENG followed by PC: energize the inductor from the rail, then resonate
    // the charge onto the transducer with the current polarity.
    void precharge()
    {
        const double c = cfg.xdcr.c_pz;
        const double t_eng = cfg.t_eng > 0.0
                                 ? cfg.t_eng
                                 : cfg.v_pc_target * std::sqrt(cfg.l * c) / cfg.v_out;
        if (t_eng <= 0.0)
            return;
        const FsmState s_eng = pol > 0 ? FsmState::ENG_P : FsmState::ENG_N;
        const FsmState s_pc = pol > 0 ? FsmState::PC_P : FsmState::PC_N;

        double i_eng, q_eng;
        if (cfg.r_tot < 1e-9) {
            i_eng = cfg.v_out * t_eng / cfg.l;
            q_eng = 0.5 * i_eng * t_eng;
        } else {
            i_eng = -cfg.v_out / cfg.r_tot * std::expm1(-cfg.r_tot * t_eng / cfg.l);
            q_eng = cfg.v_out / cfg.r_tot *
                    (t_eng + cfg.l / cfg.r_tot * std::expm1(-cfg.r_tot * t_eng / cfg.l));
        }
        auto i_of_eng = [&](double tau) {
            if (cfg.r_tot < 1e-9)
                return cfg.v_out * tau / cfg.l;
            return cfg.v_out / cfg.r_tot * (1.0 - std::exp(-cfg.r_tot * tau / cfg.l));
        };
        for (int k = 0; k <= 8; ++k) {
            const double tau = t_eng * k / 8.0;
            record(t + tau, s_eng, v, i_of_eng(tau));
        }
        trace.ledger.e_inv += cfg.v_out * q_eng;
        trace.ledger.e_loss_rtot += cfg.v_out * q_eng - 0.5 * cfg.l * i_eng * i_eng;
        t += t_eng;

        const Rlc rlc = make_rlc(cfg.l, c, cfg.r_tot);
        const double tau_pc = std::atan2(rlc.omega_d, rlc.alpha) / rlc.omega_d;
        const double v_pc = i_eng * std::sqrt(cfg.l / c) * std::exp(-rlc.alpha * tau_pc);
        auto v_of_pc = [&](double tau) {
            return pol * i_eng / (c * rlc.omega_d) * std::exp(-rlc.alpha * tau) *
                   std::sin(rlc.omega_d * tau);
        };
        auto i_of_pc = [&](double tau) {
            return i_eng * std::exp(-rlc.alpha * tau) *
                   (std::cos(rlc.omega_d * tau) -
                    rlc.alpha / rlc.omega_d * std::sin(rlc.omega_d * tau));
        };
        for (int k = 0; k <= 8; ++k) {
            const double tau = tau_pc * k / 8.0;
            record(t + tau, s_pc, v_of_pc(tau), std::max(0.0, i_of_pc(tau)));
        }
        trace.ledger.e_loss_rtot += 0.5 * cfg.l * i_eng * i_eng - 0.5 * c * v_pc * v_pc;
        t += tau_pc;
        v = pol * v_pc;
    }
};

} // namespace

SimTrace simulate(const RectifierConfig& cfg, int n_cycles)
{
    cfg.validate();
    if (n_cycles < 1)
        throw std::invalid_argument("simulate: n_cycles must be >= 1");

    SimTrace trace;
    Engine eng(cfg, trace);
    const double half_t = 0.5 / cfg.xdcr.f_pz;
    double accumulation_total = 0.0;

    if (cfg.precharge_enabled())
        eng.precharge();
    double acc_start = eng.t;

    while (trace.cycles < n_cycles) {
        // next source zero crossing strictly after the current time
        const double k = std::floor(eng.t / half_t + 1e-9) + 1.0;
        const double t_zc = k * half_t;

        if (eng.run_int(t_zc)) {
            // ZVD fired; let the detector delay elapse, then transfer
            if (cfg.detector_delay > 0.0)
                eng.run_int(eng.t + cfg.detector_delay);
            accumulation_total += eng.t - acc_start;
            eng.transfer();
            ++trace.cycles;
            eng.halves_since_harvest = 0;
            if (trace.cycles < n_cycles && cfg.precharge_enabled())
                eng.precharge();
            acc_start = eng.t;
            continue;
        }

        // peak detect at the source zero crossing starts the bias flip
        if (cfg.detector_delay > 0.0) {
            if (eng.run_int(eng.t + cfg.detector_delay)) {
                accumulation_total += eng.t - acc_start;
                eng.transfer();
                ++trace.cycles;
                eng.halves_since_harvest = 0;
                if (trace.cycles < n_cycles && cfg.precharge_enabled())
                    eng.precharge();
                acc_start = eng.t;
                continue;
            }
        }
        eng.bias_flip();
        if (++eng.halves_since_harvest > 4000)
            throw std::runtime_error(
                "rectifier: FSM deadlock, no harvest event reachable (t=" +
                std::to_string(eng.t) + " s, v_pz=" + std::to_string(eng.v) +
                " V, state=" + to_string(eng.int_state()) + ")");
    }

    trace.ledger.t_span = eng.t;
    trace.ledger.e_ctrl = cfg.p_ctrl * eng.t;
    trace.mean_accumulation_time = accumulation_total / n_cycles;
    return trace;
}

double steady_state_vout(const RectifierConfig& cfg)
{
    RectifierConfig c = cfg;
    double v = std::max(0.2, std::sqrt(analytic_pout(Arch::FBR, cfg.xdcr, {}) * cfg.r_l));
    for (int it = 0; it < 80; ++it) {
        c.v_out = v;
        const double p = simulate(c, 24).ledger.net_power();
        if (!(p > 0.0))
            throw std::runtime_error("steady_state_vout: no positive net power at v_out=" +
                                     std::to_string(v) + " V");
        const double v_next = std::sqrt(p * cfg.r_l);
        const double step = 0.5 * (v_next - v);
        v += step;
        if (v > 50.0 * cfg.v_max)
            throw std::runtime_error("steady_state_vout: diverged; load cannot balance "
                                     "the harvested power");
        if (std::abs(step) < 1e-3)
            return v;
    }
    throw std::runtime_error("steady_state_vout: did not converge");
}

std::vector<FomGridRow> compare_architectures(double v_max, double v_oc, double v_out,
                                              int steps)
{
    if (steps < 2)
        throw std::invalid_argument("compare_architectures: steps must be >= 2");
    PiezoTransducer x;
    x.v_oc = v_oc;
    const double x_hi = std::max(0.0, v_max - 2.0 * v_oc);
    const double x_inv_hi = std::max(0.0, v_max - 4.0 * v_oc);

    std::vector<FomGridRow> rows;
    rows.reserve(steps);
    for (int i = 0; i < steps; ++i) {
        const double xv = x_hi * i / (steps - 1);
        FomGridRow row;
        row.x = xv;
        ArchParams p;
        p.v_out = v_out;
        p.v_max = v_max;
        row.fbr = fom(analytic_pout(Arch::FBR, x, p), x);
        row.bias_flip = fom(analytic_pout(Arch::BIAS_FLIP, x, p), x);
        row.sece = fom(analytic_pout(Arch::SECE, x, p), x);
        p.v_inv = std::min(xv, x_inv_hi);
        row.investment = fom(analytic_pout(Arch::INVESTMENT, x, p), x);
        p.v_pc = xv;
        row.precharge = fom(analytic_pout(Arch::PRECHARGE, x, p), x);
        p.v_init = xv;
        row.dpr = fom(analytic_pout(Arch::DPR, x, p), x);
        row.proposed = fom(analytic_pout(Arch::PROPOSED, x, p), x);
        rows.push_back(row);
    }
    return rows;
}

RectifierConfig calibrated_config(double v_pc_target)
{
    RectifierConfig cfg;
    cfg.xdcr = PiezoTransducer{19e-9, 146.0, 2e6, 1.0};
    cfg.l = 47e-6;
    cfg.v_max = 3.3;
    cfg.v_pc_target = v_pc_target;
    cfg.v_out = 1.0;
    cfg.r_l = 100e3;
    cfg.c_out = 20e-6;
    cfg.r_tot = 1.2;
    cfg.flip_loss_v = 0.8;
    cfg.p_ctrl = 0.75e-6;
    cfg.detector_delay = 0.0;
    return cfg;
}

} // namespace esim::rectifier
