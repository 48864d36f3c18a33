#include "esim/mos.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace esim::mos {

void MosDevice::validate() const
{
    if (!(beta > 0.0))
        throw std::invalid_argument("MosDevice: beta must be > 0");
    if (!(n > 1.0))
        throw std::invalid_argument("MosDevice: n must be > 1");
    if (!(v_th > 0.0))
        throw std::invalid_argument("MosDevice: v_th must be > 0");
    if (!(v_sg_max > v_th))
        throw std::invalid_argument("MosDevice: v_sg_max must exceed v_th");
    if (gidl_i0 < 0.0)
        throw std::invalid_argument("MosDevice: gidl_i0 must be >= 0");
    if (!(gidl_slope > 0.0))
        throw std::invalid_argument("MosDevice: gidl_slope must be > 0");
    if (gate_leak_density < 0.0 || width < 0.0)
        throw std::invalid_argument("MosDevice: gate leakage fields must be >= 0");
}

double subthreshold_current(const MosDevice& dev, double v_sg, const Environment& env)
{
    const double vt = env.thermal_voltage();
    return dev.beta * (dev.n - 1.0) * vt * vt * std::exp((v_sg - dev.v_th) / (dev.n * vt));
}

double on_resistance(const MosDevice& dev, double v_sg)
{
    if (!(v_sg > dev.v_th))
        throw std::domain_error("on_resistance: device not in triode conduction (v_sg <= v_th)");
    return 1.0 / (dev.beta * (v_sg - dev.v_th));
}

double total_off_leakage(const MosDevice& dev, double v_gsp, const Environment& env)
{
    // GIDL is temperature independent by construction.
    return subthreshold_current(dev, -v_gsp, env) + dev.gidl_i0 * std::exp(v_gsp / dev.gidl_slope);
}

double optimal_super_cutoff_bias(const MosDevice& dev, const Environment& env)
{
    if (!(dev.gidl_i0 > 0.0))
        throw std::domain_error("optimal_super_cutoff_bias: no interior minimum: GIDL disabled");

    // total_off_leakage is a sum of two convex exponentials, so golden
    // section converges to the unique minimum.
    constexpr double inv_phi = 0.6180339887498949;
    double a = 0.0;
    double b = dev.v_sg_max;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = total_off_leakage(dev, c, env);
    double fd = total_off_leakage(dev, d, env);
    while (b - a > 1e-4) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = total_off_leakage(dev, c, env);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = total_off_leakage(dev, d, env);
        }
    }
    return 0.5 * (a + b);
}

namespace {

// With the slope s fixed, the stationarity condition at v_opt pins gidl_i0:
//   i0(s) = I_sub(0) * (s/(n*Vt)) * exp(-v_opt*(1/(n*Vt) + 1/s))
// and the achieved reduction ratio collapses to
//   R(s) = exp(v_opt/(n*Vt)) * (1 + (s/(n*Vt))*exp(-v_opt*(1/(n*Vt)+1/s))) / (1 + s/(n*Vt))
// which decreases from the subthreshold bound (s -> 0) to 1 (s -> inf).
double gidl_i0_for_slope(double i_sub0, double n_vt, double v_opt, double s)
{
    return i_sub0 * (s / n_vt) * std::exp(-v_opt * (1.0 / n_vt + 1.0 / s));
}

double ratio_for_slope(double i_sub0, double n_vt, double v_opt, double s)
{
    const double g = gidl_i0_for_slope(i_sub0, n_vt, v_opt, s);
    const double num = i_sub0 + g;
    const double den = i_sub0 * std::exp(-v_opt / n_vt) + g * std::exp(v_opt / s);
    return num / den;
}

} // namespace

MosDevice calibrate_gidl(const MosDevice& dev, double target_v_opt,
                         double target_reduction_ratio, const Environment& env)
{
    dev.validate();
    if (!(target_v_opt > 0.0 && target_v_opt < dev.v_sg_max))
        throw std::invalid_argument("calibrate_gidl: target_v_opt outside (0, v_sg_max)");
    if (!(target_reduction_ratio > 1.0))
        throw std::invalid_argument("calibrate_gidl: target_reduction_ratio must be > 1");

    const double n_vt = dev.n * env.thermal_voltage();
    const double bound = std::exp(target_v_opt / n_vt);
    if (target_reduction_ratio >= bound)
        throw std::domain_error("calibrate_gidl: infeasible ratio " +
                                std::to_string(target_reduction_ratio) +
                                " exceeds pure-subthreshold bound exp(v_opt/(n*Vt)) = " +
                                std::to_string(bound));

    const double i_sub0 = subthreshold_current(dev, 0.0, env);

    // Bracket the slope, then bisect on the monotone ratio.
    double lo = 1e-4, hi = 1e4;
    while (ratio_for_slope(i_sub0, n_vt, target_v_opt, lo) < target_reduction_ratio && lo > 1e-12)
        lo *= 0.5;
    while (ratio_for_slope(i_sub0, n_vt, target_v_opt, hi) > target_reduction_ratio && hi < 1e12)
        hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (ratio_for_slope(i_sub0, n_vt, target_v_opt, mid) > target_reduction_ratio)
            lo = mid;
        else
            hi = mid;
    }

    MosDevice out = dev;
    out.gidl_slope = std::sqrt(lo * hi);
    out.gidl_i0 = gidl_i0_for_slope(i_sub0, n_vt, target_v_opt, out.gidl_slope);

    const double v_opt = optimal_super_cutoff_bias(out, env);
    const double ratio =
        total_off_leakage(out, 0.0, env) / total_off_leakage(out, v_opt, env);
    if (std::abs(v_opt - target_v_opt) > 1e-3 ||
        std::abs(ratio / target_reduction_ratio - 1.0) > 0.01)
        throw std::runtime_error("calibrate_gidl: round-trip verification failed");
    return out;
}

} // namespace esim::mos
