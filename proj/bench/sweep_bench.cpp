// Compares the serial and OpenMP sweep paths on a representative rectifier
// parameter grid and verifies they produce identical rows.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include <omp.h>

#include "esim/rectifier.hpp"
#include "esim/sweep.hpp"

namespace {

double run_point(std::size_t i, std::size_t n)
{
    auto cfg = esim::rectifier::calibrated_config(0.0);
    cfg.v_pc_target = 2.5 * static_cast<double>(i) / static_cast<double>(n - 1);
    return esim::rectifier::simulate(cfg, 20).ledger.net_power();
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv)
{
    const std::size_t n = std::max<std::size_t>(argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 64, 2);
    const std::function<double(std::size_t)> fn = [n](std::size_t i) {
        return run_point(i, n);
    };

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = esim::sweep::map_indexed_serial<double>(n, fn);
    const double t_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto parallel = esim::sweep::map_indexed<double>(n, 0, fn);
    const double t_parallel = seconds_since(t0);

    bool identical = serial.size() == parallel.size();
    for (std::size_t i = 0; identical && i < n; ++i)
        identical = serial[i] == parallel[i];

    std::printf("sweep points      : %zu\n", n);
    std::printf("threads           : %d\n", esim::sweep::resolve_workers(0));
    std::printf("serial            : %.3f s\n", t_serial);
    std::printf("openmp            : %.3f s\n", t_parallel);
    std::printf("speedup           : %.2fx\n", t_serial / t_parallel);
    std::printf("rows identical    : %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
