#pragma once

#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace esim::sweep {

// Worker count resolution: the ESIM_WORKERS environment variable overrides
// the requested count; 0 means "let the runtime decide".
int resolve_workers(int requested);

// Evaluates fn over [0, n) into a dense result vector. Rows land at their
// input index, so the output is identical for the serial and parallel paths.
template <typename T>
std::vector<T> map_indexed_serial(std::size_t n, const std::function<T(std::size_t)>& fn)
{
    std::vector<T> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = fn(i);
    return out;
}

namespace detail {
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);
}

// OpenMP-parallel counterpart of map_indexed_serial. Exceptions thrown by fn
// are captured and rethrown after the loop completes.
template <typename T>
std::vector<T> map_indexed(std::size_t n, int workers, const std::function<T(std::size_t)>& fn)
{
    std::vector<T> out(n);
    detail::parallel_for(n, workers, [&](std::size_t i) { out[i] = fn(i); });
    return out;
}

} // namespace esim::sweep
