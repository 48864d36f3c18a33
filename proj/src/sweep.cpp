#include "esim/sweep.hpp"

#include <exception>
#include <mutex>

#include <omp.h>

namespace esim::sweep {

int resolve_workers(int requested)
{
    if (const char* env = std::getenv("ESIM_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0)
            return n;
    }
    if (requested > 0)
        return requested;
    return omp_get_max_threads();
}

namespace detail {

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body)
{
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const int threads = resolve_workers(workers);

#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error)
                first_error = std::current_exception();
        }
    }
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace detail

} // namespace esim::sweep
