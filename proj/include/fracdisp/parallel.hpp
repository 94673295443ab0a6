#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace fracdisp {

enum class Exec { serial, parallel };

/// Number of OpenMP threads used by Exec::parallel maps.
int max_threads();
void set_threads(int k);

/// Runs f(i) for i in [0, n).  Under Exec::parallel the iterations are
/// distributed over OpenMP threads; f must only write to slot i of its
/// outputs, which keeps the results independent of the schedule.  If any
/// iteration throws, the exception of the lowest index is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& f, Exec exec) {
    if (exec == Exec::serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::exception_ptr first;
    std::size_t first_index = n;
    std::mutex mu;
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        try {
            f(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (static_cast<std::size_t>(i) < first_index) {
                first_index = static_cast<std::size_t>(i);
                first = std::current_exception();
            }
        }
    }
    if (first) std::rethrow_exception(first);
}

}  // namespace fracdisp
