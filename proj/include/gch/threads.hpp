#pragma once

#include <cstdint>
#include <exception>
#include <functional>

namespace gch {

// Worker count: set_thread_count() wins, else GCH_THREADS, else hardware.
int thread_count();
void set_thread_count(int n);

namespace detail {
void parallel_for_impl(int64_t begin, int64_t end, const std::function<void(int64_t)>& body);
}

// Deterministic parallel loop: the body writes only to its own index slots,
// so results are identical for any worker count.
template <typename F>
void parallel_for(int64_t begin, int64_t end, F&& body) {
    detail::parallel_for_impl(begin, end, std::function<void(int64_t)>(std::forward<F>(body)));
}

} // namespace gch
