#include "gch/threads.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace gch {

namespace {
int g_threads = 0; // 0 = unset

int default_threads() {
    if (const char* env = std::getenv("GCH_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}
} // namespace

int thread_count() { return g_threads >= 1 ? g_threads : default_threads(); }

void set_thread_count(int n) { g_threads = n >= 1 ? n : 0; }

namespace detail {

void parallel_for_impl(int64_t begin, int64_t end, const std::function<void(int64_t)>& body) {
    int64_t n = end - begin;
    if (n <= 0) return;
    int workers = thread_count();
    if (workers <= 1 || n == 1) {
        for (int64_t i = begin; i < end; ++i) body(i);
        return;
    }
    workers = static_cast<int>(std::min<int64_t>(workers, n));
    std::atomic<int64_t> next(begin);
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&]() {
        while (true) {
            int64_t i = next.fetch_add(1);
            if (i >= end) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(end);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace detail
} // namespace gch
