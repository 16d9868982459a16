#include "icfr/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

namespace icfr {

namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int n) {
    if (n < 1) throw std::invalid_argument("thread count must be at least 1");
    g_threads.store(n);
}

int thread_count() { return g_threads.load(); }

void parallel_for(int begin, int end, const std::function<void(int)>& body) {
    const int n = end - begin;
    if (n <= 0) return;
    const int workers = std::min(thread_count(), n);
    if (workers == 1) {
        for (int i = begin; i < end; ++i) body(i);
        return;
    }

    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = begin + w * chunk;
        const int hi = std::min(end, lo + chunk);
        pool.emplace_back([&, lo, hi, w] {
            try {
                for (int i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    pool.clear();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace icfr
