#ifndef MURM_PARALLEL_HPP
#define MURM_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace murm {

// Static block partition of [0, n) over `workers` threads. Each worker gets
// one contiguous chunk, so output written by index is deterministic
// regardless of worker count. The first exception thrown by any worker is
// rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
    if (n == 0) return;
    if (workers <= 1 || n == 1) {
        fn(std::size_t(0), n);
        return;
    }
    unsigned k = workers;
    if (k > n) k = static_cast<unsigned>(n);
    std::vector<std::thread> ts;
    ts.reserve(k);
    std::exception_ptr err;
    std::mutex err_mu;
    std::size_t chunk = n / k, extra = n % k, begin = 0;
    for (unsigned i = 0; i < k; ++i) {
        std::size_t len = chunk + (i < extra ? 1 : 0);
        ts.emplace_back([&fn, &err, &err_mu, begin, len] {
            try {
                fn(begin, begin + len);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
            }
        });
        begin += len;
    }
    for (auto& t : ts) t.join();
    if (err) std::rethrow_exception(err);
}

inline unsigned default_workers() {
    unsigned n = std::thread::hardware_concurrency();
    return n ? n : 1;
}

}  // namespace murm

#endif
