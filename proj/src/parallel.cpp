#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace periodiag::detail {

namespace {

int thread_count() {
    if (const char* env = std::getenv("PERIODIAG_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed >= 1) return std::min(parsed, 64);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return std::clamp(static_cast<int>(hw), 1, 16);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

void parallel_for(int n, const std::function<void(int)>& body) {
    const int workers = std::min(thread_count(), std::max(n, 1));
    if (workers <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};

    auto work = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                body(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();

    if (error) std::rethrow_exception(error);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t substream) {
    return splitmix64(splitmix64(master ^ splitmix64(stream)) ^ substream);
}

}  // namespace periodiag::detail
