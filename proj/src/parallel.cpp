#include "lamelab/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lamelab {
namespace {
std::atomic<int> workers{1};
}

void set_thread_count(int n) { workers = n < 1 ? 1 : n; }
int thread_count() { return workers; }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const int nt = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers.load()), count));
    if (nt <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace lamelab
