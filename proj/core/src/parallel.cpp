#include "deco/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>
#include <vector>

namespace deco::util {

void for_each_block(std::size_t n_items, std::size_t block_size, int threads,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (block_size == 0) throw std::invalid_argument("for_each_block: block_size must be > 0");
    if (threads < 1) throw std::invalid_argument("for_each_block: threads must be >= 1");
    const std::size_t blocks = block_count(n_items, block_size);

    auto run_block = [&](std::size_t b) {
        const std::size_t begin = b * block_size;
        const std::size_t end = std::min(n_items, begin + block_size);
        fn(b, begin, end);
    };

    const std::size_t n_workers = std::min<std::size_t>(static_cast<std::size_t>(threads), blocks);
    if (n_workers <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) run_block(b);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
        workers.emplace_back([&] {
            for (std::size_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1))
                run_block(b);
        });
    }
    for (auto& w : workers) w.join();
}

} // namespace deco::util
