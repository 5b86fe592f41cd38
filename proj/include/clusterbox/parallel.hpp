/*
 * parallel.hpp
 * ------------
 * Minimal deterministic task helper: maps a function over an index range on a
 * fixed number of threads and returns results ordered by index, so callers
 * are schedule-independent by construction.
 */
#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace clusterbox {

inline unsigned resolve_threads(unsigned threads) {
    if (threads != 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

template <class R, class Fn>
std::vector<R> parallel_map(size_t count, unsigned threads, Fn fn) {
    std::vector<std::optional<R>> slots(count);
    threads = resolve_threads(threads);
    if (threads <= 1 || count < 2) {
        for (size_t i = 0; i < count; ++i) slots[i].emplace(fn(i));
    } else {
        const unsigned workers = static_cast<unsigned>(std::min<size_t>(threads, count));
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                try {
                    for (size_t i = w; i < count; i += workers) slots[i].emplace(fn(i));
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }
    std::vector<R> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace clusterbox
