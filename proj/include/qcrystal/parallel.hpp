#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace qcrystal {

// Parallel map over independent jobs; results keep the input order.  Runs
// inline on a single hardware thread.
template <class In, class F>
auto parallel_map(const std::vector<In>& jobs, F f) {
    using Out = decltype(f(jobs.front()));
    std::vector<Out> out(jobs.size());
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), jobs.size()));
    if (workers <= 1) {
        for (std::size_t k = 0; k < jobs.size(); ++k)
            out[k] = f(jobs[k]);
        return out;
    }
    std::vector<std::future<void>> tasks;
    for (std::size_t w = 0; w < workers; ++w)
        tasks.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t k = w; k < jobs.size(); k += workers)
                out[k] = f(jobs[k]);
        }));
    for (auto& t : tasks)
        t.get();
    return out;
}

} // namespace qcrystal
