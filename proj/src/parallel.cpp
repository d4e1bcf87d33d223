#include "hessreg/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace hessreg {

int parallel_width() {
    static const int width = [] {
        if (const char* env = std::getenv("HESSREG_THREADS")) {
            const int v = std::atoi(env);
            if (v >= 1) return v;
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return static_cast<int>(std::min(hw ? hw : 1u, 4u));
    }();
    return width;
}

void parallel_for(int count, const std::function<void(int, int)>& fn) {
    const int width = std::min(parallel_width(), count);
    if (width <= 1 || count < 64) {
        fn(0, count);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(width));
    const int chunk = (count + width - 1) / width;
    for (int w = 0; w < width; ++w) {
        const int begin = w * chunk;
        const int end = std::min(begin + chunk, count);
        if (begin >= end) break;
        workers.emplace_back(fn, begin, end);
    }
    for (auto& t : workers) t.join();
}

}  // namespace hessreg
