#pragma once

#include <functional>

namespace hessreg {

/// Data-parallel width: HESSREG_THREADS when set, otherwise min(hardware, 4).
int parallel_width();

/// Runs fn(begin, end) over disjoint chunks of [0, count). Chunks are maps
/// over independent outputs; reductions stay sequential for bit-stable
/// results.
void parallel_for(int count, const std::function<void(int, int)>& fn);

}  // namespace hessreg
