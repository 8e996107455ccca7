#pragma once

#include <functional>

namespace fraclab {

/// Worker count: requested if > 0, else FRACLAB_THREADS, else hardware.
int resolve_thread_count(int requested);

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index
/// writes only its own output slot, so results are identical for any worker
/// count. Exceptions from workers are rethrown on the calling thread.
void parallel_for_index(long long count, int threads,
                        const std::function<void(long long)>& fn);

}  // namespace fraclab
