#include "fraclab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fraclab {

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FRACLAB_THREADS")) {
    const int k = std::atoi(env);
    if (k > 0) return k;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for_index(long long count, int threads, const std::function<void(long long)>& fn) {
  if (count <= 0) return;
  const int workers = std::min<long long>(resolve_thread_count(threads), count);
  if (workers <= 1) {
    for (long long i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<long long> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  auto body = [&]() {
    for (;;) {
      const long long i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace fraclab
