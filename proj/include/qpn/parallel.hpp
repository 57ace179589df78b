#pragma once
// Index-ordered parallel map. Results land in their own slots, so output order
// never depends on the thread count.

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace qpn {

int default_threads();
void set_default_threads(int t);

template <class T>
std::vector<T> parallel_map(int count, const std::function<T(int)>& fn, int threads = 0) {
  if (threads <= 0) threads = default_threads();
  std::vector<T> out(count);
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex mu;
  auto worker = [&] {
    while (true) {
      int i = next++;
      if (i >= count) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(threads, count); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace qpn
