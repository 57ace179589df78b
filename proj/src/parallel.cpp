#include "qpn/parallel.hpp"

namespace qpn {

namespace {
std::atomic<int> g_threads{1};
}

int default_threads() { return g_threads.load(); }
void set_default_threads(int t) { g_threads.store(t < 1 ? 1 : t); }

}  // namespace qpn
