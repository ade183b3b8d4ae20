#include "parallel.hpp"

#include <atomic>
#include <cstdlib>

namespace psu {

namespace {

unsigned initial_thread_count() {
  if (const char* env = std::getenv("PSU_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 0;
}

std::atomic<unsigned> g_threads{initial_thread_count()};

}  // namespace

void set_thread_count(unsigned n) { g_threads.store(n); }

unsigned thread_count() {
  const unsigned n = g_threads.load();
  if (n != 0) return n;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace psu
