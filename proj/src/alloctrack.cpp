#include "kronglm/alloctrack.hpp"

#include <atomic>

namespace kronglm::alloc {

namespace {

std::atomic<std::size_t> g_live{0};
std::atomic<std::size_t> g_peak{0};
std::atomic<std::size_t> g_largest{0};
std::atomic<std::size_t> g_count{0};
std::atomic<bool> g_hooks{false};

void raise_to(std::atomic<std::size_t>& target, std::size_t value) noexcept {
  std::size_t cur = target.load(std::memory_order_relaxed);
  while (cur < value &&
         !target.compare_exchange_weak(cur, value, std::memory_order_relaxed)) {
  }
}

}  // namespace

bool hooks_active() { return g_hooks.load(std::memory_order_relaxed); }

void mark_hooks_active() noexcept { g_hooks.store(true, std::memory_order_relaxed); }

void reset() {
  const std::size_t live = g_live.load(std::memory_order_relaxed);
  g_peak.store(live, std::memory_order_relaxed);
  g_largest.store(0, std::memory_order_relaxed);
  g_count.store(0, std::memory_order_relaxed);
}

Stats stats() {
  return Stats{g_live.load(std::memory_order_relaxed), g_peak.load(std::memory_order_relaxed),
               g_largest.load(std::memory_order_relaxed), g_count.load(std::memory_order_relaxed)};
}

void on_alloc(std::size_t bytes) noexcept {
  const std::size_t live = g_live.fetch_add(bytes, std::memory_order_relaxed) + bytes;
  raise_to(g_peak, live);
  raise_to(g_largest, bytes);
  g_count.fetch_add(1, std::memory_order_relaxed);
}

void on_free(std::size_t bytes) noexcept {
  g_live.fetch_sub(bytes, std::memory_order_relaxed);
}

void note_external(std::size_t bytes) noexcept {
  raise_to(g_largest, bytes);
  g_count.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace kronglm::alloc
