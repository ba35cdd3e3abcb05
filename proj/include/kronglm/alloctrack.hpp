#pragma once

#include <cstddef>

namespace kronglm::alloc {

struct Stats {
  std::size_t live_bytes = 0;
  std::size_t peak_live_bytes = 0;
  std::size_t largest_single = 0;
  std::size_t allocations = 0;
};

/// True when the global new/delete hooks are linked into this binary.
bool hooks_active();

/// Re-bases the peak at the current live size and clears the largest
/// allocation and count, so a measurement scope starts clean.
void reset();

Stats stats();

void on_alloc(std::size_t bytes) noexcept;
void on_free(std::size_t bytes) noexcept;

/// Records an allocation made outside the tracked allocator (used by the
/// dense materializer, whose buffers come from the linear algebra
/// backend).
void note_external(std::size_t bytes) noexcept;

void mark_hooks_active() noexcept;

}  // namespace kronglm::alloc
