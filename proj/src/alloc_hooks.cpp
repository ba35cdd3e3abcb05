// Global operator new/delete replacements that report every heap block to
// the allocation tracker. Linked into binaries that assert or report
// allocation behavior (the CLI, the acceptance suite and the unit tests);
// the library itself never depends on them.

#include <cstdlib>
#include <malloc.h>
#include <new>

#include "kronglm/alloctrack.hpp"

namespace {

struct HookMarker {
  HookMarker() { kronglm::alloc::mark_hooks_active(); }
};
const HookMarker g_marker;

void* tracked_alloc(std::size_t n) {
  void* p = std::malloc(n == 0 ? 1 : n);
  if (p != nullptr) {
    kronglm::alloc::on_alloc(malloc_usable_size(p));
  }
  return p;
}

void tracked_free(void* p) noexcept {
  if (p == nullptr) return;
  kronglm::alloc::on_free(malloc_usable_size(p));
  std::free(p);
}

}  // namespace

void* operator new(std::size_t n) {
  void* p = tracked_alloc(n);
  if (p == nullptr) throw std::bad_alloc();
  return p;
}

void* operator new[](std::size_t n) {
  void* p = tracked_alloc(n);
  if (p == nullptr) throw std::bad_alloc();
  return p;
}

void* operator new(std::size_t n, const std::nothrow_t&) noexcept { return tracked_alloc(n); }
void* operator new[](std::size_t n, const std::nothrow_t&) noexcept { return tracked_alloc(n); }

void operator delete(void* p) noexcept { tracked_free(p); }
void operator delete[](void* p) noexcept { tracked_free(p); }
void operator delete(void* p, std::size_t) noexcept { tracked_free(p); }
void operator delete[](void* p, std::size_t) noexcept { tracked_free(p); }
void operator delete(void* p, const std::nothrow_t&) noexcept { tracked_free(p); }
void operator delete[](void* p, const std::nothrow_t&) noexcept { tracked_free(p); }
