#include <atomic>
#include <cstdlib>
#include <string_view>

#include "conprop/kernels.hpp"

namespace conprop::kernels {

#if defined(CONPROP_HAVE_AVX2)
namespace detail {
const KernelTable* avx2_table_impl();
}
#endif

const KernelTable* avx2_table() {
#if defined(CONPROP_HAVE_AVX2)
  return detail::avx2_table_impl();
#else
  return nullptr;
#endif
}

bool cpu_has_avx2() {
#if defined(CONPROP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

namespace {

const KernelTable* best_available() {
  if (cpu_has_avx2()) return avx2_table();
  return &scalar_table();
}

const KernelTable* resolve(std::string_view name) {
  if (name == "scalar") return &scalar_table();
  if (name == "avx2") return cpu_has_avx2() ? avx2_table() : nullptr;
  if (name == "auto" || name.empty()) return best_available();
  return nullptr;
}

const KernelTable* initial_selection() {
  if (const char* env = std::getenv("CONPROP_KERNELS")) {
    if (const KernelTable* t = resolve(env)) return t;
  }
  return best_available();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{initial_selection()};
  return current;
}

}  // namespace

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  const KernelTable* t = resolve(name);
  if (t == nullptr) return false;
  detail::set_active(t);
  return true;
}

void detail::set_active(const KernelTable* table) { slot().store(table, std::memory_order_release); }

ScopedSelection::ScopedSelection(const KernelTable& table) : previous_(&active()) { detail::set_active(&table); }

ScopedSelection::~ScopedSelection() { detail::set_active(previous_); }

}  // namespace conprop::kernels
