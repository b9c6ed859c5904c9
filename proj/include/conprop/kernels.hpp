#pragma once

// Word-level set kernels. Every value set and relation in the engine is a
// bitset, so intersection, union, subset tests and relation composition all
// reduce to the loops below. A scalar reference table is always present;
// an AVX2 table is compiled in on x86-64 and picked at runtime when the CPU
// supports it.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace conprop::kernels {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

struct KernelTable {
  const char* name;
  // dst[i] &= src[i]
  void (*and_into)(Word* dst, const Word* src, std::size_t n);
  // dst[i] |= src[i]
  void (*or_into)(Word* dst, const Word* src, std::size_t n);
  // (a & ~b) == 0 over all words, i.e. a ⊆ b
  bool (*is_subset)(const Word* a, const Word* b, std::size_t n);
  // (a & b) != 0 for some word
  bool (*intersects)(const Word* a, const Word* b, std::size_t n);
  std::size_t (*popcount)(const Word* a, std::size_t n);
  bool (*equal)(const Word* a, const Word* b, std::size_t n);
};

const KernelTable& scalar_table();

// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table();

bool cpu_has_avx2();

// Table used by Bits and the propagators. Resolved once on first use from
// the CONPROP_KERNELS environment variable ("scalar", "avx2", "auto"),
// falling back to the best variant the CPU supports.
const KernelTable& active();

// Switches the active table. Accepts "scalar", "avx2" or "auto"; returns
// false (and leaves the selection alone) if the request can't be honoured.
bool select(std::string_view name);

// RAII override for tests that compare variants.
class ScopedSelection {
 public:
  explicit ScopedSelection(const KernelTable& table);
  ~ScopedSelection();
  ScopedSelection(const ScopedSelection&) = delete;
  ScopedSelection& operator=(const ScopedSelection&) = delete;

 private:
  const KernelTable* previous_;
};

namespace detail {
void set_active(const KernelTable* table);
}  // namespace detail

}  // namespace conprop::kernels
