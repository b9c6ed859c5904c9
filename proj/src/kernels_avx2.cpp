// Compiled with -mavx2 -mpopcnt. Nothing in here may run unless
// cpu_has_avx2() returned true.

#include "conprop/kernels.hpp"

#include <immintrin.h>

#include <bit>

namespace conprop::kernels {
namespace {

inline __m256i load(const Word* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(Word* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

void and_into(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_and_si256(load(dst + i), load(src + i)));
  for (; i < n; ++i) dst[i] &= src[i];
}

void or_into(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_or_si256(load(dst + i), load(src + i)));
  for (; i < n; ++i) dst[i] |= src[i];
}

bool is_subset(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // testc(b, a) == 1  <=>  (~b & a) == 0
    if (!_mm256_testc_si256(load(b + i), load(a + i))) return false;
  }
  for (; i < n; ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

bool intersects(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    if (!_mm256_testz_si256(load(a + i), load(b + i))) return true;
  }
  for (; i < n; ++i) {
    if ((a[i] & b[i]) != 0) return true;
  }
  return false;
}

// Nibble-lookup popcount (Mula) on 256-bit lanes, summed with sad_epu8.
std::size_t popcount(const Word* a, std::size_t n) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i v = load(a + i);
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::size_t total = static_cast<std::size_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
  for (; i < n; ++i) total += static_cast<std::size_t>(std::popcount(a[i]));
  return total;
}

bool equal(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i x = _mm256_xor_si256(load(a + i), load(b + i));
    if (!_mm256_testz_si256(x, x)) return false;
  }
  for (; i < n; ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

constexpr KernelTable kAvx2{"avx2", and_into, or_into, is_subset, intersects, popcount, equal};

}  // namespace

namespace detail {
const KernelTable* avx2_table_impl() { return &kAvx2; }
}  // namespace detail

}  // namespace conprop::kernels
