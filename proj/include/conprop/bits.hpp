#pragma once

#include <bit>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "conprop/kernels.hpp"

namespace conprop {

using kernels::Word;

inline constexpr std::size_t words_for(std::size_t nbits) {
  return (nbits + kernels::kWordBits - 1) / kernels::kWordBits;
}

// Fixed-size bitset over a finite base set. Bits past size() are always
// zero, so word-level comparisons are exact set comparisons.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t nbits, bool full = false);

  static Bits from_indices(std::size_t nbits, std::initializer_list<std::size_t> indices);
  static Bits from_indices(std::size_t nbits, std::span<const std::size_t> indices);

  std::size_t size() const { return nbits_; }
  std::size_t word_count() const { return words_.size(); }

  bool test(std::size_t i) const { return (words_[i / kernels::kWordBits] >> (i % kernels::kWordBits)) & 1U; }
  void set(std::size_t i) { words_[i / kernels::kWordBits] |= Word{1} << (i % kernels::kWordBits); }
  void reset(std::size_t i) { words_[i / kernels::kWordBits] &= ~(Word{1} << (i % kernels::kWordBits)); }

  std::size_t count() const;
  bool none() const;
  bool is_subset_of(const Bits& other) const;
  bool intersects(const Bits& other) const;

  Bits& operator&=(const Bits& other);
  Bits& operator|=(const Bits& other);

  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  std::vector<std::size_t> indices() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const auto tz = static_cast<std::size_t>(std::countr_zero(bits));
        fn(w * kernels::kWordBits + tz);
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const Bits& a, const Bits& b);

 private:
  std::size_t nbits_ = 0;
  std::vector<Word> words_;
};

// A rows x cols boolean matrix stored in a Bits whose rows start on word
// boundaries. Used for binary relations: bit (a, b) set iff the a-th value
// of the first variable and the b-th value of the second are related.
struct MatrixShape {
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t stride() const { return words_for(cols); }
  std::size_t storage_bits() const { return rows * stride() * kernels::kWordBits; }
  std::size_t bit(std::size_t r, std::size_t c) const { return r * stride() * kernels::kWordBits + c; }

  friend bool operator==(const MatrixShape&, const MatrixShape&) = default;
};

Bits make_matrix(const MatrixShape& shape, bool full = false);

inline std::span<const Word> row(const Bits& m, const MatrixShape& shape, std::size_t r) {
  return m.words().subspan(r * shape.stride(), shape.stride());
}
inline std::span<Word> row(Bits& m, const MatrixShape& shape, std::size_t r) {
  return m.words().subspan(r * shape.stride(), shape.stride());
}

Bits transpose(const Bits& m, const MatrixShape& shape);

}  // namespace conprop
