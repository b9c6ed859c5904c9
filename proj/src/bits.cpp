#include "conprop/bits.hpp"

#include <algorithm>
#include <stdexcept>

namespace conprop {

Bits::Bits(std::size_t nbits, bool full) : nbits_(nbits), words_(words_for(nbits), full ? ~Word{0} : Word{0}) {
  const std::size_t tail = nbits % kernels::kWordBits;
  if (full && tail != 0) words_.back() = (Word{1} << tail) - 1;
}

Bits Bits::from_indices(std::size_t nbits, std::initializer_list<std::size_t> indices) {
  return from_indices(nbits, std::span<const std::size_t>(indices.begin(), indices.size()));
}

Bits Bits::from_indices(std::size_t nbits, std::span<const std::size_t> indices) {
  Bits b(nbits);
  for (std::size_t i : indices) {
    if (i >= nbits) throw std::out_of_range("bit index outside base set");
    b.set(i);
  }
  return b;
}

std::size_t Bits::count() const { return kernels::active().popcount(words_.data(), words_.size()); }

bool Bits::none() const {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

bool Bits::is_subset_of(const Bits& other) const {
  return kernels::active().is_subset(words_.data(), other.words_.data(), std::min(words_.size(), other.words_.size()));
}

bool Bits::intersects(const Bits& other) const {
  return kernels::active().intersects(words_.data(), other.words_.data(), std::min(words_.size(), other.words_.size()));
}

Bits& Bits::operator&=(const Bits& other) {
  kernels::active().and_into(words_.data(), other.words_.data(), std::min(words_.size(), other.words_.size()));
  return *this;
}

Bits& Bits::operator|=(const Bits& other) {
  kernels::active().or_into(words_.data(), other.words_.data(), std::min(words_.size(), other.words_.size()));
  return *this;
}

std::vector<std::size_t> Bits::indices() const {
  std::vector<std::size_t> out;
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

bool operator==(const Bits& a, const Bits& b) {
  return a.nbits_ == b.nbits_ && kernels::active().equal(a.words_.data(), b.words_.data(), a.words_.size());
}

Bits make_matrix(const MatrixShape& shape, bool full) {
  Bits m(shape.storage_bits());
  if (full) {
    for (std::size_t r = 0; r < shape.rows; ++r) {
      for (std::size_t c = 0; c < shape.cols; ++c) m.set(shape.bit(r, c));
    }
  }
  return m;
}

Bits transpose(const Bits& m, const MatrixShape& shape) {
  const MatrixShape t{shape.cols, shape.rows};
  Bits out = make_matrix(t);
  for (std::size_t r = 0; r < shape.rows; ++r) {
    const auto words = row(m, shape, r);
    for (std::size_t w = 0; w < words.size(); ++w) {
      Word bits = words[w];
      while (bits != 0) {
        const auto c = w * kernels::kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
        out.set(t.bit(c, r));
        bits &= bits - 1;
      }
    }
  }
  return out;
}

}  // namespace conprop
