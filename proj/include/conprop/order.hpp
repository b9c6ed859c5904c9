#pragma once

// Compound orderings: products of finite powersets ordered componentwise by
// reversed inclusion. X ⊑ Y iff Y[i] ⊆ X[i] for every coordinate, so the
// least element is the tuple of full base sets and propagation moves "up"
// by shrinking sets.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "conprop/bits.hpp"

namespace conprop {

// Strictly increasing, non-empty sequence of coordinate indices (0-based).
class Scheme {
 public:
  Scheme() = default;
  explicit Scheme(std::vector<std::size_t> indices);
  Scheme(std::initializer_list<std::size_t> indices) : Scheme(std::vector<std::size_t>(indices)) {}

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  std::size_t operator[](std::size_t k) const { return indices_[k]; }
  bool contains(std::size_t coordinate) const;
  bool valid_for(std::size_t arity) const { return !indices_.empty() && indices_.back() < arity; }

  // "(1,3)" style, 1-based.
  std::string to_string() const;

  friend bool operator==(const Scheme&, const Scheme&) = default;

 private:
  std::vector<std::size_t> indices_;
};

using Slice = std::vector<Bits>;

class ProductElement {
 public:
  ProductElement() = default;
  explicit ProductElement(std::vector<Bits> components) : components_(std::move(components)) {}

  std::size_t arity() const { return components_.size(); }
  const Bits& operator[](std::size_t i) const { return components_[i]; }
  Bits& operator[](std::size_t i) { return components_[i]; }
  const std::vector<Bits>& components() const { return components_; }

  // Sum of component cardinalities. Strictly drops whenever the element
  // strictly grows in the ordering.
  std::uint64_t weight() const;

  friend bool operator==(const ProductElement&, const ProductElement&) = default;

 private:
  std::vector<Bits> components_;
};

// d[s]
Slice slice(const ProductElement& d, const Scheme& s);

// Writes `values` back into coordinates s of d.
void assign(ProductElement& d, const Scheme& s, Slice values);

using SchemeFn = std::function<Slice(Slice)>;

// f⁺: applies f to d[s] and leaves every other coordinate alone.
std::function<ProductElement(const ProductElement&)> canonic_extend(SchemeFn f, Scheme s, std::size_t arity);

// a ⊑ b under componentwise reversed inclusion.
bool leq(const ProductElement& a, const ProductElement& b);

// Least element: every coordinate is its full base set of the given size.
ProductElement bottom(const std::vector<std::size_t>& base_sizes);

}  // namespace conprop

#include <random>

namespace conprop {

// Random element above `top` in the ordering: every coordinate is a random
// subset of the corresponding coordinate of `top`.
ProductElement random_refinement(const ProductElement& top, std::mt19937_64& rng, double keep_probability = 0.6);

}  // namespace conprop
