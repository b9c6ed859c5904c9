#include "conprop/order.hpp"

#include "conprop/errors.hpp"

namespace conprop {

Scheme::Scheme(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  if (indices_.empty()) throw StructuralError("scheme must not be empty");
  for (std::size_t k = 1; k < indices_.size(); ++k) {
    if (indices_[k - 1] >= indices_[k]) throw StructuralError("scheme indices must be strictly increasing");
  }
}

bool Scheme::contains(std::size_t coordinate) const {
  for (std::size_t i : indices_) {
    if (i == coordinate) return true;
    if (i > coordinate) return false;
  }
  return false;
}

std::string Scheme::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (k != 0) out += ',';
    out += std::to_string(indices_[k] + 1);
  }
  return out + ")";
}

std::uint64_t ProductElement::weight() const {
  std::uint64_t total = 0;
  for (const Bits& c : components_) total += c.count();
  return total;
}

Slice slice(const ProductElement& d, const Scheme& s) {
  if (!s.valid_for(d.arity())) throw StructuralError("scheme " + s.to_string() + " out of range for arity " + std::to_string(d.arity()));
  Slice out;
  out.reserve(s.size());
  for (std::size_t i : s.indices()) out.push_back(d[i]);
  return out;
}

void assign(ProductElement& d, const Scheme& s, Slice values) {
  if (!s.valid_for(d.arity())) throw StructuralError("scheme " + s.to_string() + " out of range for arity " + std::to_string(d.arity()));
  if (values.size() != s.size()) throw StructuralError("slice arity does not match scheme");
  for (std::size_t k = 0; k < s.size(); ++k) d[s[k]] = std::move(values[k]);
}

std::function<ProductElement(const ProductElement&)> canonic_extend(SchemeFn f, Scheme s, std::size_t arity) {
  if (!s.valid_for(arity)) throw StructuralError("scheme " + s.to_string() + " out of range for arity " + std::to_string(arity));
  return [f = std::move(f), s = std::move(s)](const ProductElement& d) {
    ProductElement e = d;
    assign(e, s, f(slice(d, s)));
    return e;
  };
}

bool leq(const ProductElement& a, const ProductElement& b) {
  if (a.arity() != b.arity()) throw StructuralError("arity mismatch in comparison");
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (a[i].size() != b[i].size()) throw StructuralError("base set mismatch at coordinate " + std::to_string(i + 1));
    if (!b[i].is_subset_of(a[i])) return false;
  }
  return true;
}

ProductElement bottom(const std::vector<std::size_t>& base_sizes) {
  std::vector<Bits> comps;
  comps.reserve(base_sizes.size());
  for (std::size_t n : base_sizes) comps.emplace_back(n, true);
  return ProductElement(std::move(comps));
}

}  // namespace conprop

namespace conprop {

ProductElement random_refinement(const ProductElement& top, std::mt19937_64& rng, double keep_probability) {
  std::bernoulli_distribution keep(keep_probability);
  std::vector<Bits> comps;
  comps.reserve(top.arity());
  for (const Bits& c : top.components()) {
    Bits r(c.size());
    c.for_each([&](std::size_t i) {
      if (keep(rng)) r.set(i);
    });
    comps.push_back(std::move(r));
  }
  return ProductElement(std::move(comps));
}

}  // namespace conprop
