#pragma once

// Hand-rolled random instance generators shared by the property tests and
// the acceptance runner. Everything is driven by an explicit mt19937_64 so
// failures reproduce from the seed alone.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "conprop/csp.hpp"

namespace conprop::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

struct CspShape {
  std::size_t min_vars = 2, max_vars = 4;
  std::size_t min_domain = 2, max_domain = 4;
  double min_density = 0.3, max_density = 0.8;
  std::size_t max_constraints = 6;
  bool allow_same_pair = true;  // several constraints on one pair
  std::size_t max_arity = 2;
};

// Domain of `size` distinct values drawn from a small window, so relations
// between different variables mix overlapping and disjoint values.
inline std::vector<Value> random_domain(Rng& rng, std::size_t size) {
  std::vector<Value> pool(size + 3);
  std::iota(pool.begin(), pool.end(), Value{-1});
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(size);
  std::sort(pool.begin(), pool.end());
  return pool;
}

inline std::vector<Tuple> random_tuples(Rng& rng, const Csp& p, const std::vector<std::size_t>& scope, double density) {
  std::vector<Tuple> out;
  Tuple t(scope.size());
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == scope.size()) {
      if (coin(rng, density)) out.push_back(t);
      return;
    }
    for (Value v : p.domain(scope[k])) {
      t[k] = v;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
  return out;
}

inline Csp random_csp(Rng& rng, const CspShape& shape = {}) {
  Csp p;
  const std::size_t n = uniform(rng, shape.min_vars, shape.max_vars);
  for (std::size_t v = 0; v < n; ++v) p.add_variable("v" + std::to_string(v), random_domain(rng, uniform(rng, shape.min_domain, shape.max_domain)));
  const std::size_t count = uniform(rng, 1, shape.max_constraints);
  std::vector<std::pair<std::size_t, std::size_t>> used;
  for (std::size_t c = 0; c < count; ++c) {
    const std::size_t arity = std::min(n, uniform(rng, 2, std::max<std::size_t>(2, shape.max_arity)));
    std::vector<std::size_t> vars(n);
    std::iota(vars.begin(), vars.end(), 0);
    std::shuffle(vars.begin(), vars.end(), rng);
    vars.resize(arity);
    if (arity == 2 && !shape.allow_same_pair) {
      auto key = std::minmax(vars[0], vars[1]);
      if (std::find(used.begin(), used.end(), std::pair(key.first, key.second)) != used.end()) continue;
      used.emplace_back(key.first, key.second);
    }
    const double density = uniform_real(rng, shape.min_density, shape.max_density);
    // Scope order is deliberately left shuffled: add_constraint canonicalises.
    p.add_constraint("c" + std::to_string(c), vars, random_tuples(rng, p, vars, density));
  }
  return p;
}

inline Csp random_binary_csp(Rng& rng, CspShape shape = {}) {
  shape.max_arity = 2;
  return random_csp(rng, shape);
}

// A binary CSP with exactly one constraint on every variable pair; absent
// pairs carry the universal relation.
inline Csp complete_binary_csp(Rng& rng, CspShape shape = {}) {
  shape.max_arity = 2;
  shape.allow_same_pair = false;
  Csp sparse = random_csp(rng, shape);
  return normalize(sparse).to_csp();
}

inline NormalizedCsp random_normalized(Rng& rng, CspShape shape = {}) {
  shape.max_arity = 2;
  return normalize(random_csp(rng, shape));
}

inline std::vector<std::size_t> random_order(Rng& rng, std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

// x, y in {1,2,3}, x < y.
inline Csp example_lt() {
  Csp p;
  p.add_variable("x", {1, 2, 3});
  p.add_variable("y", {1, 2, 3});
  p.add_constraint("lt", std::vector<std::string>{"x", "y"}, {{1, 2}, {1, 3}, {2, 3}});
  return p;
}

// x < y, y < z on {1,2,3}.
inline Csp example_chain() {
  Csp p;
  for (const char* v : {"x", "y", "z"}) p.add_variable(v, {1, 2, 3});
  p.add_constraint("xy", std::vector<std::string>{"x", "y"}, {{1, 2}, {1, 3}, {2, 3}});
  p.add_constraint("yz", std::vector<std::string>{"y", "z"}, {{1, 2}, {1, 3}, {2, 3}});
  return p;
}

// Three booleans, pairwise different: arc consistent but not path consistent.
inline Csp example_triangle() {
  Csp p;
  for (const char* v : {"x", "y", "z"}) p.add_variable(v, {0, 1});
  const std::vector<Tuple> ne{{0, 1}, {1, 0}};
  p.add_constraint("xy", std::vector<std::string>{"x", "y"}, ne);
  p.add_constraint("xz", std::vector<std::string>{"x", "z"}, ne);
  p.add_constraint("yz", std::vector<std::string>{"y", "z"}, ne);
  return p;
}

}  // namespace conprop::testing
