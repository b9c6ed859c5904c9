#include "conprop/csp.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "conprop/errors.hpp"

namespace conprop {

ValueSet make_value_set(std::vector<Value> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

TupleSet make_tuple_set(std::vector<Tuple> tuples) {
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  return tuples;
}

bool contains(const ValueSet& set, Value v) { return std::binary_search(set.begin(), set.end(), v); }

std::size_t Csp::add_variable(std::string name, std::vector<Value> domain) {
  if (index_of(name)) throw StructuralError("duplicate variable '" + name + "'");
  names_.push_back(std::move(name));
  domains_.push_back(make_value_set(std::move(domain)));
  return names_.size() - 1;
}

std::size_t Csp::add_constraint(std::string name, const std::vector<std::size_t>& scope, std::vector<Tuple> tuples) {
  if (scope.empty()) throw StructuralError("constraint '" + name + "' has an empty scope");
  for (std::size_t v : scope) {
    if (v >= names_.size()) throw StructuralError("constraint '" + name + "' refers to an undeclared variable");
  }
  std::vector<std::size_t> perm(scope.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return scope[a] < scope[b]; });
  for (std::size_t k = 1; k < perm.size(); ++k) {
    if (scope[perm[k - 1]] == scope[perm[k]]) throw StructuralError("constraint '" + name + "' repeats variable '" + names_[scope[perm[k]]] + "'");
  }

  Constraint c;
  c.name = std::move(name);
  for (std::size_t k : perm) c.scope.push_back(scope[k]);
  std::vector<Tuple> permuted;
  permuted.reserve(tuples.size());
  for (const Tuple& t : tuples) {
    if (t.size() != scope.size()) throw StructuralError("constraint '" + c.name + "' has a tuple of the wrong arity");
    Tuple u(t.size());
    for (std::size_t k = 0; k < perm.size(); ++k) {
      const Value v = t[perm[k]];
      if (!contains(domains_[c.scope[k]], v)) {
        throw StructuralError("constraint '" + c.name + "' uses value " + std::to_string(v) + " outside the domain of '" + names_[c.scope[k]] + "'");
      }
      u[k] = v;
    }
    permuted.push_back(std::move(u));
  }
  c.tuples = make_tuple_set(std::move(permuted));
  constraints_.push_back(std::move(c));
  return constraints_.size() - 1;
}

std::size_t Csp::add_constraint(std::string name, const std::vector<std::string>& scope, std::vector<Tuple> tuples) {
  std::vector<std::size_t> idx;
  for (const auto& n : scope) {
    auto i = index_of(n);
    if (!i) throw StructuralError("undeclared variable '" + n + "'");
    idx.push_back(*i);
  }
  return add_constraint(std::move(name), idx, std::move(tuples));
}

std::optional<std::size_t> Csp::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

bool Csp::is_binary() const {
  return std::all_of(constraints_.begin(), constraints_.end(), [](const Constraint& c) { return c.arity() == 2; });
}

bool Csp::has_empty_domain() const {
  return std::any_of(domains_.begin(), domains_.end(), [](const ValueSet& d) { return d.empty(); });
}

Csp Csp::with_domains(std::vector<ValueSet> domains) const {
  if (domains.size() != domains_.size()) throw StructuralError("domain count mismatch");
  Csp out = *this;
  out.domains_ = std::move(domains);
  for (Constraint& c : out.constraints_) {
    std::erase_if(c.tuples, [&](const Tuple& t) {
      for (std::size_t k = 0; k < t.size(); ++k) {
        if (!contains(out.domains_[c.scope[k]], t[k])) return true;
      }
      return false;
    });
  }
  return out;
}

// ---------------------------------------------------------------------------

BinaryRelation BinaryRelation::from(std::vector<std::pair<Value, Value>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return BinaryRelation{std::move(pairs)};
}

BinaryRelation BinaryRelation::product(const ValueSet& a, const ValueSet& b) {
  BinaryRelation r;
  r.pairs.reserve(a.size() * b.size());
  for (Value x : a) {
    for (Value y : b) r.pairs.emplace_back(x, y);
  }
  return r;
}

bool BinaryRelation::contains(Value a, Value b) const { return std::binary_search(pairs.begin(), pairs.end(), std::pair{a, b}); }

BinaryRelation transpose(const BinaryRelation& r) {
  std::vector<std::pair<Value, Value>> out;
  out.reserve(r.pairs.size());
  for (const auto& [a, b] : r.pairs) out.emplace_back(b, a);
  return BinaryRelation::from(std::move(out));
}

BinaryRelation compose(const BinaryRelation& r, const BinaryRelation& s) {
  std::vector<std::pair<Value, Value>> out;
  for (const auto& [a, c] : r.pairs) {
    auto it = std::lower_bound(s.pairs.begin(), s.pairs.end(), std::pair{c, std::numeric_limits<Value>::min()});
    for (; it != s.pairs.end() && it->first == c; ++it) out.emplace_back(a, it->second);
  }
  return BinaryRelation::from(std::move(out));
}

BinaryRelation intersect(const BinaryRelation& r, const BinaryRelation& s) {
  BinaryRelation out;
  std::set_intersection(r.pairs.begin(), r.pairs.end(), s.pairs.begin(), s.pairs.end(), std::back_inserter(out.pairs));
  return out;
}

bool is_subset(const BinaryRelation& r, const BinaryRelation& s) {
  return std::includes(s.pairs.begin(), s.pairs.end(), r.pairs.begin(), r.pairs.end());
}

// ---------------------------------------------------------------------------

NormalizedCsp::NormalizedCsp(std::vector<std::string> names, std::vector<ValueSet> domains)
    : names_(std::move(names)), domains_(std::move(domains)) {
  if (names_.size() != domains_.size()) throw StructuralError("name/domain count mismatch");
  const std::size_t m = names_.size();
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = x + 1; y < m; ++y) relations_.push_back(BinaryRelation::product(domains_[x], domains_[y]));
  }
}

std::size_t NormalizedCsp::pair_index(std::size_t x, std::size_t y) const {
  const std::size_t m = names_.size();
  if (x >= y || y >= m) throw StructuralError("pair index requires x < y < m");
  return x * (2 * m - x - 1) / 2 + (y - x - 1);
}

std::pair<std::size_t, std::size_t> NormalizedCsp::pair_at(std::size_t index) const {
  const std::size_t m = names_.size();
  for (std::size_t x = 0; x + 1 < m; ++x) {
    const std::size_t row = m - x - 1;
    if (index < row) return {x, x + 1 + index};
    index -= row;
  }
  throw StructuralError("pair index out of range");
}

BinaryRelation NormalizedCsp::relation(std::size_t x, std::size_t y) const {
  if (x < y) return relations_[pair_index(x, y)];
  return transpose(relations_[pair_index(y, x)]);
}

void NormalizedCsp::set_relation(std::size_t x, std::size_t y, BinaryRelation r) {
  if (x > y) {
    set_relation(y, x, transpose(r));
    return;
  }
  for (const auto& [a, b] : r.pairs) {
    if (!contains(domains_[x], a) || !contains(domains_[y], b)) throw StructuralError("relation leaves D_x × D_y");
  }
  relations_[pair_index(x, y)] = std::move(r);
}

bool NormalizedCsp::has_empty_relation() const {
  return std::any_of(relations_.begin(), relations_.end(), [](const BinaryRelation& r) { return r.empty(); });
}

Csp NormalizedCsp::to_csp() const {
  Csp p;
  for (std::size_t v = 0; v < names_.size(); ++v) p.add_variable(names_[v], domains_[v]);
  for (std::size_t k = 0; k < relations_.size(); ++k) {
    const auto [x, y] = pair_at(k);
    std::vector<Tuple> tuples;
    for (const auto& [a, b] : relations_[k].pairs) tuples.push_back({a, b});
    p.add_constraint(names_[x] + "_" + names_[y], std::vector<std::size_t>{x, y}, std::move(tuples));
  }
  return p;
}

BinaryRelation relation_of(const Constraint& c) {
  if (c.arity() != 2) throw UnsupportedInput("constraint '" + c.name + "' is not binary");
  BinaryRelation r;
  r.pairs.reserve(c.tuples.size());
  for (const Tuple& t : c.tuples) r.pairs.emplace_back(t[0], t[1]);
  return r;  // tuples are already sorted
}

NormalizedCsp normalize(const Csp& p) {
  NormalizedCsp out(p.names(), p.domains());
  for (const Constraint& c : p.constraints()) {
    if (c.arity() != 2) throw UnsupportedInput("normalization needs binary constraints; '" + c.name + "' has arity " + std::to_string(c.arity()));
    const std::size_t x = c.scope[0];
    const std::size_t y = c.scope[1];
    out.set_relation(x, y, intersect(out.relation(x, y), relation_of(c)));
  }
  return out;
}

void check_permutation(const std::vector<std::size_t>& order, std::size_t n) {
  if (order.size() != n) throw StructuralError("order must list every variable exactly once");
  std::vector<char> seen(n, 0);
  for (std::size_t v : order) {
    if (v >= n || seen[v]) throw StructuralError("order is not a permutation of the variables");
    seen[v] = 1;
  }
}

std::vector<std::size_t> inverse_permutation(const std::vector<std::size_t>& order) {
  std::vector<std::size_t> inv(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) inv[order[k]] = k;
  return inv;
}

Csp reorder(const Csp& p, const std::vector<std::size_t>& order) {
  check_permutation(order, p.variable_count());
  const auto inv = inverse_permutation(order);
  Csp out;
  for (std::size_t v : order) out.add_variable(p.name(v), p.domain(v));
  for (const Constraint& c : p.constraints()) {
    std::vector<std::size_t> scope;
    for (std::size_t v : c.scope) scope.push_back(inv[v]);
    out.add_constraint(c.name, scope, std::vector<Tuple>(c.tuples.begin(), c.tuples.end()));
  }
  return out;
}

NormalizedCsp reorder(const NormalizedCsp& p, const std::vector<std::size_t>& order) {
  check_permutation(order, p.variable_count());
  std::vector<std::string> names;
  std::vector<ValueSet> domains;
  for (std::size_t v : order) {
    names.push_back(p.names()[v]);
    domains.push_back(p.domain(v));
  }
  NormalizedCsp out(std::move(names), std::move(domains));
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) out.set_relation(a, b, p.relation(order[a], order[b]));
  }
  return out;
}

std::vector<std::size_t> order_from_names(const std::vector<std::string>& all, const std::vector<std::string>& order) {
  std::vector<std::size_t> out;
  for (const auto& n : order) {
    auto it = std::find(all.begin(), all.end(), n);
    if (it == all.end()) throw StructuralError("order names unknown variable '" + n + "'");
    out.push_back(static_cast<std::size_t>(it - all.begin()));
  }
  check_permutation(out, all.size());
  return out;
}

}  // namespace conprop
