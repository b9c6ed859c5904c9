#pragma once

// CSP data model. Values are signed integers; every set is kept sorted and
// duplicate-free so that set equality is plain vector equality.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace conprop {

using Value = std::int64_t;
using ValueSet = std::vector<Value>;  // sorted, unique
using Tuple = std::vector<Value>;
using TupleSet = std::vector<Tuple>;  // sorted, unique

ValueSet make_value_set(std::vector<Value> values);
TupleSet make_tuple_set(std::vector<Tuple> tuples);
bool contains(const ValueSet& set, Value v);

// A constraint on a strictly increasing sequence of variable indices.
struct Constraint {
  std::string name;
  std::vector<std::size_t> scope;
  TupleSet tuples;

  std::size_t arity() const { return scope.size(); }
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

class Csp {
 public:
  std::size_t add_variable(std::string name, std::vector<Value> domain);

  // `scope` may list the variables in any order; the constraint is stored
  // with its scope sorted and every tuple permuted to match. Tuples must
  // draw their values from the variables' current domains.
  std::size_t add_constraint(std::string name, const std::vector<std::size_t>& scope, std::vector<Tuple> tuples);
  std::size_t add_constraint(std::string name, const std::vector<std::string>& scope, std::vector<Tuple> tuples);

  std::size_t variable_count() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t v) const { return names_[v]; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  const std::vector<ValueSet>& domains() const { return domains_; }
  const ValueSet& domain(std::size_t v) const { return domains_[v]; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  bool is_binary() const;
  bool has_empty_domain() const;

  // Same variables and constraints with the given domains; every constraint
  // is restricted to tuples inside the new domains.
  Csp with_domains(std::vector<ValueSet> domains) const;

  friend bool operator==(const Csp&, const Csp&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<ValueSet> domains_;
  std::vector<Constraint> constraints_;
};

// ---------------------------------------------------------------------------
// Binary relations

struct BinaryRelation {
  std::vector<std::pair<Value, Value>> pairs;  // sorted, unique

  static BinaryRelation from(std::vector<std::pair<Value, Value>> pairs);
  static BinaryRelation product(const ValueSet& a, const ValueSet& b);
  bool contains(Value a, Value b) const;
  bool empty() const { return pairs.empty(); }
  std::size_t size() const { return pairs.size(); }

  friend bool operator==(const BinaryRelation&, const BinaryRelation&) = default;
};

BinaryRelation transpose(const BinaryRelation& r);
BinaryRelation compose(const BinaryRelation& r, const BinaryRelation& s);
BinaryRelation intersect(const BinaryRelation& r, const BinaryRelation& s);
bool is_subset(const BinaryRelation& r, const BinaryRelation& s);

// ---------------------------------------------------------------------------
// Normalized CSPs: binary only, exactly one relation C_{x,y} per pair x < y.

class NormalizedCsp {
 public:
  NormalizedCsp() = default;
  // Every pair starts out as the universal relation D_x × D_y.
  NormalizedCsp(std::vector<std::string> names, std::vector<ValueSet> domains);

  std::size_t variable_count() const { return names_.size(); }
  std::size_t pair_count() const { return relations_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<ValueSet>& domains() const { return domains_; }
  const ValueSet& domain(std::size_t v) const { return domains_[v]; }

  // Position of C_{x,y} (x < y) in the pair sequence: row-major over the
  // upper triangle, so (0,1), (0,2), ..., (1,2), ...
  std::size_t pair_index(std::size_t x, std::size_t y) const;
  std::pair<std::size_t, std::size_t> pair_at(std::size_t index) const;

  // C_{x,y} for x < y; for x > y the transpose of C_{y,x}.
  BinaryRelation relation(std::size_t x, std::size_t y) const;
  const BinaryRelation& relation_at(std::size_t index) const { return relations_[index]; }
  const std::vector<BinaryRelation>& relations() const { return relations_; }

  // Replaces C_{x,y}; x > y stores the transpose. The relation must lie
  // within D_x × D_y.
  void set_relation(std::size_t x, std::size_t y, BinaryRelation r);

  bool has_empty_relation() const;
  Csp to_csp() const;

  friend bool operator==(const NormalizedCsp&, const NormalizedCsp&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<ValueSet> domains_;
  std::vector<BinaryRelation> relations_;
};

// Relation of a binary constraint, oriented along its (sorted) scope.
BinaryRelation relation_of(const Constraint& c);

// Intersects all constraints on each pair (folding in transposes) and
// fills unconstrained pairs with the universal relation. Throws
// UnsupportedInput for any constraint that is not binary.
NormalizedCsp normalize(const Csp& p);

// `order[k]` is the index (in p) of the variable placed k-th. Constraints are
// rewritten so their scopes are increasing in the new order.
Csp reorder(const Csp& p, const std::vector<std::size_t>& order);
NormalizedCsp reorder(const NormalizedCsp& p, const std::vector<std::size_t>& order);

// Throws StructuralError unless `order` is a permutation of [0, n).
void check_permutation(const std::vector<std::size_t>& order, std::size_t n);
std::vector<std::size_t> inverse_permutation(const std::vector<std::size_t>& order);

// Resolves a list of names to a permutation of p's variables.
std::vector<std::size_t> order_from_names(const std::vector<std::string>& all, const std::vector<std::string>& order);

}  // namespace conprop
