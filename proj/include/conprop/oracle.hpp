#pragma once

// Brute-force ground truth. Nothing here touches the engine, the bit
// encodings or the propagator module: states are std::set based and every
// function is the textbook set comprehension, evaluated by enumeration.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "conprop/csp.hpp"
#include "conprop/errors.hpp"

namespace conprop::oracle {

using Assignment = std::vector<Value>;
using SolutionSet = std::vector<Assignment>;  // lexicographic

SolutionSet enumerate_solutions(const Csp& p, std::uint64_t cap = 1'000'000);
SolutionSet enumerate_solutions(const NormalizedCsp& p, std::uint64_t cap = 1'000'000);

template <typename State>
using NaiveFn = std::function<State(const State&)>;

// Applies the functions cyclically until a full cycle changes nothing.
template <typename State>
State roundrobin_fixpoint(const std::vector<NaiveFn<State>>& fns, State d, std::size_t step_cap = 10'000'000) {
  std::size_t steps = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& f : fns) {
      if (++steps > step_cap) throw ResourceError("round-robin oracle exceeded its step cap");
      State next = f(d);
      if (!(next == d)) {
        d = std::move(next);
        changed = true;
      }
    }
  }
  return d;
}

using DomainState = std::vector<std::set<Value>>;
using PairKey = std::pair<std::size_t, std::size_t>;  // x < y
using RelationState = std::map<PairKey, std::set<std::pair<Value, Value>>>;

DomainState domain_state(const Csp& p);
std::vector<ValueSet> to_domains(const DomainState& s);
RelationState relation_state(const NormalizedCsp& p);
std::vector<BinaryRelation> to_relations(const RelationState& s);

// π_i of every constraint.
std::vector<NaiveFn<DomainState>> projections(const Csp& p);
// For every binary constraint, the projection onto whichever of its two
// variables comes first in `order` (order[k] = variable placed k-th).
std::vector<NaiveFn<DomainState>> directional_projections(const Csp& p, const std::vector<std::size_t>& order);
// All three path functions of every variable triple.
std::vector<NaiveFn<RelationState>> path_functions(const NormalizedCsp& p);
// For every triple, the function narrowing the pair of the two variables
// that come first in `order` through the last one.
std::vector<NaiveFn<RelationState>> directional_path_functions(const NormalizedCsp& p, const std::vector<std::size_t>& order);

std::vector<ValueSet> hyper_arc_closure(const Csp& p);
std::vector<ValueSet> dir_arc_closure(const Csp& p, const std::vector<std::size_t>& order);
std::vector<BinaryRelation> path_closure(const NormalizedCsp& p);
std::vector<BinaryRelation> dir_path_closure(const NormalizedCsp& p, const std::vector<std::size_t>& order);

bool is_hyper_arc_consistent(const Csp& p);
bool is_path_consistent(const NormalizedCsp& p);
bool is_dir_arc_consistent(const Csp& p, const std::vector<std::size_t>& order);
bool is_dir_path_consistent(const NormalizedCsp& p, const std::vector<std::size_t>& order);

}  // namespace conprop::oracle
