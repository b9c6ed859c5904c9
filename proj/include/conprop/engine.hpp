#pragma once

// Generic iteration over finite partial orderings.
//
//   gi_run  - the worklist algorithm on an abstract ordering
//   cd_run  - the same algorithm specialised to compound domains, with
//             functions that carry schemes and the dependence-based update
//   si_run  - one ordered pass over a semi-commuting list
//
// All three record an IterationTrace. verify_measure() replays the
// termination argument on a trace: every step must either strictly shrink
// the state or, with the state unchanged, strictly shrink the worklist.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "conprop/errors.hpp"
#include "conprop/order.hpp"

namespace conprop {

using FnIndex = std::size_t;

enum class UpdateVariant { Full, IdempotentFiltered, CommFiltered, Both };
enum class Selection { Fifo, Lifo };

const char* to_string(UpdateVariant v);

// comm[g] lists the functions known to commute with g. Sorted, g excluded.
using CommMap = std::vector<std::vector<FnIndex>>;

struct UpdatePolicy {
  UpdateVariant variant = UpdateVariant::Full;
  CommMap comm;

  bool drops_idempotent() const { return variant == UpdateVariant::IdempotentFiltered || variant == UpdateVariant::Both; }
  bool drops_comm() const { return variant == UpdateVariant::CommFiltered || variant == UpdateVariant::Both; }
};

// Function with a scheme. `apply` maps d[scheme] to its image; it must be
// inflationary (every output set is a subset of the input set).
struct PropagatorFn {
  std::string id;
  Scheme scheme;
  SchemeFn apply;
  bool idempotent = false;
  std::vector<std::string> tags;
};

// f⁺(d)
ProductElement apply_extended(const PropagatorFn& f, const ProductElement& d);

// True iff f semi-commutes with g at d: f⁺(g⁺(d)) ⊑ g⁺(f⁺(d)).
bool semi_commutes_at(const PropagatorFn& f, const PropagatorFn& g, const ProductElement& d);

// True iff f⁺(g⁺(d)) = g⁺(f⁺(d)).
bool commutes_at(const PropagatorFn& f, const PropagatorFn& g, const ProductElement& d);

// The set G: no duplicates, deterministic FIFO or LIFO selection.
class Worklist {
 public:
  explicit Worklist(std::size_t universe) : member_(universe, 0) {}

  bool push(FnIndex f);
  FnIndex pop(Selection selection);
  bool contains(FnIndex f) const { return member_[f] != 0; }
  bool empty() const { return order_.empty(); }
  std::size_t size() const { return order_.size(); }
  std::size_t universe() const { return member_.size(); }

 private:
  std::deque<FnIndex> order_;
  std::vector<char> member_;
};

struct TraceStep {
  std::size_t step = 0;
  FnIndex fn = 0;
  std::vector<std::size_t> changed;  // coordinates, 0-based
  std::vector<FnIndex> enqueued;
  std::size_t worklist_size = 0;     // after the step
  std::uint64_t weight = 0;          // after the step
};

struct IterationTrace {
  std::vector<std::string> fn_ids;
  std::size_t initial_worklist_size = 0;
  std::uint64_t initial_weight = 0;
  std::vector<TraceStep> steps;

  // Worklist insertions including the initial fill.
  std::size_t insertions() const;
  std::size_t applications() const { return steps.size(); }
  bool changed_anything() const;
};

// One tab-separated line per step:
//   step  fn-id  changed={i,...}  enqueued={id,...}  |G|=n
// Coordinates are rendered 1-based.
std::string render_trace(const IterationTrace& trace);

bool verify_measure(const IterationTrace& trace);

struct RunOptions {
  Selection selection = Selection::Fifo;
  std::size_t step_limit = 1'000'000;
  // Re-checks the loop invariant "every parked function is fixed at d" on
  // each iteration and samples inflationarity, monotonicity and idempotence
  // of every function before starting.
  bool debug_checks = false;
  std::uint64_t seed = 0x5eed;
  std::size_t samples = 8;
};

template <typename T>
struct IterationResult {
  T value;
  IterationTrace trace;
};

// ---------------------------------------------------------------------------
// GI on an abstract ordering

template <typename T>
struct OrderedFn {
  std::string id;
  std::function<T(const T&)> apply;
  bool idempotent = false;
};

template <typename T>
struct AbstractOrder {
  std::function<bool(const T&, const T&)> leq;
  // Any measure that strictly drops when the element strictly grows.
  std::function<std::uint64_t(const T&)> weight;
};

// Without schemes the Full policy is the minimal set satisfying A and B:
// { f ∈ F−G | f(d) = d and f(g(d)) ≠ g(d) }.
template <typename T>
IterationResult<T> gi_run(const std::vector<OrderedFn<T>>& fns, T bottom, const UpdatePolicy& policy,
                          const AbstractOrder<T>& order, const RunOptions& options = {}) {
  const std::size_t n = fns.size();
  if (policy.drops_comm() && policy.comm.size() != n) throw StructuralError("Comm map does not cover every function");

  IterationResult<T> result{std::move(bottom), {}};
  T& d = result.value;
  IterationTrace& trace = result.trace;
  for (const auto& f : fns) trace.fn_ids.push_back(f.id);

  Worklist work(n);
  for (FnIndex f = 0; f < n; ++f) work.push(f);
  trace.initial_worklist_size = work.size();
  trace.initial_weight = order.weight(d);

  std::vector<char> dropped(n, 0);
  std::size_t step = 0;
  while (!work.empty()) {
    if (step >= options.step_limit) throw StepLimitExceeded("step limit of " + std::to_string(options.step_limit) + " reached");
    if (options.debug_checks) {
      for (FnIndex f = 0; f < n; ++f) {
        if (!work.contains(f) && !(fns[f].apply(d) == d)) throw InvariantViolation("parked function " + fns[f].id + " is not fixed at d");
      }
    }
    const FnIndex g = work.pop(options.selection);
    T next = fns[g].apply(d);
    const bool changed = !(next == d);

    TraceStep rec;
    rec.step = ++step;
    rec.fn = g;
    if (changed) {
      if (!order.leq(d, next)) throw InvariantViolation("function " + fns[g].id + " is not inflationary");
      rec.changed.push_back(0);

      std::fill(dropped.begin(), dropped.end(), 0);
      if (policy.drops_idempotent() && fns[g].idempotent) dropped[g] = 1;
      if (policy.drops_comm()) {
        for (FnIndex c : policy.comm[g]) dropped[c] = 1;
      }
      for (FnIndex f = 0; f < n; ++f) {
        if (work.contains(f) || dropped[f]) continue;
        // g itself is re-added when it is not yet stable at g(d); assumption A
        // alone never forces this, since g(d) != d here.
        const bool was_fixed = f == g || fns[f].apply(d) == d;
        if (was_fixed && !(fns[f].apply(next) == next)) rec.enqueued.push_back(f);
      }
      for (FnIndex f : rec.enqueued) work.push(f);
      const std::uint64_t before = order.weight(d);
      d = std::move(next);
      if (order.weight(d) >= before) throw InvariantViolation("termination measure did not decrease after " + fns[g].id);
    }
    rec.worklist_size = work.size();
    rec.weight = order.weight(d);
    trace.steps.push_back(std::move(rec));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Compound domains

// For each coordinate, the functions whose scheme contains it (ascending).
class DependencyIndex {
 public:
  DependencyIndex(const std::vector<PropagatorFn>& fns, std::size_t arity);
  const std::vector<FnIndex>& dependents(std::size_t coordinate) const { return by_coordinate_[coordinate]; }

 private:
  std::vector<std::vector<FnIndex>> by_coordinate_;
};

// update(G, g, d) for g with scheme s, where `before` = d and `after` = g⁺(d),
// and G is the worklist after g was taken out of it. The Full variant is
// { f ∈ F−G | f depends on some i in s with before[i] ≠ after[i] }; the
// filtered variants remove g (when idempotent) and/or Comm(g).
std::vector<FnIndex> update_set(const Worklist& G, FnIndex g, const std::vector<PropagatorFn>& fns,
                                const ProductElement& before, const ProductElement& after, const UpdatePolicy& policy);

IterationResult<ProductElement> cd_run(const std::vector<PropagatorFn>& fns, ProductElement bottoms,
                                       const UpdatePolicy& policy, const RunOptions& options = {});

struct PropertyReport {
  bool inflationary = true;
  bool monotonic = true;
  bool idempotent = true;  // only checked when the function claims it
  std::string failure;

  bool ok() const { return inflationary && monotonic && idempotent; }
};

// Samples random states above `top` and checks the three properties.
PropertyReport sample_properties(const PropagatorFn& f, const ProductElement& top, std::size_t samples, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Simple iteration

struct SiOptions {
  // Spot-checks that each function semi-commutes with every later one on
  // random states. Failures become warnings; the ordering is the caller's
  // obligation.
  bool check_semi_commutation = false;
  std::size_t samples = 8;
  std::uint64_t seed = 0x5eed;
};

struct SiResult {
  ProductElement value;
  IterationTrace trace;
  std::vector<std::string> warnings;
};

// Applies the list head first, each function exactly once.
SiResult si_run(const std::vector<PropagatorFn>& list, ProductElement bottoms, const SiOptions& options = {});

}  // namespace conprop
