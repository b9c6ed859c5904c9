#pragma once

// The consistency algorithms, each an instance of the generic engine:
//
//   hyper_arc  CD with idempotent filtering over all projections
//   ac3        CD with idempotent + Comm filtering over π_1 of C and Cᵀ
//   path       CD with idempotent filtering over all path functions
//   pc2        CD with idempotent + Comm filtering over the same functions
//   darc       SI over π_1 functions, ordered along a variable order
//   dpath      SI over f^z_{x,y} functions, ordered along a variable order
//
// dac and dpc are the classical loop nests, written directly over sets and
// relations without the engine; they are cross-checked against darc/dpath.

#include <optional>
#include <vector>

#include "conprop/csp.hpp"
#include "conprop/engine.hpp"
#include "conprop/propagators.hpp"

namespace conprop {

template <typename Problem>
struct AlgorithmResult {
  Problem csp;
  IterationTrace trace;
  // false once any domain or relation is empty
  bool consistent_hint = true;
};

struct AlgorithmOptions {
  RunOptions run;
  // Overrides the algorithm's default update policy (engine-based
  // algorithms only). Comm maps are built to match the algorithm.
  std::optional<UpdateVariant> policy;
};

// `order[k]` is the index of the variable placed k-th.
using VariableOrder = std::vector<std::size_t>;

AlgorithmResult<Csp> hyper_arc(const Csp& p, const AlgorithmOptions& options = {});
AlgorithmResult<Csp> ac3(const Csp& p, const AlgorithmOptions& options = {});
AlgorithmResult<NormalizedCsp> path(const NormalizedCsp& p, const AlgorithmOptions& options = {});
AlgorithmResult<NormalizedCsp> pc2(const NormalizedCsp& p, const AlgorithmOptions& options = {});

AlgorithmResult<Csp> darc(const Csp& p, const VariableOrder& order, const SiOptions& options = {});
AlgorithmResult<Csp> dac(const Csp& p, const VariableOrder& order);
AlgorithmResult<NormalizedCsp> dpath(const NormalizedCsp& p, const VariableOrder& order, const SiOptions& options = {});
AlgorithmResult<NormalizedCsp> dpc(const NormalizedCsp& p, const VariableOrder& order);

// The π_1 functions of the binary constraints of an already reordered CSP,
// grouped by their second variable from last to first; inside a group,
// ordered by first variable, then by constraint position.
std::vector<ProjectionFn> darc_list(const Csp& ordered);

// f^{x_m}_{x_i,x_j} for m = n..3, each group ordered lexicographically by (i, j).
std::vector<PathFn> dpath_list(std::size_t m);

}  // namespace conprop
