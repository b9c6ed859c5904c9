#include "conprop/algorithms.hpp"

#include <algorithm>

#include "conprop/errors.hpp"

namespace conprop {

namespace {

UpdatePolicy arc_policy(const Csp& p, const std::vector<ProjectionFn>& fns, UpdateVariant variant, CommVariant comm) {
  UpdatePolicy policy{variant, {}};
  if (policy.drops_comm()) policy.comm = comm_map_arc(p, fns, comm);
  return policy;
}

AlgorithmResult<Csp> run_arc(const Csp& p, const std::vector<ProjectionFn>& fns, const UpdatePolicy& policy, const RunOptions& run) {
  const DomainEncoding enc(p);
  auto result = cd_run(make_projection_propagators(p, fns), enc.bottom(), policy, run);
  AlgorithmResult<Csp> out{p.with_domains(enc.decode(result.value)), std::move(result.trace), true};
  out.consistent_hint = !out.csp.has_empty_domain();
  return out;
}

AlgorithmResult<NormalizedCsp> run_path(const NormalizedCsp& p, UpdateVariant variant, const RunOptions& run) {
  const std::vector<PathFn> fns = all_path_fns(p.variable_count());
  UpdatePolicy policy{variant, {}};
  if (policy.drops_comm()) policy.comm = comm_map_path(fns, p.variable_count());
  const RelationEncoding enc(p);
  auto result = cd_run(make_path_propagators(p, fns), enc.bottom(p), policy, run);

  NormalizedCsp reduced = p;
  const auto relations = enc.decode(result.value);
  for (std::size_t k = 0; k < relations.size(); ++k) {
    const auto [x, y] = p.pair_at(k);
    reduced.set_relation(x, y, relations[k]);
  }
  AlgorithmResult<NormalizedCsp> out{std::move(reduced), std::move(result.trace), true};
  out.consistent_hint = !out.csp.has_empty_relation();
  return out;
}

// Maps domains of a reordered CSP back to the original variable positions.
std::vector<ValueSet> unorder(const std::vector<ValueSet>& ordered, const VariableOrder& order) {
  std::vector<ValueSet> out(ordered.size());
  for (std::size_t k = 0; k < order.size(); ++k) out[order[k]] = ordered[k];
  return out;
}

NormalizedCsp unorder(const NormalizedCsp& ordered, const NormalizedCsp& original, const VariableOrder& order) {
  NormalizedCsp out = original;
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) out.set_relation(order[a], order[b], ordered.relation(a, b));
  }
  return out;
}

}  // namespace

AlgorithmResult<Csp> hyper_arc(const Csp& p, const AlgorithmOptions& options) {
  const auto fns = all_projections(p);
  return run_arc(p, fns, arc_policy(p, fns, options.policy.value_or(UpdateVariant::IdempotentFiltered), CommVariant::Standard), options.run);
}

AlgorithmResult<Csp> ac3(const Csp& p, const AlgorithmOptions& options) {
  if (!p.is_binary()) throw UnsupportedInput("AC-3 handles binary constraints only");
  const auto fns = arc_projections(p);
  const CommVariant comm = at_most_one_constraint_per_pair(p) ? CommVariant::Standard : CommVariant::Modified;
  return run_arc(p, fns, arc_policy(p, fns, options.policy.value_or(UpdateVariant::Both), comm), options.run);
}

AlgorithmResult<NormalizedCsp> path(const NormalizedCsp& p, const AlgorithmOptions& options) {
  return run_path(p, options.policy.value_or(UpdateVariant::IdempotentFiltered), options.run);
}

AlgorithmResult<NormalizedCsp> pc2(const NormalizedCsp& p, const AlgorithmOptions& options) {
  return run_path(p, options.policy.value_or(UpdateVariant::Both), options.run);
}

std::vector<ProjectionFn> darc_list(const Csp& ordered) {
  std::vector<ProjectionFn> out;
  for (std::size_t c = 0; c < ordered.constraints().size(); ++c) {
    if (ordered.constraints()[c].arity() == 2) out.push_back({c, 0});
  }
  std::stable_sort(out.begin(), out.end(), [&](const ProjectionFn& a, const ProjectionFn& b) {
    const auto& sa = ordered.constraints()[a.constraint].scope;
    const auto& sb = ordered.constraints()[b.constraint].scope;
    if (sa[1] != sb[1]) return sa[1] > sb[1];
    return sa[0] < sb[0];
  });
  return out;
}

std::vector<PathFn> dpath_list(std::size_t m) {
  std::vector<PathFn> out;
  for (std::size_t z = m; z-- > 2;) {
    for (std::size_t x = 0; x < z; ++x) {
      for (std::size_t y = x + 1; y < z; ++y) out.push_back({x, y, z, PathTarget::XY});
    }
  }
  return out;
}

AlgorithmResult<Csp> darc(const Csp& p, const VariableOrder& order, const SiOptions& options) {
  const Csp ordered = reorder(p, order);
  const DomainEncoding enc(ordered);
  auto result = si_run(make_projection_propagators(ordered, darc_list(ordered)), enc.bottom(), options);
  AlgorithmResult<Csp> out{p.with_domains(unorder(enc.decode(result.value), order)), std::move(result.trace), true};
  out.consistent_hint = !out.csp.has_empty_domain();
  return out;
}

AlgorithmResult<Csp> dac(const Csp& p, const VariableOrder& order) {
  if (!p.is_binary()) throw UnsupportedInput("DAC handles binary constraints only");
  const std::size_t n = p.variable_count();
  std::vector<std::size_t> per_pair(n * n, 0);
  for (const Constraint& c : p.constraints()) ++per_pair[c.scope[0] * n + c.scope[1]];
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (per_pair[x * n + y] != 1) {
        throw UnsupportedInput("DAC needs exactly one constraint on each variable pair; (" + p.name(x) + "," + p.name(y) + ") has " +
                               std::to_string(per_pair[x * n + y]));
      }
    }
  }

  const Csp ordered = reorder(p, order);
  std::vector<ValueSet> d = ordered.domains();
  // for j := n to 2, for i := 1 to j-1: D_i := {a ∈ D_i | ∃ b ∈ D_j (a,b) ∈ C_{i,j}}
  std::vector<BinaryRelation> rel(n * n);
  for (const Constraint& c : ordered.constraints()) rel[c.scope[0] * n + c.scope[1]] = relation_of(c);
  for (std::size_t j = n; j-- > 1;) {
    for (std::size_t i = 0; i < j; ++i) d[i] = project_binary(rel[i * n + j], Side::First, d[i], d[j]).first;
  }
  AlgorithmResult<Csp> out{p.with_domains(unorder(d, order)), {}, true};
  out.consistent_hint = !out.csp.has_empty_domain();
  return out;
}

AlgorithmResult<NormalizedCsp> dpath(const NormalizedCsp& p, const VariableOrder& order, const SiOptions& options) {
  const NormalizedCsp ordered = reorder(p, order);
  const RelationEncoding enc(ordered);
  auto result = si_run(make_path_propagators(ordered, dpath_list(ordered.variable_count())), enc.bottom(ordered), options);
  NormalizedCsp reduced = ordered;
  const auto relations = enc.decode(result.value);
  for (std::size_t k = 0; k < relations.size(); ++k) {
    const auto [x, y] = ordered.pair_at(k);
    reduced.set_relation(x, y, relations[k]);
  }
  AlgorithmResult<NormalizedCsp> out{unorder(reduced, p, order), std::move(result.trace), true};
  out.consistent_hint = !out.csp.has_empty_relation();
  return out;
}

AlgorithmResult<NormalizedCsp> dpc(const NormalizedCsp& p, const VariableOrder& order) {
  NormalizedCsp c = reorder(p, order);
  const std::size_t n = c.variable_count();
  // for m := n to 3, j := 1 to m-1, i := 1 to j-1:
  //   C_{i,j} := C_{i,j} ∩ C_{i,m} · Cᵀ_{j,m}
  for (std::size_t m = n; m-- > 2;) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        c.set_relation(i, j, intersect(c.relation(i, j), compose(c.relation(i, m), transpose(c.relation(j, m)))));
      }
    }
  }
  AlgorithmResult<NormalizedCsp> out{unorder(c, p, order), {}, true};
  out.consistent_hint = !out.csp.has_empty_relation();
  return out;
}

}  // namespace conprop
