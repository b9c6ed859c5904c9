#include "conprop/engine.hpp"

#include <sstream>

namespace conprop {

const char* to_string(UpdateVariant v) {
  switch (v) {
    case UpdateVariant::Full: return "full";
    case UpdateVariant::IdempotentFiltered: return "idem";
    case UpdateVariant::CommFiltered: return "comm";
    case UpdateVariant::Both: return "both";
  }
  return "?";
}

ProductElement apply_extended(const PropagatorFn& f, const ProductElement& d) {
  ProductElement e = d;
  assign(e, f.scheme, f.apply(slice(d, f.scheme)));
  return e;
}

bool semi_commutes_at(const PropagatorFn& f, const PropagatorFn& g, const ProductElement& d) {
  return leq(apply_extended(f, apply_extended(g, d)), apply_extended(g, apply_extended(f, d)));
}

bool commutes_at(const PropagatorFn& f, const PropagatorFn& g, const ProductElement& d) {
  return apply_extended(f, apply_extended(g, d)) == apply_extended(g, apply_extended(f, d));
}

bool Worklist::push(FnIndex f) {
  if (member_[f]) return false;
  member_[f] = 1;
  order_.push_back(f);
  return true;
}

FnIndex Worklist::pop(Selection selection) {
  FnIndex f;
  if (selection == Selection::Fifo) {
    f = order_.front();
    order_.pop_front();
  } else {
    f = order_.back();
    order_.pop_back();
  }
  member_[f] = 0;
  return f;
}

std::size_t IterationTrace::insertions() const {
  std::size_t total = initial_worklist_size;
  for (const auto& s : steps) total += s.enqueued.size();
  return total;
}

bool IterationTrace::changed_anything() const {
  return std::any_of(steps.begin(), steps.end(), [](const TraceStep& s) { return !s.changed.empty(); });
}

std::string render_trace(const IterationTrace& trace) {
  std::ostringstream out;
  for (const auto& s : trace.steps) {
    out << s.step << '\t' << (s.fn < trace.fn_ids.size() ? trace.fn_ids[s.fn] : std::to_string(s.fn)) << "\tchanged={";
    for (std::size_t k = 0; k < s.changed.size(); ++k) out << (k ? "," : "") << s.changed[k] + 1;
    out << "}\tenqueued={";
    for (std::size_t k = 0; k < s.enqueued.size(); ++k) {
      const FnIndex f = s.enqueued[k];
      out << (k ? "," : "") << (f < trace.fn_ids.size() ? trace.fn_ids[f] : std::to_string(f));
    }
    out << "}\t|G|=" << s.worklist_size << '\n';
  }
  return out.str();
}

bool verify_measure(const IterationTrace& trace) {
  std::uint64_t weight = trace.initial_weight;
  std::size_t size = trace.initial_worklist_size;
  for (const auto& s : trace.steps) {
    if (s.changed.empty()) {
      // d unchanged: the state must be identical and card G must drop.
      if (s.weight != weight || s.worklist_size >= size) return false;
    } else if (s.weight >= weight) {
      return false;
    }
    weight = s.weight;
    size = s.worklist_size;
  }
  return true;
}

DependencyIndex::DependencyIndex(const std::vector<PropagatorFn>& fns, std::size_t arity) : by_coordinate_(arity) {
  for (FnIndex f = 0; f < fns.size(); ++f) {
    if (!fns[f].scheme.valid_for(arity)) {
      throw StructuralError("function " + fns[f].id + " has scheme " + fns[f].scheme.to_string() + " outside arity " + std::to_string(arity));
    }
    for (std::size_t i : fns[f].scheme.indices()) by_coordinate_[i].push_back(f);
  }
}

namespace {

// Shared by update_set and the cd_run loop. `mark` is scratch of size |F|.
void collect_updates(const DependencyIndex& deps, const Worklist& G, FnIndex g, const PropagatorFn& gfn,
                     const std::vector<std::size_t>& changed, const UpdatePolicy& policy, std::vector<char>& mark,
                     std::vector<FnIndex>& out) {
  out.clear();
  if (changed.empty()) return;
  for (std::size_t i : changed) {
    for (FnIndex f : deps.dependents(i)) {
      if (!mark[f] && !G.contains(f)) {
        mark[f] = 1;
        out.push_back(f);
      }
    }
  }
  std::sort(out.begin(), out.end());
  for (FnIndex f : out) mark[f] = 0;

  if (policy.drops_idempotent() && gfn.idempotent) std::erase(out, g);
  if (policy.drops_comm()) {
    const auto& comm = policy.comm[g];
    std::erase_if(out, [&](FnIndex f) { return std::binary_search(comm.begin(), comm.end(), f); });
  }
}

void check_comm(const UpdatePolicy& policy, std::size_t n) {
  if (!policy.drops_comm()) return;
  if (policy.comm.size() != n) throw StructuralError("Comm map does not cover every function");
  for (FnIndex g = 0; g < n; ++g) {
    const auto& c = policy.comm[g];
    if (!std::is_sorted(c.begin(), c.end())) throw StructuralError("Comm sets must be sorted");
    if (std::binary_search(c.begin(), c.end(), g)) throw StructuralError("g must not belong to Comm(g)");
  }
}

}  // namespace

std::vector<FnIndex> update_set(const Worklist& G, FnIndex g, const std::vector<PropagatorFn>& fns,
                                const ProductElement& before, const ProductElement& after, const UpdatePolicy& policy) {
  check_comm(policy, fns.size());
  if (before.arity() != after.arity()) throw StructuralError("arity mismatch in update_set");
  const DependencyIndex deps(fns, before.arity());
  std::vector<std::size_t> changed;
  for (std::size_t i : fns[g].scheme.indices()) {
    if (!(before[i] == after[i])) changed.push_back(i);
  }
  std::vector<char> mark(fns.size(), 0);
  std::vector<FnIndex> out;
  collect_updates(deps, G, g, fns[g], changed, policy, mark, out);
  return out;
}

PropertyReport sample_properties(const PropagatorFn& f, const ProductElement& top, std::size_t samples, std::mt19937_64& rng) {
  PropertyReport report;
  auto fail = [&](bool& flag, const std::string& what) {
    flag = false;
    if (report.failure.empty()) report.failure = f.id + ": " + what;
  };
  for (std::size_t k = 0; k < samples; ++k) {
    const ProductElement x = random_refinement(top, rng, 0.8);
    const ProductElement y = random_refinement(x, rng, 0.8);  // x ⊑ y
    const ProductElement fx = apply_extended(f, x);
    const ProductElement fy = apply_extended(f, y);
    if (!leq(x, fx)) fail(report.inflationary, "not inflationary");
    if (!leq(fx, fy)) fail(report.monotonic, "not monotonic");
    if (f.idempotent && !(apply_extended(f, fx) == fx)) fail(report.idempotent, "not idempotent");
  }
  return report;
}

IterationResult<ProductElement> cd_run(const std::vector<PropagatorFn>& fns, ProductElement bottoms,
                                       const UpdatePolicy& policy, const RunOptions& options) {
  const std::size_t n = fns.size();
  check_comm(policy, n);
  const DependencyIndex deps(fns, bottoms.arity());

  IterationResult<ProductElement> result{std::move(bottoms), {}};
  ProductElement& d = result.value;
  IterationTrace& trace = result.trace;
  for (const auto& f : fns) trace.fn_ids.push_back(f.id);

  if (options.debug_checks) {
    std::mt19937_64 rng(options.seed);
    for (const auto& f : fns) {
      const PropertyReport r = sample_properties(f, d, options.samples, rng);
      if (!r.ok()) throw InvariantViolation(r.failure);
    }
  }

  Worklist work(n);
  for (FnIndex f = 0; f < n; ++f) work.push(f);
  trace.initial_worklist_size = work.size();
  std::uint64_t weight = d.weight();
  trace.initial_weight = weight;

  std::vector<char> mark(n, 0);
  std::vector<std::size_t> changed;
  std::size_t step = 0;
  while (!work.empty()) {
    if (step >= options.step_limit) throw StepLimitExceeded("step limit of " + std::to_string(options.step_limit) + " reached");
    if (options.debug_checks) {
      for (FnIndex f = 0; f < n; ++f) {
        if (!work.contains(f) && !(apply_extended(fns[f], d) == d)) throw InvariantViolation("parked function " + fns[f].id + " is not fixed at d");
      }
    }
    const FnIndex g = work.pop(options.selection);
    const PropagatorFn& gfn = fns[g];
    const Scheme& s = gfn.scheme;

    Slice in = slice(d, s);
    Slice out = gfn.apply(in);
    if (out.size() != in.size()) throw InvariantViolation("function " + gfn.id + " changed the slice arity");

    changed.clear();
    std::uint64_t dropped_weight = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (out[k].size() != in[k].size()) throw InvariantViolation("function " + gfn.id + " changed a base set");
      if (out[k] == in[k]) continue;
      if (!out[k].is_subset_of(in[k])) throw InvariantViolation("function " + gfn.id + " is not inflationary");
      dropped_weight += in[k].count() - out[k].count();
      changed.push_back(s[k]);
    }

    TraceStep rec;
    rec.step = ++step;
    rec.fn = g;
    rec.changed = changed;
    collect_updates(deps, work, g, gfn, changed, policy, mark, rec.enqueued);
    for (FnIndex f : rec.enqueued) work.push(f);
    assign(d, s, std::move(out));
    weight -= dropped_weight;
    rec.worklist_size = work.size();
    rec.weight = weight;
    trace.steps.push_back(std::move(rec));
  }
  return result;
}

SiResult si_run(const std::vector<PropagatorFn>& list, ProductElement bottoms, const SiOptions& options) {
  SiResult result{std::move(bottoms), {}, {}};
  ProductElement& d = result.value;
  IterationTrace& trace = result.trace;
  for (const auto& f : list) {
    if (!f.scheme.valid_for(d.arity())) throw StructuralError("function " + f.id + " has scheme outside arity");
    trace.fn_ids.push_back(f.id);
  }

  if (options.check_semi_commutation && list.size() > 1) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, list.size() - 1);
    for (std::size_t k = 0; k < options.samples; ++k) {
      std::size_t a = pick(rng);
      std::size_t b = pick(rng);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      const ProductElement x = random_refinement(d, rng, 0.7);
      if (!semi_commutes_at(list[a], list[b], x)) {
        result.warnings.push_back(list[a].id + " does not semi-commute with later " + list[b].id);
      }
    }
  }

  trace.initial_worklist_size = list.size();
  std::uint64_t weight = d.weight();
  trace.initial_weight = weight;
  std::size_t remaining = list.size();
  for (FnIndex k = 0; k < list.size(); ++k) {
    const PropagatorFn& g = list[k];
    Slice in = slice(d, g.scheme);
    Slice out = g.apply(in);
    if (out.size() != in.size()) throw InvariantViolation("function " + g.id + " changed the slice arity");
    TraceStep rec;
    rec.step = k + 1;
    rec.fn = k;
    for (std::size_t j = 0; j < in.size(); ++j) {
      if (out[j] == in[j]) continue;
      if (!out[j].is_subset_of(in[j])) throw InvariantViolation("function " + g.id + " is not inflationary");
      weight -= in[j].count() - out[j].count();
      rec.changed.push_back(g.scheme[j]);
    }
    assign(d, g.scheme, std::move(out));
    rec.worklist_size = --remaining;
    rec.weight = weight;
    trace.steps.push_back(std::move(rec));
  }
  return result;
}

}  // namespace conprop
