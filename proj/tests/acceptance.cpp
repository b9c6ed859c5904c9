// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance                   exit status = number of failed criteria
//   acceptance --expect-fail 8   exit 0 iff exactly the listed criteria fail
//
// Every comparison is exact (set equality / containment); the only numeric
// tolerance is the runtime budget of criterion 1.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <set>
#include <sstream>

#include "conprop/algorithms.hpp"
#include "conprop/cli.hpp"
#include "conprop/oracle.hpp"
#include "support/generators.hpp"

using namespace conprop;
using conprop::testing::Rng;

namespace {

constexpr std::size_t kCorpus = 500;         // criteria 1, 2
constexpr std::size_t kEquivInstances = 200;  // criterion 3
constexpr std::size_t kPairInstances = 100;   // criteria 4, 5, 6, 7
constexpr std::size_t kStatesPerPair = 20;    // criteria 5, 6
constexpr std::uint64_t kSolutionCap = 10'000;
constexpr double kCriterion1Budget = 10.0;  // seconds

const UpdateVariant kVariants[] = {UpdateVariant::Full, UpdateVariant::IdempotentFiltered, UpdateVariant::CommFiltered,
                                   UpdateVariant::Both};

// Criterion 9 watches every trace produced while checking 1-8.
struct MeasureMonitor {
  std::size_t traces = 0;
  std::size_t violations = 0;
  void operator()(const IterationTrace& t) {
    ++traces;
    if (!verify_measure(t)) ++violations;
  }
} g_monitor;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok) { pass = pass && ok; }
};

conprop::testing::CspShape corpus_shape() {
  conprop::testing::CspShape s;  // 2-4 variables, |D| 2-4, density 0.3-0.8
  s.max_arity = 2;
  return s;
}

std::vector<Csp> make_corpus(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  std::vector<Csp> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(conprop::testing::random_binary_csp(rng, corpus_shape()));
  return out;
}

std::vector<std::string> names_in(const Csp& p, const std::vector<std::size_t>& order) {
  std::vector<std::string> out;
  for (std::size_t k : order) out.push_back(p.name(k));
  return out;
}

// --- criteria ---------------------------------------------------------------

Verdict fixpoint_correctness(const std::vector<Csp>& corpus) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t mismatches = 0;
  for (const Csp& p : corpus) {
    const auto r = hyper_arc(p);
    g_monitor(r.trace);
    if (r.csp.domains() != oracle::hyper_arc_closure(p)) ++mismatches;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  v.require(mismatches == 0 && secs < kCriterion1Budget);
  v.detail << corpus.size() << " CSPs, " << mismatches << " mismatches vs round-robin oracle, " << secs << " s (budget "
           << kCriterion1Budget << " s)";
  return v;
}

Verdict policy_invariance(const std::vector<Csp>& corpus) {
  Verdict v;
  std::size_t runs = 0, disagreements = 0;
  AbstractOrder<ProductElement> order{[](const ProductElement& a, const ProductElement& b) { return leq(a, b); },
                                      [](const ProductElement& d) { return d.weight(); }};
  for (const Csp& p : corpus) {
    const auto which = all_projections(p);
    const auto fns = make_projection_propagators(p, which);
    std::vector<OrderedFn<ProductElement>> abstract;
    for (const auto& f : fns) abstract.push_back({f.id, [f](const ProductElement& d) { return apply_extended(f, d); }, f.idempotent});
    const CommVariant cv = at_most_one_constraint_per_pair(p) ? CommVariant::Standard : CommVariant::Modified;
    const CommMap comm = comm_map_arc(p, which, cv);
    const ProductElement bottom = DomainEncoding(p).bottom();
    std::optional<ProductElement> reference;
    for (UpdateVariant variant : kVariants) {
      for (Selection sel : {Selection::Fifo, Selection::Lifo}) {
        RunOptions opt;
        opt.selection = sel;
        const auto r = gi_run(abstract, bottom, UpdatePolicy{variant, comm}, order, opt);
        const auto c = cd_run(fns, bottom, UpdatePolicy{variant, comm}, opt);
        g_monitor(r.trace);
        g_monitor(c.trace);
        runs += 2;
        if (!reference) reference = r.value;
        if (!(r.value == *reference) || !(c.value == *reference)) ++disagreements;
      }
    }
  }
  v.require(disagreements == 0);
  v.detail << runs << " runs (gi_run and cd_run x 4 policies x FIFO/LIFO), " << disagreements << " disagreements";
  return v;
}

Verdict equivalence_preservation() {
  Verdict v;
  Rng rng(303);
  std::size_t checked = 0, broken = 0;
  for (std::size_t i = 0; i < kEquivInstances; ++i) {
    const Csp p = conprop::testing::random_binary_csp(rng, corpus_shape());
    const NormalizedCsp n = normalize(p);
    const Csp complete = n.to_csp();
    const auto order = conprop::testing::random_order(rng, p.variable_count());
    const auto sols = oracle::enumerate_solutions(p, kSolutionCap);
    auto same = [&](const auto& result) {
      ++checked;
      g_monitor(result.trace);
      if (oracle::enumerate_solutions(result.csp, kSolutionCap) != sols) ++broken;
    };
    same(hyper_arc(p));
    same(ac3(p));
    same(path(n));
    same(pc2(n));
    same(darc(p, order));
    same(dac(complete, order));
    same(dpath(n, order));
    same(dpc(n, order));
  }
  v.require(broken == 0);
  v.detail << kEquivInstances << " instances x 8 algorithms, " << broken << " solution sets changed";
  return v;
}

Verdict pair_equivalences() {
  Verdict v;
  Rng rng(404);
  std::size_t ac = 0, pc = 0, da = 0, dp = 0;
  for (std::size_t i = 0; i < kPairInstances; ++i) {
    const Csp p = conprop::testing::random_binary_csp(rng, corpus_shape());
    const NormalizedCsp n = normalize(p);
    const Csp complete = n.to_csp();
    const auto order = conprop::testing::random_order(rng, p.variable_count());
    const auto a = ac3(p), h = hyper_arc(p);
    const auto q = pc2(n), r = path(n);
    const auto d1 = dac(complete, order), d2 = darc(complete, order);
    const auto e1 = dpc(n, order), e2 = dpath(n, order);
    for (const auto* t : {&a.trace, &h.trace, &q.trace, &r.trace, &d2.trace, &e2.trace}) g_monitor(*t);
    ac += !(a.csp == h.csp);
    pc += !(q.csp == r.csp);
    da += d1.csp.domains() != d2.csp.domains();
    dp += !(e1.csp == e2.csp);
  }
  v.require(ac + pc + da + dp == 0);
  v.detail << kPairInstances << " instances each; mismatches ac3/hyper_arc=" << ac << " pc2/path=" << pc << " dac/darc=" << da
           << " dpc/dpath=" << dp;
  return v;
}

Verdict commutativity() {
  Verdict v;
  Rng rng(505);
  std::size_t pairs = 0, failures = 0;
  for (std::size_t i = 0; i < kPairInstances; ++i) {
    const Csp p = conprop::testing::random_binary_csp(rng, corpus_shape());
    const auto which = all_projections(p);
    const auto fns = make_projection_propagators(p, which);
    const CommVariant cv = at_most_one_constraint_per_pair(p) ? CommVariant::Standard : CommVariant::Modified;
    const CommMap comm = comm_map_arc(p, which, cv);
    const DomainEncoding enc(p);
    for (std::size_t s = 0; s < kStatesPerPair; ++s) {
      const ProductElement d = random_refinement(enc.bottom(), rng, 0.7);
      for (std::size_t g = 0; g < fns.size(); ++g)
        for (FnIndex f : comm[g]) {
          ++pairs;
          failures += !commutes_at(fns[f], fns[g], d);
        }
    }

    const NormalizedCsp n = normalize(p);
    const auto paths = all_path_fns(n.variable_count());
    const auto pfns = make_path_propagators(n, paths);
    const CommMap pcomm = comm_map_path(paths, n.variable_count());
    const RelationEncoding renc(n);
    for (std::size_t s = 0; s < kStatesPerPair; ++s) {
      const ProductElement d = random_refinement(renc.bottom(n), rng, 0.7);
      for (std::size_t g = 0; g < pfns.size(); ++g)
        for (FnIndex f : pcomm[g]) {
          ++pairs;
          failures += !commutes_at(pfns[f], pfns[g], d);
        }
    }
  }
  std::size_t bad_sizes = 0;
  for (std::size_t m = 3; m <= 6; ++m)
    for (const PathFn& f : all_path_fns(m)) bad_sizes += comm_path(f, m).size() != m - 3;
  v.require(failures == 0 && bad_sizes == 0);
  v.detail << pairs << " (pair, state) checks, " << failures << " non-commuting; |Comm| != m-3 for m=3..6: " << bad_sizes;
  return v;
}

Verdict semi_commutativity() {
  Verdict v;
  Rng rng(606);
  std::size_t checks = 0, failures = 0;
  for (std::size_t i = 0; i < kPairInstances; ++i) {
    const Csp p = conprop::testing::random_binary_csp(rng, corpus_shape());
    const Csp q = reorder(p, conprop::testing::random_order(rng, p.variable_count()));
    const auto list = make_projection_propagators(q, darc_list(q));
    const DomainEncoding enc(q);
    const NormalizedCsp n = normalize(q);
    const auto plist = make_path_propagators(n, dpath_list(n.variable_count()));
    const RelationEncoding renc(n);
    for (std::size_t s = 0; s < kStatesPerPair; ++s) {
      const ProductElement d = random_refinement(enc.bottom(), rng, 0.7);
      for (std::size_t a = 0; a < list.size(); ++a)
        for (std::size_t b = a + 1; b < list.size(); ++b) {
          ++checks;
          failures += !semi_commutes_at(list[a], list[b], d);
        }
      const ProductElement e = random_refinement(renc.bottom(n), rng, 0.7);
      for (std::size_t a = 0; a < plist.size(); ++a)
        for (std::size_t b = a + 1; b < plist.size(); ++b) {
          ++checks;
          failures += !semi_commutes_at(plist[a], plist[b], e);
        }
    }
  }
  v.require(failures == 0);
  v.detail << checks << " ordered-pair checks; applying f then a later g is contained in g then f: " << failures
           << " violations";
  return v;
}

Verdict one_pass_sufficiency() {
  Verdict v;
  Rng rng(707);
  std::size_t not_consistent = 0, second_pass_changed = 0;
  for (std::size_t i = 0; i < kPairInstances; ++i) {
    const Csp p = conprop::testing::random_binary_csp(rng, corpus_shape());
    const auto order = conprop::testing::random_order(rng, p.variable_count());

    const auto da = darc(p, order);
    g_monitor(da.trace);
    not_consistent += !oracle::is_dir_arc_consistent(da.csp, order);
    const Csp q = reorder(da.csp, order);
    const DomainEncoding enc(q);
    const auto again = si_run(make_projection_propagators(q, darc_list(q)), enc.bottom());
    g_monitor(again.trace);
    second_pass_changed += again.trace.changed_anything();

    const NormalizedCsp n = normalize(p);
    const auto dp = dpath(n, order);
    g_monitor(dp.trace);
    not_consistent += !oracle::is_dir_path_consistent(dp.csp, order);
    const NormalizedCsp m = reorder(dp.csp, order);
    const RelationEncoding renc(m);
    const auto pagain = si_run(make_path_propagators(m, dpath_list(m.variable_count())), renc.bottom(m));
    g_monitor(pagain.trace);
    second_pass_changed += pagain.trace.changed_anything();
  }
  v.require(not_consistent == 0 && second_pass_changed == 0);
  v.detail << kPairInstances << " instances (darc + dpath): " << not_consistent << " not directionally consistent, "
           << second_pass_changed << " changed by a second pass";
  return v;
}

Verdict worklist_savings(const std::vector<Csp>& corpus) {
  Verdict v;
  std::size_t ac_worse = 0, pc_worse = 0, ac_strict = 0, pc_strict = 0;
  for (const Csp& p : corpus) {
    const auto a = ac3(p), h = hyper_arc(p);
    const NormalizedCsp n = normalize(p);
    const auto q = pc2(n), r = path(n);
    for (const auto* t : {&a.trace, &h.trace, &q.trace, &r.trace}) g_monitor(*t);
    ac_worse += a.trace.insertions() > h.trace.insertions();
    ac_strict += a.trace.insertions() < h.trace.insertions();
    pc_worse += q.trace.insertions() > r.trace.insertions();
    pc_strict += q.trace.insertions() < r.trace.insertions();
  }
  const NormalizedCsp e4 = normalize(conprop::testing::example_triangle());
  const auto q = pc2(e4), r = path(e4);
  g_monitor(q.trace);
  g_monitor(r.trace);
  const bool e4_strict = q.trace.insertions() < r.trace.insertions();
  v.require(ac_worse == 0 && pc_worse == 0 && e4_strict);
  v.detail << corpus.size() << " instances: ac3 > hyper_arc on " << ac_worse << " (strictly fewer on " << ac_strict
           << "), pc2 > path on " << pc_worse << " (strictly fewer on " << pc_strict << "); triangle insertions pc2="
           << q.trace.insertions() << " path=" << r.trace.insertions();
  return v;
}

Verdict termination_monitor() {
  Verdict v;
  v.require(g_monitor.traces > 0 && g_monitor.violations == 0);
  v.detail << g_monitor.traces << " traces from criteria 1-8, " << g_monitor.violations << " measure violations";
  return v;
}

Verdict canned_examples() {
  Verdict v;
  using conprop::testing::example_lt;
  using conprop::testing::example_chain;
  using conprop::testing::example_triangle;
  const std::vector<ValueSet> e1_expected{{1, 2}, {2, 3}};
  const std::vector<ValueSet> e2_expected{{1}, {2}, {3}};
  // Frozen values must agree with the oracle before they count.
  bool oracle_ok = oracle::hyper_arc_closure(example_lt()) == e1_expected &&
                   oracle::hyper_arc_closure(example_chain()) == e2_expected;
  const NormalizedCsp e4 = normalize(example_triangle());
  for (const auto& rel : oracle::path_closure(e4)) oracle_ok = oracle_ok && rel.empty();

  const bool e1 = hyper_arc(example_lt()).csp.domains() == e1_expected && ac3(example_lt()).csp.domains() == e1_expected;
  const bool e2 = hyper_arc(example_chain()).csp.domains() == e2_expected && ac3(example_chain()).csp.domains() == e2_expected;
  bool e4_empty = true;
  const auto by_path = path(e4);
  const auto by_pc2 = pc2(e4);
  for (const auto& rel : by_path.csp.relations()) e4_empty = e4_empty && rel.empty();
  for (const auto& rel : by_pc2.csp.relations()) e4_empty = e4_empty && rel.empty();

  std::ostringstream out, err;
  cli::RunConfig cfg;
  cfg.algorithm = cli::Algorithm::Pc2;
  const int code = cli::run(cfg, cli::render_csp(example_triangle()), out, err);

  v.require(oracle_ok && e1 && e2 && e4_empty && code == cli::kEmptiness);
  v.detail << "oracle=" << (oracle_ok ? "agrees" : "DISAGREES") << " lt=" << (e1 ? "ok" : "wrong") << " chain="
           << (e2 ? "ok" : "wrong") << " triangle relations empty=" << (e4_empty ? "yes" : "no") << " CLI exit=" << code;
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> expected_failures;
  app.add_option("--expect-fail", expected_failures, "criteria known to fail; exit 0 iff exactly these fail");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Csp> corpus = make_corpus(101, kCorpus);
  struct Row {
    int id;
    const char* title;
    Verdict verdict;
  };
  std::vector<Row> rows;
  rows.push_back({1, "fixpoint correctness", fixpoint_correctness(corpus)});
  rows.push_back({2, "policy invariance", policy_invariance(corpus)});
  rows.push_back({3, "equivalence preservation", equivalence_preservation()});
  rows.push_back({4, "algorithm-pair equivalences", pair_equivalences()});
  rows.push_back({5, "commutativity", commutativity()});
  rows.push_back({6, "semi-commutativity", semi_commutativity()});
  rows.push_back({7, "one-pass sufficiency", one_pass_sufficiency()});
  rows.push_back({8, "worklist savings", worklist_savings(corpus)});
  rows.push_back({9, "termination monitor", termination_monitor()});
  rows.push_back({10, "canned examples", canned_examples()});

  std::set<int> failed;
  for (auto& r : rows) {
    std::cout << "criterion " << r.id << ": " << (r.verdict.pass ? "PASS" : "FAIL") << "  " << r.title << " -- "
              << r.verdict.detail.str() << '\n';
    if (!r.verdict.pass) failed.insert(r.id);
  }
  if (app.count("--expect-fail") > 0) {
    const std::set<int> expected(expected_failures.begin(), expected_failures.end());
    if (failed != expected) {
      std::cout << "unexpected outcome: the set of failing criteria differs from --expect-fail\n";
      return 1;
    }
    return 0;
  }
  return static_cast<int>(failed.size());
}
