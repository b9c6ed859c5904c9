#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conprop/algorithms.hpp"
#include "conprop/errors.hpp"
#include "conprop/propagators.hpp"
#include "support/generators.hpp"

using namespace conprop;
using conprop::testing::Rng;
using R = BinaryRelation;

namespace {

Constraint lt3() { return conprop::testing::example_lt().constraints()[0]; }

}  // namespace

TEST_CASE("project") {
  const Constraint c = lt3();
  CHECK(project(c, 0, {{1, 2, 3}, {2, 3}}) == std::vector<ValueSet>{{1, 2}, {2, 3}});
  Constraint everything = c;
  everything.tuples.clear();
  for (Value a : {1, 2, 3})
    for (Value b : {1, 2, 3}) everything.tuples.push_back({a, b});
  CHECK(project(everything, 1, {{1, 3}, {2}}) == std::vector<ValueSet>{{1, 3}, {2}});
  Constraint none = c;
  none.tuples.clear();
  CHECK(project(none, 1, {{1}, {2}}) == std::vector<ValueSet>{{1}, {}});
  CHECK_THROWS_AS(project(c, 0, {{1}}), StructuralError);
  CHECK_THROWS_AS(project(c, 2, {{1}, {2}}), StructuralError);
}

TEST_CASE("project_binary") {
  const R c = R::from({{1, 2}, {2, 3}});
  CHECK(project_binary(c, Side::First, {1, 2, 3}, {2, 3}) == std::pair(ValueSet{1, 2}, ValueSet{2, 3}));
  CHECK(project_binary(c, Side::Second, {1, 2, 3}, {2, 3}) == std::pair(ValueSet{1, 2, 3}, ValueSet{2, 3}));
  CHECK(project_binary(c, Side::First, {1, 2, 3}, {}) == std::pair(ValueSet{}, ValueSet{}));
}

TEST_CASE("path_apply") {
  const R flip = R::from({{0, 1}, {1, 0}});
  const PathSlots s{flip, flip, flip};
  CHECK(path_apply(PathTarget::XZ, s) == PathSlots{flip, R{}, flip});
  const R full = R::product({0, 1}, {0, 1});
  CHECK(path_apply(PathTarget::XY, PathSlots{flip, full, full}) == PathSlots{flip, full, full});
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    auto rel = [&] {
      std::vector<std::pair<Value, Value>> v;
      for (Value a = 0; a < 3; ++a)
        for (Value b = 0; b < 3; ++b)
          if (rng() % 2) v.emplace_back(a, b);
      return R::from(v);
    };
    const PathSlots in{rel(), rel(), rel()};
    const PathSlots xy = path_apply(PathTarget::XY, in);
    CHECK(xy.q == in.q);
    CHECK(xy.r == in.r);
    CHECK(xy.p == intersect(in.p, compose(in.q, transpose(in.r))));
    const PathSlots xz = path_apply(PathTarget::XZ, in);
    CHECK(xz.q == intersect(in.q, compose(in.p, in.r)));
    const PathSlots yz = path_apply(PathTarget::YZ, in);
    CHECK(yz.r == intersect(in.r, compose(transpose(in.p), in.q)));
  }
}

TEST_CASE("propagators agree with the model-level definitions") {
  Rng rng(9);
  for (int kind : {0, 1}) {
    kernels::ScopedSelection pin(kind == 0 ? kernels::scalar_table() : kernels::active());
    for (int i = 0; i < 60; ++i) {
      conprop::testing::CspShape shape;
      shape.max_arity = 3;
      const Csp p = conprop::testing::random_csp(rng, shape);
      const auto which = all_projections(p);
      const auto fns = make_projection_propagators(p, which);
      const DomainEncoding enc(p);
      const ProductElement d = random_refinement(enc.bottom(), rng, 0.7);
      const auto doms = enc.decode(d);
      for (std::size_t k = 0; k < fns.size(); ++k) {
        const Constraint& c = p.constraints()[which[k].constraint];
        std::vector<ValueSet> x;
        for (std::size_t v : c.scope) x.push_back(doms[v]);
        const auto y = project(c, which[k].coord, x);
        auto expected = doms;
        for (std::size_t j = 0; j < c.scope.size(); ++j) expected[c.scope[j]] = y[j];
        CHECK(enc.decode(apply_extended(fns[k], d)) == expected);
      }

      const NormalizedCsp n = conprop::testing::random_normalized(rng);
      const auto paths = all_path_fns(n.variable_count());
      const auto pfns = make_path_propagators(n, paths);
      const RelationEncoding renc(n);
      const ProductElement e = random_refinement(renc.bottom(n), rng, 0.7);
      const auto rels = renc.decode(e);
      for (std::size_t k = 0; k < pfns.size(); ++k) {
        const PathFn& f = paths[k];
        const std::size_t ixy = n.pair_index(f.x, f.y), ixz = n.pair_index(f.x, f.z), iyz = n.pair_index(f.y, f.z);
        const PathSlots out = path_apply(f.target, PathSlots{rels[ixy], rels[ixz], rels[iyz]});
        auto expected = rels;
        expected[ixy] = out.p;
        expected[ixz] = out.q;
        expected[iyz] = out.r;
        CHECK(renc.decode(apply_extended(pfns[k], e)) == expected);
      }
    }
  }
}

TEST_CASE("every propagator is inflationary, monotonic and idempotent on samples") {
  Rng rng(10);
  for (int i = 0; i < 60; ++i) {
    conprop::testing::CspShape shape;
    shape.max_arity = 3;
    const Csp p = conprop::testing::random_csp(rng, shape);
    const DomainEncoding enc(p);
    for (const auto& f : make_projection_propagators(p, all_projections(p))) {
      CHECK(f.idempotent);
      const auto r = sample_properties(f, enc.bottom(), 20, rng);
      CHECK_MESSAGE(r.ok(), r.failure);
    }
    const NormalizedCsp n = conprop::testing::random_normalized(rng);
    const RelationEncoding renc(n);
    for (const auto& f : make_path_propagators(n, all_path_fns(n.variable_count()))) {
      CHECK(f.idempotent);
      const auto r = sample_properties(f, renc.bottom(n), 20, rng);
      CHECK_MESSAGE(r.ok(), r.failure);
    }
  }
}

TEST_CASE("comm_arc") {
  SUBCASE("single binary constraint") {
    const Csp p = conprop::testing::example_lt();
    const auto all = all_projections(p);
    REQUIRE(all.size() == 2);
    CHECK(comm_arc(p, 0, all, CommVariant::Standard) == std::vector<std::size_t>{1});
    CHECK(comm_arc(p, 0, all, CommVariant::Modified).empty());
  }
  SUBCASE("two constraints sharing x at coordinates 1 and 2") {
    Csp p;
    for (const char* v : {"w", "x", "y"}) p.add_variable(v, {0, 1});
    p.add_constraint("c1", std::vector<std::string>{"x", "y"}, {{0, 1}});
    p.add_constraint("c2", std::vector<std::string>{"w", "x"}, {{0, 1}});
    const std::vector<ProjectionFn> all{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    const auto comm = comm_arc(p, 0, all, CommVariant::Standard);
    CHECK(std::find(comm.begin(), comm.end(), 3) != comm.end());  // pi2 of c2
    CHECK(std::find(comm.begin(), comm.end(), 1) != comm.end());
    CHECK(std::find(comm.begin(), comm.end(), 0) == comm.end());
  }
  CHECK(at_most_one_constraint_per_pair(conprop::testing::example_chain()));
}

TEST_CASE("listed Comm pairs commute on random states") {
  Rng rng(11);
  for (int i = 0; i < 60; ++i) {
    conprop::testing::CspShape shape;
    shape.max_arity = 3;
    const Csp p = conprop::testing::random_csp(rng, shape);
    const auto all = all_projections(p);
    const auto fns = make_projection_propagators(p, all);
    const DomainEncoding enc(p);
    // The standard variant only holds under "at most one constraint per pair".
    const CommVariant v = at_most_one_constraint_per_pair(p) ? CommVariant::Standard : CommVariant::Modified;
    const CommMap comm = comm_map_arc(p, all, v);
    for (int s = 0; s < 10; ++s) {
      const ProductElement d = random_refinement(enc.bottom(), rng, 0.7);
      for (std::size_t g = 0; g < fns.size(); ++g)
        for (FnIndex f : comm[g]) CHECK(commutes_at(fns[f], fns[g], d));
    }
  }
}

TEST_CASE("comm_path") {
  const PathFn f = PathFn::of(0, 1, 2);
  CHECK(f.target == PathTarget::XY);
  CHECK(comm_path(f, 3).empty());
  const auto c4 = comm_path(f, 4);
  REQUIRE(c4.size() == 1);
  CHECK(c4[0].subscript() == std::pair<std::size_t, std::size_t>(0, 1));
  CHECK(c4[0].superscript() == 3);
  for (std::size_t m = 3; m <= 7; ++m) {
    for (const PathFn& g : all_path_fns(m)) {
      const auto c = comm_path(g, m);
      CHECK(c.size() == m - 3);
      for (const PathFn& h : c) {
        CHECK(h.subscript() == g.subscript());
        CHECK(h.superscript() != g.superscript());
      }
    }
  }
  const std::vector<std::string> names{"x", "y", "z"};
  CHECK(path_id(names, f) == "f^z_{x,y}");
  CHECK(path_id(names, PathFn::of(0, 2, 1)) == "f^y_{x,z}");
  CHECK(path_id(names, PathFn::of(1, 2, 0)) == "f^x_{y,z}");
}

TEST_CASE("listed path Comm pairs commute on random states") {
  Rng rng(12);
  for (int i = 0; i < 30; ++i) {
    conprop::testing::CspShape shape;
    shape.min_vars = 4;
    shape.max_vars = 5;
    shape.max_domain = 3;
    shape.max_constraints = 8;
    const NormalizedCsp n = conprop::testing::random_normalized(rng, shape);
    const auto all = all_path_fns(n.variable_count());
    const auto fns = make_path_propagators(n, all);
    const CommMap comm = comm_map_path(all, n.variable_count());
    const RelationEncoding renc(n);
    for (int s = 0; s < 5; ++s) {
      const ProductElement d = random_refinement(renc.bottom(n), rng, 0.8);
      for (std::size_t g = 0; g < fns.size(); ++g) {
        CHECK(comm[g].size() == n.variable_count() - 3);
        for (FnIndex f : comm[g]) CHECK(commutes_at(fns[f], fns[g], d));
      }
    }
  }
}

TEST_CASE("semi-commutation along the DARC and DPATH lists") {
  Rng rng(13);
  for (int i = 0; i < 40; ++i) {
    const Csp p = conprop::testing::random_binary_csp(rng);
    const Csp q = reorder(p, conprop::testing::random_order(rng, p.variable_count()));
    const auto list = make_projection_propagators(q, darc_list(q));
    const DomainEncoding enc(q);
    for (int s = 0; s < 10; ++s) {
      const ProductElement d = random_refinement(enc.bottom(), rng, 0.7);
      for (std::size_t a = 0; a < list.size(); ++a)
        for (std::size_t b = a + 1; b < list.size(); ++b) CHECK(semi_commutes_at(list[a], list[b], d));
    }

    const NormalizedCsp n = conprop::testing::random_normalized(rng);
    const auto plist = make_path_propagators(n, dpath_list(n.variable_count()));
    const RelationEncoding renc(n);
    for (int s = 0; s < 5; ++s) {
      const ProductElement d = random_refinement(renc.bottom(n), rng, 0.7);
      for (std::size_t a = 0; a < plist.size(); ++a)
        for (std::size_t b = a + 1; b < plist.size(); ++b) CHECK(semi_commutes_at(plist[a], plist[b], d));
    }
  }
}

TEST_CASE("darc_list groups by the later variable, last group first") {
  const Csp p = conprop::testing::example_chain();
  const auto list = darc_list(p);
  REQUIRE(list.size() == 2);
  CHECK(p.constraints()[list[0].constraint].name == "yz");
  CHECK(p.constraints()[list[1].constraint].name == "xy");
  const auto paths = dpath_list(4);
  CHECK(paths.size() == 3 + 1);
  CHECK(paths.front().superscript() == 3);
  CHECK(paths.back().superscript() == 2);
}
