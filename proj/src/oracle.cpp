#include "conprop/oracle.hpp"

#include <algorithm>
#include <array>

namespace conprop::oracle {

SolutionSet enumerate_solutions(const Csp& p, std::uint64_t cap) {
  const std::size_t n = p.variable_count();
  std::uint64_t space = 1;
  for (const auto& d : p.domains()) {
    if (d.empty()) return {};
    if (space > cap / d.size()) throw ResourceError("search space exceeds the enumeration cap of " + std::to_string(cap));
    space *= d.size();
  }

  std::vector<std::set<Tuple>> allowed;
  for (const Constraint& c : p.constraints()) allowed.emplace_back(c.tuples.begin(), c.tuples.end());

  SolutionSet out;
  std::vector<std::size_t> pos(n, 0);
  Assignment a(n);
  for (std::uint64_t k = 0; k < space; ++k) {
    for (std::size_t v = 0; v < n; ++v) a[v] = p.domain(v)[pos[v]];
    bool ok = true;
    for (std::size_t c = 0; c < p.constraints().size() && ok; ++c) {
      const Constraint& con = p.constraints()[c];
      Tuple t;
      for (std::size_t v : con.scope) t.push_back(a[v]);
      ok = allowed[c].count(t) != 0;
    }
    if (ok) out.push_back(a);
    // odometer, last variable fastest -> lexicographic order
    for (std::size_t v = n; v-- > 0;) {
      if (++pos[v] < p.domain(v).size()) break;
      pos[v] = 0;
    }
  }
  return out;
}

SolutionSet enumerate_solutions(const NormalizedCsp& p, std::uint64_t cap) { return enumerate_solutions(p.to_csp(), cap); }

DomainState domain_state(const Csp& p) {
  DomainState s;
  for (const auto& d : p.domains()) s.emplace_back(d.begin(), d.end());
  return s;
}

std::vector<ValueSet> to_domains(const DomainState& s) {
  std::vector<ValueSet> out;
  for (const auto& d : s) out.emplace_back(d.begin(), d.end());
  return out;
}

RelationState relation_state(const NormalizedCsp& p) {
  RelationState s;
  for (std::size_t k = 0; k < p.pair_count(); ++k) {
    const auto& r = p.relation_at(k);
    s[p.pair_at(k)] = std::set<std::pair<Value, Value>>(r.pairs.begin(), r.pairs.end());
  }
  return s;
}

std::vector<BinaryRelation> to_relations(const RelationState& s) {
  std::vector<BinaryRelation> out;
  for (const auto& [key, rel] : s) out.push_back(BinaryRelation{{rel.begin(), rel.end()}});
  return out;
}

namespace {

// Π_i(C ∩ (X_1 × ... × X_k)) by enumerating the product of the current sets.
NaiveFn<DomainState> projection(const Constraint& c, std::size_t i) {
  const std::set<Tuple> allowed(c.tuples.begin(), c.tuples.end());
  const std::vector<std::size_t> scope = c.scope;
  return [allowed, scope, i](const DomainState& d) {
    std::vector<std::vector<Value>> sets;
    for (std::size_t v : scope) sets.emplace_back(d[v].begin(), d[v].end());
    std::set<Value> projected;
    if (std::none_of(sets.begin(), sets.end(), [](const auto& s) { return s.empty(); })) {
      std::vector<std::size_t> pos(sets.size(), 0);
      Tuple t(sets.size());
      for (bool more = true; more;) {
        for (std::size_t k = 0; k < sets.size(); ++k) t[k] = sets[k][pos[k]];
        if (allowed.count(t)) projected.insert(t[i]);
        more = false;
        for (std::size_t k = sets.size(); k-- > 0;) {
          if (++pos[k] < sets[k].size()) {
            more = true;
            break;
          }
          pos[k] = 0;
        }
      }
    }
    DomainState out = d;
    out[scope[i]] = std::move(projected);
    return out;
  };
}

// Pairs of C_{u,v} oriented as (u-value, v-value).
bool related(const RelationState& s, std::size_t u, std::size_t v, Value a, Value b) {
  if (u < v) return s.at({u, v}).count({a, b}) != 0;
  return s.at({v, u}).count({b, a}) != 0;
}

// C_{a,b} := {(p,q) ∈ C_{a,b} | ∃ w ∈ D_u: (p,w) ∈ C_{a,u} and (q,w) ∈ C_{b,u}}
NaiveFn<RelationState> narrow(std::size_t a, std::size_t b, std::size_t u, ValueSet du) {
  return [a, b, u, du = std::move(du)](const RelationState& s) {
    RelationState out = s;
    const PairKey key = a < b ? PairKey{a, b} : PairKey{b, a};
    auto& rel = out[key];
    for (auto it = rel.begin(); it != rel.end();) {
      const Value p = a < b ? it->first : it->second;
      const Value q = a < b ? it->second : it->first;
      const bool witnessed = std::any_of(du.begin(), du.end(), [&](Value w) { return related(s, a, u, p, w) && related(s, b, u, q, w); });
      it = witnessed ? std::next(it) : rel.erase(it);
    }
    return out;
  };
}

std::vector<std::size_t> positions(const std::vector<std::size_t>& order) {
  std::vector<std::size_t> pos(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos.at(order[k]) = k;
  return pos;
}

}  // namespace

std::vector<NaiveFn<DomainState>> projections(const Csp& p) {
  std::vector<NaiveFn<DomainState>> out;
  for (const Constraint& c : p.constraints()) {
    for (std::size_t i = 0; i < c.arity(); ++i) out.push_back(projection(c, i));
  }
  return out;
}

std::vector<NaiveFn<DomainState>> directional_projections(const Csp& p, const std::vector<std::size_t>& order) {
  const auto pos = positions(order);
  std::vector<NaiveFn<DomainState>> out;
  for (const Constraint& c : p.constraints()) {
    if (c.arity() != 2) continue;
    out.push_back(projection(c, pos[c.scope[0]] < pos[c.scope[1]] ? 0 : 1));
  }
  return out;
}

std::vector<NaiveFn<RelationState>> path_functions(const NormalizedCsp& p) {
  const std::size_t m = p.variable_count();
  std::vector<NaiveFn<RelationState>> out;
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = x + 1; y < m; ++y) {
      for (std::size_t z = y + 1; z < m; ++z) {
        out.push_back(narrow(x, y, z, p.domain(z)));
        out.push_back(narrow(x, z, y, p.domain(y)));
        out.push_back(narrow(y, z, x, p.domain(x)));
      }
    }
  }
  return out;
}

std::vector<NaiveFn<RelationState>> directional_path_functions(const NormalizedCsp& p, const std::vector<std::size_t>& order) {
  const auto pos = positions(order);
  const std::size_t m = p.variable_count();
  std::vector<NaiveFn<RelationState>> out;
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = x + 1; y < m; ++y) {
      for (std::size_t z = y + 1; z < m; ++z) {
        std::array<std::size_t, 3> t{x, y, z};
        std::sort(t.begin(), t.end(), [&](std::size_t a, std::size_t b) { return pos[a] < pos[b]; });
        out.push_back(narrow(t[0], t[1], t[2], p.domain(t[2])));
      }
    }
  }
  return out;
}

std::vector<ValueSet> hyper_arc_closure(const Csp& p) { return to_domains(roundrobin_fixpoint(projections(p), domain_state(p))); }

std::vector<ValueSet> dir_arc_closure(const Csp& p, const std::vector<std::size_t>& order) {
  return to_domains(roundrobin_fixpoint(directional_projections(p, order), domain_state(p)));
}

std::vector<BinaryRelation> path_closure(const NormalizedCsp& p) {
  return to_relations(roundrobin_fixpoint(path_functions(p), relation_state(p)));
}

std::vector<BinaryRelation> dir_path_closure(const NormalizedCsp& p, const std::vector<std::size_t>& order) {
  return to_relations(roundrobin_fixpoint(directional_path_functions(p, order), relation_state(p)));
}

namespace {

template <typename State>
bool is_common_fixpoint(const std::vector<NaiveFn<State>>& fns, const State& s) {
  return std::all_of(fns.begin(), fns.end(), [&](const auto& f) { return f(s) == s; });
}

}  // namespace

bool is_hyper_arc_consistent(const Csp& p) { return is_common_fixpoint(projections(p), domain_state(p)); }

bool is_path_consistent(const NormalizedCsp& p) { return is_common_fixpoint(path_functions(p), relation_state(p)); }

bool is_dir_arc_consistent(const Csp& p, const std::vector<std::size_t>& order) {
  return is_common_fixpoint(directional_projections(p, order), domain_state(p));
}

bool is_dir_path_consistent(const NormalizedCsp& p, const std::vector<std::size_t>& order) {
  return is_common_fixpoint(directional_path_functions(p, order), relation_state(p));
}

}  // namespace conprop::oracle
