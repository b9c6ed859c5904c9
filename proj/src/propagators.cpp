#include "conprop/propagators.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <tuple>
#include <utility>

#include "conprop/errors.hpp"

namespace conprop {

namespace {

template <typename Fn>
void for_each_bit(std::span<const Word> words, Fn&& fn) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    Word bits = words[w];
    while (bits != 0) {
      fn(w * kernels::kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
}

bool row_intersects(std::span<const Word> a, std::span<const Word> b) {
  return kernels::active().intersects(a.data(), b.data(), std::min(a.size(), b.size()));
}

}  // namespace

// ---------------------------------------------------------------------------
// Model-level projections

std::vector<ValueSet> project(const Constraint& c, std::size_t coord, std::vector<ValueSet> x) {
  if (x.size() != c.arity()) throw StructuralError("projection input arity does not match constraint '" + c.name + "'");
  if (coord >= c.arity()) throw StructuralError("projection coordinate out of range");
  std::vector<Value> kept;
  for (const Tuple& t : c.tuples) {
    bool inside = true;
    for (std::size_t k = 0; k < t.size() && inside; ++k) inside = contains(x[k], t[k]);
    if (inside) kept.push_back(t[coord]);
  }
  x[coord] = make_value_set(std::move(kept));
  return x;
}

std::pair<ValueSet, ValueSet> project_binary(const BinaryRelation& c, Side side, ValueSet x, ValueSet y) {
  if (side == Side::First) {
    std::erase_if(x, [&](Value a) { return std::none_of(y.begin(), y.end(), [&](Value b) { return c.contains(a, b); }); });
  } else {
    std::erase_if(y, [&](Value b) { return std::none_of(x.begin(), x.end(), [&](Value a) { return c.contains(a, b); }); });
  }
  return {std::move(x), std::move(y)};
}

// ---------------------------------------------------------------------------
// Encoded projections

DomainEncoding::DomainEncoding(const Csp& p) : base_(p.domains()) {}

std::size_t DomainEncoding::index_of(std::size_t var, Value v) const {
  const ValueSet& b = base_[var];
  auto it = std::lower_bound(b.begin(), b.end(), v);
  if (it == b.end() || *it != v) throw StructuralError("value " + std::to_string(v) + " is outside the base domain");
  return static_cast<std::size_t>(it - b.begin());
}

ProductElement DomainEncoding::encode(const std::vector<ValueSet>& domains) const {
  if (domains.size() != base_.size()) throw StructuralError("domain count mismatch");
  std::vector<Bits> comps;
  for (std::size_t v = 0; v < base_.size(); ++v) {
    Bits b(base_[v].size());
    for (Value x : domains[v]) b.set(index_of(v, x));
    comps.push_back(std::move(b));
  }
  return ProductElement(std::move(comps));
}

std::vector<ValueSet> DomainEncoding::decode(const ProductElement& d) const {
  std::vector<ValueSet> out(base_.size());
  for (std::size_t v = 0; v < base_.size(); ++v) {
    d[v].for_each([&](std::size_t i) { out[v].push_back(base_[v][i]); });
  }
  return out;
}

std::vector<ProjectionFn> all_projections(const Csp& p) {
  std::vector<ProjectionFn> out;
  for (std::size_t c = 0; c < p.constraints().size(); ++c) {
    for (std::size_t i = 0; i < p.constraints()[c].arity(); ++i) out.push_back({c, i});
  }
  return out;
}

std::vector<ProjectionFn> arc_projections(const Csp& p) {
  std::vector<ProjectionFn> out;
  for (std::size_t c = 0; c < p.constraints().size(); ++c) {
    if (p.constraints()[c].arity() != 2) throw UnsupportedInput("constraint '" + p.constraints()[c].name + "' is not binary");
    out.push_back({c, 0});
    out.push_back({c, 1});
  }
  return out;
}

std::string projection_id(const Csp& p, const ProjectionFn& f) {
  return "pi" + std::to_string(f.coord + 1) + "[" + p.constraints()[f.constraint].name + "]";
}

namespace {

PropagatorFn binary_projection(const Csp& p, const DomainEncoding& enc, const ProjectionFn& f) {
  const Constraint& c = p.constraints()[f.constraint];
  const MatrixShape shape{enc.base()[c.scope[0]].size(), enc.base()[c.scope[1]].size()};
  Bits m = make_matrix(shape);
  for (const Tuple& t : c.tuples) m.set(shape.bit(enc.index_of(c.scope[0], t[0]), enc.index_of(c.scope[1], t[1])));

  PropagatorFn out;
  out.id = projection_id(p, f);
  out.scheme = Scheme(c.scope);
  out.idempotent = true;
  out.tags = {"constraint=" + c.name, "coord=" + std::to_string(f.coord + 1)};
  if (f.coord == 0) {
    out.apply = [shape, m = std::move(m)](Slice s) {
      Bits& x = s[0];
      const Bits& y = s[1];
      Bits keep = x;
      x.for_each([&](std::size_t a) {
        if (!row_intersects(row(m, shape, a), y.words())) keep.reset(a);
      });
      x = std::move(keep);
      return s;
    };
  } else {
    const MatrixShape tshape{shape.cols, shape.rows};
    out.apply = [tshape, mt = transpose(m, shape)](Slice s) {
      const Bits& x = s[0];
      Bits& y = s[1];
      Bits keep = y;
      y.for_each([&](std::size_t b) {
        if (!row_intersects(row(mt, tshape, b), x.words())) keep.reset(b);
      });
      y = std::move(keep);
      return s;
    };
  }
  return out;
}

PropagatorFn tuple_projection(const Csp& p, const DomainEncoding& enc, const ProjectionFn& f) {
  const Constraint& c = p.constraints()[f.constraint];
  std::vector<std::vector<std::size_t>> tuples;
  tuples.reserve(c.tuples.size());
  for (const Tuple& t : c.tuples) {
    std::vector<std::size_t> idx(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) idx[k] = enc.index_of(c.scope[k], t[k]);
    tuples.push_back(std::move(idx));
  }
  PropagatorFn out;
  out.id = projection_id(p, f);
  out.scheme = Scheme(c.scope);
  out.idempotent = true;
  out.tags = {"constraint=" + c.name, "coord=" + std::to_string(f.coord + 1)};
  out.apply = [coord = f.coord, tuples = std::move(tuples)](Slice s) {
    Bits kept(s[coord].size());
    for (const auto& t : tuples) {
      bool inside = true;
      for (std::size_t k = 0; k < t.size() && inside; ++k) inside = s[k].test(t[k]);
      if (inside) kept.set(t[coord]);
    }
    s[coord] = std::move(kept);
    return s;
  };
  return out;
}

}  // namespace

std::vector<PropagatorFn> make_projection_propagators(const Csp& p, const std::vector<ProjectionFn>& which) {
  const DomainEncoding enc(p);
  std::vector<PropagatorFn> out;
  out.reserve(which.size());
  for (const ProjectionFn& f : which) {
    if (f.constraint >= p.constraints().size() || f.coord >= p.constraints()[f.constraint].arity()) {
      throw StructuralError("projection refers to a missing constraint or coordinate");
    }
    out.push_back(p.constraints()[f.constraint].arity() == 2 ? binary_projection(p, enc, f) : tuple_projection(p, enc, f));
  }
  return out;
}

namespace {

std::size_t projected_variable(const Csp& p, const ProjectionFn& f) { return p.constraints()[f.constraint].scope[f.coord]; }

}  // namespace

std::vector<std::size_t> comm_arc(const Csp& p, std::size_t self, const std::vector<ProjectionFn>& all, CommVariant variant) {
  const ProjectionFn& me = all[self];
  const std::size_t var = projected_variable(p, me);
  const auto& my_scope = p.constraints()[me.constraint].scope;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < all.size(); ++j) {
    if (j == self || all[j] == me) continue;
    const ProjectionFn& other = all[j];
    const bool same_var = projected_variable(p, other) == var;
    bool member = false;
    if (variant == CommVariant::Standard) {
      member = other.constraint == me.constraint || same_var;
    } else {
      member = same_var && p.constraints()[other.constraint].scope != my_scope;
    }
    if (member) out.push_back(j);
  }
  return out;
}

CommMap comm_map_arc(const Csp& p, const std::vector<ProjectionFn>& all, CommVariant variant) {
  CommMap map(all.size());
  for (std::size_t k = 0; k < all.size(); ++k) map[k] = comm_arc(p, k, all, variant);
  return map;
}

bool at_most_one_constraint_per_pair(const Csp& p) {
  std::vector<std::vector<std::size_t>> scopes;
  for (const Constraint& c : p.constraints()) {
    if (c.arity() == 2) scopes.push_back(c.scope);
  }
  std::sort(scopes.begin(), scopes.end());
  return std::adjacent_find(scopes.begin(), scopes.end()) == scopes.end();
}

// ---------------------------------------------------------------------------
// Path functions, model level

PathFn PathFn::of(std::size_t a, std::size_t b, std::size_t u) {
  if (a == b || a == u || b == u) throw StructuralError("path function needs three distinct variables");
  std::array<std::size_t, 3> v{a, b, u};
  std::sort(v.begin(), v.end());
  PathFn f{v[0], v[1], v[2], PathTarget::XY};
  if (u == v[1]) f.target = PathTarget::XZ;
  if (u == v[0]) f.target = PathTarget::YZ;
  return f;
}

std::pair<std::size_t, std::size_t> PathFn::subscript() const {
  switch (target) {
    case PathTarget::XY: return {x, y};
    case PathTarget::XZ: return {x, z};
    case PathTarget::YZ: return {y, z};
  }
  return {x, y};
}

std::size_t PathFn::superscript() const {
  switch (target) {
    case PathTarget::XY: return z;
    case PathTarget::XZ: return y;
    case PathTarget::YZ: return x;
  }
  return z;
}

PathSlots path_apply(PathTarget target, PathSlots s) {
  switch (target) {
    case PathTarget::XY: s.p = intersect(s.p, compose(s.q, transpose(s.r))); break;
    case PathTarget::XZ: s.q = intersect(s.q, compose(s.p, s.r)); break;
    case PathTarget::YZ: s.r = intersect(s.r, compose(transpose(s.p), s.q)); break;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Path functions, encoded

RelationEncoding::RelationEncoding(const NormalizedCsp& p) : domains_(p.domains()) {
  for (std::size_t k = 0; k < p.pair_count(); ++k) {
    pairs_.push_back(p.pair_at(k));
    shapes_.push_back(MatrixShape{domains_[pairs_.back().first].size(), domains_[pairs_.back().second].size()});
  }
}

ProductElement RelationEncoding::encode(const std::vector<BinaryRelation>& relations) const {
  if (relations.size() != pairs_.size()) throw StructuralError("relation count mismatch");
  std::vector<Bits> comps;
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    const ValueSet& dx = domains_[pairs_[k].first];
    const ValueSet& dy = domains_[pairs_[k].second];
    Bits m = make_matrix(shapes_[k]);
    for (const auto& [a, b] : relations[k].pairs) {
      auto ia = std::lower_bound(dx.begin(), dx.end(), a);
      auto ib = std::lower_bound(dy.begin(), dy.end(), b);
      if (ia == dx.end() || *ia != a || ib == dy.end() || *ib != b) throw StructuralError("relation pair outside the domains");
      m.set(shapes_[k].bit(static_cast<std::size_t>(ia - dx.begin()), static_cast<std::size_t>(ib - dy.begin())));
    }
    comps.push_back(std::move(m));
  }
  return ProductElement(std::move(comps));
}

std::vector<BinaryRelation> RelationEncoding::decode(const ProductElement& d) const {
  std::vector<BinaryRelation> out(pairs_.size());
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    const ValueSet& dx = domains_[pairs_[k].first];
    const ValueSet& dy = domains_[pairs_[k].second];
    const MatrixShape& shape = shapes_[k];
    for (std::size_t a = 0; a < shape.rows; ++a) {
      for_each_bit(row(d[k], shape, a), [&](std::size_t b) { out[k].pairs.emplace_back(dx[a], dy[b]); });
    }
  }
  return out;
}

std::vector<PathFn> all_path_fns(std::size_t m) {
  std::vector<PathFn> out;
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = x + 1; y < m; ++y) {
      for (std::size_t z = y + 1; z < m; ++z) {
        out.push_back({x, y, z, PathTarget::XY});
        out.push_back({x, y, z, PathTarget::XZ});
        out.push_back({x, y, z, PathTarget::YZ});
      }
    }
  }
  return out;
}

std::string path_id(const std::vector<std::string>& names, const PathFn& f) {
  const auto [a, b] = f.subscript();
  return "f^" + names[f.superscript()] + "_{" + names[a] + "," + names[b] + "}";
}

namespace {

// P' := P ∩ Q·Rᵀ, evaluated as P[a][b] && (Q[a] ∩ R[b] ≠ ∅).
void narrow_xy(Bits& p, const Bits& q, const Bits& r, const MatrixShape& sp, const MatrixShape& sq, const MatrixShape& sr) {
  for (std::size_t a = 0; a < sp.rows; ++a) {
    const auto qa = row(q, sq, a);
    std::vector<std::size_t> drop;
    for_each_bit(row(std::as_const(p), sp, a), [&](std::size_t b) {
      if (!row_intersects(qa, row(r, sr, b))) drop.push_back(b);
    });
    for (std::size_t b : drop) p.reset(sp.bit(a, b));
  }
}

// Q' := Q ∩ P·R, row by row: Q[a] &= ⋃_{b ∈ P[a]} R[b].
void narrow_xz(const Bits& p, Bits& q, const Bits& r, const MatrixShape& sp, const MatrixShape& sq, const MatrixShape& sr) {
  const auto& k = kernels::active();
  std::vector<Word> acc(sq.stride());
  for (std::size_t a = 0; a < sp.rows; ++a) {
    std::fill(acc.begin(), acc.end(), Word{0});
    for_each_bit(row(p, sp, a), [&](std::size_t b) { k.or_into(acc.data(), row(r, sr, b).data(), acc.size()); });
    k.and_into(row(q, sq, a).data(), acc.data(), acc.size());
  }
}

// R' := R ∩ Pᵀ·Q: R[b] &= ⋃_{a : P[a][b]} Q[a].
void narrow_yz(const Bits& p, const Bits& q, Bits& r, const MatrixShape& sp, const MatrixShape& sq, const MatrixShape& sr) {
  const auto& k = kernels::active();
  Bits acc = make_matrix(sr);
  for (std::size_t a = 0; a < sp.rows; ++a) {
    const auto qa = row(q, sq, a);
    for_each_bit(row(p, sp, a), [&](std::size_t b) { k.or_into(row(acc, sr, b).data(), qa.data(), qa.size()); });
  }
  r &= acc;
}

}  // namespace

std::vector<PropagatorFn> make_path_propagators(const NormalizedCsp& p, const std::vector<PathFn>& which) {
  const RelationEncoding enc(p);
  std::vector<PropagatorFn> out;
  out.reserve(which.size());
  for (const PathFn& f : which) {
    if (!(f.x < f.y && f.y < f.z && f.z < p.variable_count())) throw StructuralError("path function needs x < y < z < m");
    const std::size_t ixy = p.pair_index(f.x, f.y);
    const std::size_t ixz = p.pair_index(f.x, f.z);
    const std::size_t iyz = p.pair_index(f.y, f.z);
    const MatrixShape sp = enc.shape(ixy), sq = enc.shape(ixz), sr = enc.shape(iyz);

    PropagatorFn fn;
    fn.id = path_id(p.names(), f);
    fn.scheme = Scheme({ixy, ixz, iyz});
    fn.idempotent = true;
    fn.tags = {"triple=" + p.names()[f.x] + "," + p.names()[f.y] + "," + p.names()[f.z]};
    switch (f.target) {
      case PathTarget::XY:
        fn.apply = [=](Slice s) { narrow_xy(s[0], s[1], s[2], sp, sq, sr); return s; };
        break;
      case PathTarget::XZ:
        fn.apply = [=](Slice s) { narrow_xz(s[0], s[1], s[2], sp, sq, sr); return s; };
        break;
      case PathTarget::YZ:
        fn.apply = [=](Slice s) { narrow_yz(s[0], s[1], s[2], sp, sq, sr); return s; };
        break;
    }
    out.push_back(std::move(fn));
  }
  return out;
}

std::vector<PathFn> comm_path(const PathFn& f, std::size_t m) {
  const auto [a, b] = f.subscript();
  const std::size_t s = f.superscript();
  std::vector<PathFn> out;
  for (std::size_t u = 0; u < m; ++u) {
    if (u != a && u != b && u != s) out.push_back(PathFn::of(a, b, u));
  }
  return out;
}

CommMap comm_map_path(const std::vector<PathFn>& all, std::size_t m) {
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, int>, std::size_t> index;
  for (std::size_t k = 0; k < all.size(); ++k) index[{all[k].x, all[k].y, all[k].z, static_cast<int>(all[k].target)}] = k;
  CommMap map(all.size());
  for (std::size_t k = 0; k < all.size(); ++k) {
    for (const PathFn& c : comm_path(all[k], m)) {
      auto it = index.find({c.x, c.y, c.z, static_cast<int>(c.target)});
      if (it != index.end()) map[k].push_back(it->second);
    }
    std::sort(map[k].begin(), map[k].end());
  }
  return map;
}

}  // namespace conprop
