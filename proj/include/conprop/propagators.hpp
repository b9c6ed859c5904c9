#pragma once

// Propagation functions: projections π_i of a constraint (hyper-arc
// consistency) and the three path functions of a variable triple (path
// consistency), in two forms each:
//
//  * model level, on ValueSet / BinaryRelation, used by the literal loop
//    algorithms and by tests;
//  * engine level, as PropagatorFn over bit-encoded product elements, used
//    by cd_run / si_run.
//
// Plus the Comm constructors that feed the CommFiltered update policy.

#include <string>
#include <vector>

#include "conprop/csp.hpp"
#include "conprop/engine.hpp"

namespace conprop {

// ---------------------------------------------------------------------------
// Projections

// X'_i := Π_i(C ∩ (X_1 × ... × X_k)); all other coordinates unchanged.
std::vector<ValueSet> project(const Constraint& c, std::size_t coord, std::vector<ValueSet> x);

enum class Side { First, Second };

// First:  X' := {a ∈ X | ∃ b ∈ Y (a,b) ∈ C}
// Second: Y' := {b ∈ Y | ∃ a ∈ X (a,b) ∈ C}
std::pair<ValueSet, ValueSet> project_binary(const BinaryRelation& c, Side side, ValueSet x, ValueSet y);

// π_{coord+1} of constraint number `constraint`.
struct ProjectionFn {
  std::size_t constraint = 0;
  std::size_t coord = 0;

  friend bool operator==(const ProjectionFn&, const ProjectionFn&) = default;
};

// Maps a CSP's domains to product elements: coordinate v is a bitset over
// the sorted base domain of variable v.
class DomainEncoding {
 public:
  explicit DomainEncoding(const Csp& p);

  ProductElement encode(const std::vector<ValueSet>& domains) const;
  std::vector<ValueSet> decode(const ProductElement& d) const;
  ProductElement bottom() const { return encode(base_); }

  std::size_t index_of(std::size_t var, Value v) const;
  const std::vector<ValueSet>& base() const { return base_; }

 private:
  std::vector<ValueSet> base_;
};

// Every π_i of every constraint, constraint by constraint.
std::vector<ProjectionFn> all_projections(const Csp& p);

// The function set of AC-3: for each binary constraint C, π_1 of C then
// π_1 of C^T (i.e. π_2 of C). Throws UnsupportedInput otherwise.
std::vector<ProjectionFn> arc_projections(const Csp& p);

std::string projection_id(const Csp& p, const ProjectionFn& f);

std::vector<PropagatorFn> make_projection_propagators(const Csp& p, const std::vector<ProjectionFn>& which);

enum class CommVariant {
  // {π_j ≠ π_i of the same constraint} ∪ {π_j of any constraint whose j-th
  // variable is the i-th variable of π_i's constraint}
  Standard,
  // For binary CSPs with several constraints on one pair: only projections
  // onto the same variable from constraints on *other* pairs.
  Modified,
};

// Indices (into `all`) of Comm(all[self]).
std::vector<std::size_t> comm_arc(const Csp& p, std::size_t self, const std::vector<ProjectionFn>& all, CommVariant variant);
CommMap comm_map_arc(const Csp& p, const std::vector<ProjectionFn>& all, CommVariant variant);

// Every unordered variable pair carries at most one constraint.
bool at_most_one_constraint_per_pair(const Csp& p);

// ---------------------------------------------------------------------------
// Path functions

enum class PathTarget { XY, XZ, YZ };

// One of f^z_{x,y}, f^y_{x,z}, f^x_{y,z} for a variable triple x < y < z.
struct PathFn {
  std::size_t x = 0, y = 0, z = 0;
  PathTarget target = PathTarget::XY;

  // f^u_{a,b} for distinct a, b, u in any relative position.
  static PathFn of(std::size_t a, std::size_t b, std::size_t u);

  std::pair<std::size_t, std::size_t> subscript() const;
  std::size_t superscript() const;

  friend bool operator==(const PathFn&, const PathFn&) = default;
};

struct PathSlots {
  BinaryRelation p;  // C_{x,y}
  BinaryRelation q;  // C_{x,z}
  BinaryRelation r;  // C_{y,z}

  friend bool operator==(const PathSlots&, const PathSlots&) = default;
};

// XY: P' := P ∩ Q·Rᵀ   XZ: Q' := Q ∩ P·R   YZ: R' := R ∩ Pᵀ·Q
PathSlots path_apply(PathTarget target, PathSlots slots);

// Relations of a normalized CSP as bit matrices over base-domain indices.
class RelationEncoding {
 public:
  explicit RelationEncoding(const NormalizedCsp& p);

  ProductElement encode(const std::vector<BinaryRelation>& relations) const;
  std::vector<BinaryRelation> decode(const ProductElement& d) const;
  ProductElement bottom(const NormalizedCsp& p) const { return encode(p.relations()); }

  const MatrixShape& shape(std::size_t pair) const { return shapes_[pair]; }

 private:
  std::vector<ValueSet> domains_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<MatrixShape> shapes_;
};

// For each triple x < y < z: f^z_{x,y}, f^y_{x,z}, f^x_{y,z}.
std::vector<PathFn> all_path_fns(std::size_t m);

std::string path_id(const std::vector<std::string>& names, const PathFn& f);

std::vector<PropagatorFn> make_path_propagators(const NormalizedCsp& p, const std::vector<PathFn>& which);

// Comm(f^z_{x,y}) = { f^u_{x,y} | u ∉ {x,y,z} }, exactly m - 3 functions.
std::vector<PathFn> comm_path(const PathFn& f, std::size_t m);
CommMap comm_map_path(const std::vector<PathFn>& all, std::size_t m);

}  // namespace conprop
