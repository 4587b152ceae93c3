#pragma once

#include <memory>
#include <vector>

#include "locsub/finite_space.hpp"
#include "locsub/groupoid.hpp"

namespace locsub {

using SpacePtr = std::shared_ptr<const FiniteSpace>;

// Germs on a finite space
// -----------------------
// A germ (U, H)_x is the class of (U, H) under agreement on some smaller
// open neighbourhood of x. On a finite space every open neighbourhood of x
// contains the least one, m(x), so two pairs define the same germ exactly
// when H|m(x) = H'|m(x), and (U', H')_x <= (U, H)_x exactly when
// H'|m(x) <= H|m(x). A germ is therefore stored as its canonical
// representative H|m(x), and every "there is a neighbourhood W" clause
// becomes a single containment test at W = m(x).

struct Germ {
  PointId at = 0;
  WideSubgroupoid rep;  // base(rep) == m(at)
  bool operator==(const Germ&) const = default;
};

/// The germ (U, H)_x. U = base(H) must be open and contain x.
Germ germ_at(const FiniteSpace& space, const WideSubgroupoid& h, PointId x);

/// Stalk order. Throws when the germs sit at different points.
bool germ_leq(const Germ& a, const Germ& b);

struct Chart {
  PointSet open;
  WideSubgroupoid sub;  // wide subgroupoid of G|open
};

/// Charts over a space and groupoid. Construction checks each chart on its
/// own; covering and pairwise consistency are checked by section_from_atlas.
class Atlas {
 public:
  static Atlas make(SpacePtr space, GroupoidPtr parent, std::vector<Chart> charts);

  const FiniteSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const Groupoid& parent() const { return *parent_; }
  const GroupoidPtr& parent_ptr() const { return parent_; }
  const std::vector<Chart>& charts() const { return charts_; }

 private:
  Atlas(SpacePtr space, GroupoidPtr parent, std::vector<Chart> charts)
      : space_(std::move(space)), parent_(std::move(parent)), charts_(std::move(charts)) {}

  SpacePtr space_;
  GroupoidPtr parent_;
  std::vector<Chart> charts_;
};

/// A global section of the sheaf of germs of wide subgroupoids, stored as
/// the total map x -> canonical germ at x.
///
/// Continuity (the section condition) on a finite space reads: for y in m(x),
/// rep(y) = rep(x)|m(y). It is enforced by make().
class LocalSubgroupoid {
 public:
  static LocalSubgroupoid make(SpacePtr space, GroupoidPtr parent, std::vector<WideSubgroupoid> reps);

  const FiniteSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const Groupoid& parent() const { return *parent_; }
  const GroupoidPtr& parent_ptr() const { return parent_; }
  const WideSubgroupoid& rep(PointId x) const { return reps_.at(x); }
  const std::vector<WideSubgroupoid>& reps() const { return reps_; }
  Germ germ(PointId x) const { return Germ{x, reps_.at(x)}; }

  bool operator==(const LocalSubgroupoid& other) const;

 private:
  LocalSubgroupoid(SpacePtr space, GroupoidPtr parent, std::vector<WideSubgroupoid> reps)
      : space_(std::move(space)), parent_(std::move(parent)), reps_(std::move(reps)) {}

  SpacePtr space_;
  GroupoidPtr parent_;
  std::vector<WideSubgroupoid> reps_;
};

/// Objects of the groupoid must be the points of the space, in order.
void check_compatible(const FiniteSpace& space, const Groupoid& g);

bool same_space(const SpacePtr& a, const SpacePtr& b);

/// s(x) = (U_i, H_i)_x for any chart containing x. Throws kNonCovering when
/// a point is missed and kInconsistentAtlas naming the earliest point and
/// chart pair that disagree.
LocalSubgroupoid section_from_atlas(const Atlas& atlas);

/// loc(H)(x) = (X, H)_x. H must be wide over all of X.
LocalSubgroupoid loc(const SpacePtr& space, const WideSubgroupoid& h);

/// Least wide subgroupoid H of G with s <= loc(H).
///
/// s <= loc(H) holds iff rep(x) <= H|m(x) for every x, i.e. iff H contains
/// every canonical rep. The least such H is the subgroupoid generated by the
/// union of the reps, which is what is computed here. The oracle module
/// checks this against the intersection definition and the refinement
/// characterisation.
WideSubgroupoid glob(const LocalSubgroupoid& s);

/// s|V as a local subgroupoid of G|V over the subspace V (V open).
LocalSubgroupoid restrict_section(const LocalSubgroupoid& s, PointSet v);

bool section_leq(const LocalSubgroupoid& s, const LocalSubgroupoid& t);

/// H_U: the subgroupoid of G generated by all chart subgroupoids.
WideSubgroupoid generated_from_atlas(const Atlas& atlas);

/// V refines U: each chart of V is the restriction of some chart of U to a
/// smaller open.
bool refines(const Atlas& v, const Atlas& u);

/// Charts (m(x), rep(x)), one per point.
Atlas point_indexed_atlas(const LocalSubgroupoid& s);

/// The single chart (X, H).
Atlas single_chart_atlas(const SpacePtr& space, const WideSubgroupoid& h);

}  // namespace locsub
