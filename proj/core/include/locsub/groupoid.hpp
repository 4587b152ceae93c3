#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "locsub/point_set.hpp"

namespace locsub {

using ArrowId = std::size_t;
using ArrowSet = boost::dynamic_bitset<>;

inline constexpr ArrowId kNoArrow = std::numeric_limits<ArrowId>::max();

struct Arrow {
  std::string id;
  PointId src = 0;
  PointId tgt = 0;
  bool operator==(const Arrow&) const = default;
};

/// Unvalidated, label-based description of a groupoid. Composition is
/// diagrammatic: {first, second, result} means result = first then second.
struct GroupoidData {
  struct ArrowRecord {
    std::string id, src, tgt;
    bool operator==(const ArrowRecord&) const = default;
  };
  struct Composite {
    std::string first, second, result;
    bool operator==(const Composite&) const = default;
  };
  std::vector<std::string> objects;
  std::vector<ArrowRecord> arrows;
  std::vector<std::pair<std::string, std::string>> identity_of;  // object -> arrow id
  std::vector<std::pair<std::string, std::string>> inverse_of;   // arrow id -> arrow id
  std::vector<Composite> compose;
};

/// A finite groupoid whose objects are indexed like the points of a space.
///
/// Immutable. Instances are produced by validate_groupoid() or by one of the
/// constructors below and are usually shared through GroupoidPtr.
class Groupoid {
 public:
  const std::vector<std::string>& objects() const { return objects_; }
  std::size_t object_count() const { return objects_.size(); }
  PointSet all_objects() const { return PointSet::full(objects_.size()); }
  std::optional<PointId> find_object(const std::string& label) const;
  PointId object_index(const std::string& label) const;

  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::size_t arrow_count() const { return arrows_.size(); }
  const Arrow& arrow(ArrowId a) const { return arrows_.at(a); }
  std::optional<ArrowId> find_arrow(const std::string& id) const;
  ArrowId arrow_index(const std::string& id) const;

  ArrowId identity(PointId x) const { return identity_[x]; }
  ArrowId inverse(ArrowId a) const { return inverse_[a]; }
  bool is_identity(ArrowId a) const { return identity_[arrows_[a].src] == a; }
  bool composable(ArrowId a, ArrowId b) const { return arrows_[a].tgt == arrows_[b].src; }
  /// a then b. Requires composable(a, b).
  ArrowId compose(ArrowId a, ArrowId b) const { return table_[a * arrows_.size() + b]; }

  /// Arrows leaving / entering an object, in arrow order.
  const std::vector<ArrowId>& out_arrows(PointId x) const { return out_[x]; }
  const std::vector<ArrowId>& in_arrows(PointId x) const { return in_[x]; }

  /// Arrows with both endpoints in `objects`.
  ArrowSet arrows_within(PointSet objects) const;
  ArrowSet empty_arrow_set() const { return ArrowSet(arrows_.size()); }

  bool operator==(const Groupoid& other) const;

  /// Assembles a groupoid from trusted parts. `compose` is called on every
  /// composable pair. Used by the constructors, which build lawful tables.
  template <typename ComposeFn>
  static Groupoid assemble(std::vector<std::string> objects, std::vector<Arrow> arrows,
                           std::vector<ArrowId> identity, std::vector<ArrowId> inverse,
                           ComposeFn&& compose);

 private:
  Groupoid() = default;
  void index();
  friend Groupoid validate_groupoid(const GroupoidData& data);

  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::vector<ArrowId> identity_;
  std::vector<ArrowId> inverse_;
  std::vector<ArrowId> table_;
  std::vector<std::vector<ArrowId>> out_;
  std::vector<std::vector<ArrowId>> in_;
  std::unordered_map<std::string, PointId> object_index_;
  std::unordered_map<std::string, ArrowId> arrow_index_;
};

using GroupoidPtr = std::shared_ptr<const Groupoid>;

template <typename ComposeFn>
Groupoid Groupoid::assemble(std::vector<std::string> objects, std::vector<Arrow> arrows,
                            std::vector<ArrowId> identity, std::vector<ArrowId> inverse,
                            ComposeFn&& compose) {
  Groupoid g;
  g.objects_ = std::move(objects);
  g.arrows_ = std::move(arrows);
  g.identity_ = std::move(identity);
  g.inverse_ = std::move(inverse);
  g.index();
  const std::size_t n = g.arrows_.size();
  g.table_.assign(n * n, kNoArrow);
  for (ArrowId a = 0; a < n; ++a) {
    for (ArrowId b : g.out_[g.arrows_[a].tgt]) g.table_[a * n + b] = compose(a, b);
  }
  return g;
}

/// Checks every groupoid law and returns the validated value. Throws
/// ValidationError with a category per failure kind; a failed associativity
/// check names the first violating triple.
Groupoid validate_groupoid(const GroupoidData& data);

/// Explicit table form of a groupoid (inverse of validate_groupoid).
GroupoidData to_data(const Groupoid& g);

/// A finite group given by its multiplication table.
class FiniteGroup {
 public:
  /// `mul[i][j]` is the label of elements[i] * elements[j]. Throws
  /// ValidationError(kGroupAxiom) when the table is not a group.
  static FiniteGroup make(std::vector<std::string> elements, const std::string& unit,
                          const std::vector<std::vector<std::string>>& mul);

  const std::vector<std::string>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t unit() const { return unit_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a * order() + b]; }
  std::size_t inv(std::size_t a) const { return inv_[a]; }

  bool operator==(const FiniteGroup&) const = default;

 private:
  std::vector<std::string> elements_;
  std::size_t unit_ = 0;
  std::vector<std::size_t> mul_;
  std::vector<std::size_t> inv_;
};

/// Z/n with elements "0".."n-1".
FiniteGroup cyclic_group(std::size_t n);
/// The one-element group {"e"}.
FiniteGroup trivial_group();

/// A wide subgroupoid of the full subgroupoid G|base.
class WideSubgroupoid {
 public:
  /// Validates: endpoints in base, all identities of base present, closed
  /// under inverse and composition.
  static WideSubgroupoid make(GroupoidPtr parent, PointSet base, ArrowSet arrows);
  static WideSubgroupoid make(GroupoidPtr parent, PointSet base,
                              const std::vector<std::string>& arrow_ids);

  /// No validation. Callers guarantee the invariants.
  static WideSubgroupoid trusted(GroupoidPtr parent, PointSet base, ArrowSet arrows) {
    return WideSubgroupoid(std::move(parent), base, std::move(arrows));
  }

  const Groupoid& parent() const { return *parent_; }
  const GroupoidPtr& parent_ptr() const { return parent_; }
  PointSet base() const { return base_; }
  const ArrowSet& arrows() const { return arrows_; }
  bool contains(ArrowId a) const { return arrows_.test(a); }
  std::size_t arrow_count() const { return arrows_.count(); }
  std::vector<std::string> arrow_ids() const;

  /// Same base, same arrows, structurally equal parents.
  bool operator==(const WideSubgroupoid& other) const;

 private:
  WideSubgroupoid(GroupoidPtr parent, PointSet base, ArrowSet arrows)
      : parent_(std::move(parent)), base_(base), arrows_(std::move(arrows)) {}

  GroupoidPtr parent_;
  PointSet base_;
  ArrowSet arrows_;
};

bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b);

/// The full subgroupoid G|U, with objects and arrows renumbered.
Groupoid full_restriction(const Groupoid& g, PointSet objects);

/// H|V: arrows of H with both endpoints in V. Requires V within base(H).
WideSubgroupoid restrict_wide(const WideSubgroupoid& h, PointSet v);

/// Least wide subgroupoid of G|U containing `seed` (worklist fixpoint).
WideSubgroupoid generate_wide(const GroupoidPtr& g, PointSet base, const ArrowSet& seed);

Partition transitivity_components(const WideSubgroupoid& h);

/// All arrows of G as a wide subgroupoid of itself.
WideSubgroupoid whole(const GroupoidPtr& g);
WideSubgroupoid identities_only(const GroupoidPtr& g, PointSet base);

/// One arrow "p:q" per ordered pair.
Groupoid pair_groupoid(const std::vector<std::string>& points);

/// Arrows "p#g" for g in the fibre over p; source = target = p.
Groupoid group_bundle(const std::vector<std::string>& points,
                      const std::map<std::string, FiniteGroup>& fibers);

/// The space viewed as a groupoid: identity arrows only ("p#e").
Groupoid discrete_groupoid(const std::vector<std::string>& points);

/// R x K for an equivalence relation R (a wide subgroupoid of a pair
/// groupoid). Arrows "p:q#k", product ((x,y),k1)((y,z),k2) = ((x,z),k1k2).
Groupoid rel_times_group(const WideSubgroupoid& relation, const FiniteGroup& k);

/// Image of H under g -> (src g, tgt g), as an equivalence relation inside
/// pair_groupoid(base(H)).
WideSubgroupoid anchor_image(const WideSubgroupoid& h);

WideSubgroupoid intersect_wide(std::span<const WideSubgroupoid> subs);

/// H1 <= H2. Requires the same parent and base(H1) within base(H2).
bool is_subgroupoid(const WideSubgroupoid& h1, const WideSubgroupoid& h2);

/// Re-expresses H inside another groupoid that contains its objects and
/// arrows under the same labels and ids.
WideSubgroupoid transport(const WideSubgroupoid& h, const GroupoidPtr& target);

}  // namespace locsub
