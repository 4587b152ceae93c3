#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "locsub/point_set.hpp"

namespace locsub {

inline constexpr std::size_t kDefaultMaxOpens = 4096;

/// A finite topological space.
///
/// Points carry string labels and are indexed by declaration order. Every
/// finite space is Alexandrov, so each point x has a least open neighbourhood
/// m(x); the table of these determines the topology. The full family of
/// opens is also materialised (sorted by size, then lexicographically) and
/// is bounded by a cap supplied at construction.
class FiniteSpace {
 public:
  /// Builds the space from the table of least neighbourhoods. The table must
  /// satisfy x in m(x) and y in m(x) => m(y) subset of m(x).
  static FiniteSpace from_minimal_opens(std::vector<std::string> labels,
                                        std::vector<PointSet> minimal_opens,
                                        std::size_t max_opens = kDefaultMaxOpens);

  std::size_t size() const { return labels_.size(); }
  PointSet all() const { return PointSet::full(size()); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(PointId p) const { return labels_.at(p); }
  std::optional<PointId> find(const std::string& label) const;
  /// Throws ValidationError(kUnknownLabel).
  PointId index_of(const std::string& label) const;
  PointSet set_of(const std::vector<std::string>& labels) const;
  std::vector<std::string> labels_of(PointSet set) const;

  PointSet minimal_open(PointId p) const { return minimal_.at(p); }
  const std::vector<PointSet>& minimal_opens() const { return minimal_; }
  const std::vector<PointSet>& opens() const { return opens_; }

  /// U is open iff it contains m(x) for each of its points x.
  bool is_open(PointSet set) const;
  /// Specialisation preorder: leq(x, y) iff y lies in m(x).
  bool leq(PointId x, PointId y) const { return minimal_[x].contains(y); }

  /// Subspace on an arbitrary subset. Points keep their relative order.
  FiniteSpace subspace(PointSet subset, std::size_t max_opens = kDefaultMaxOpens) const;

  bool operator==(const FiniteSpace& other) const {
    return labels_ == other.labels_ && minimal_ == other.minimal_;
  }

 private:
  FiniteSpace() = default;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, PointId> index_;
  std::vector<PointSet> minimal_;
  std::vector<PointSet> opens_;
};

/// Topology generated by `basis` together with the empty and full sets.
/// Throws ValidationError naming the first unknown label.
FiniteSpace space_from_basis(const std::vector<std::string>& points,
                             const std::vector<std::vector<std::string>>& basis,
                             std::size_t max_opens = kDefaultMaxOpens);

/// Same as above with an index-based basis over `points`.
FiniteSpace space_from_basis(const std::vector<std::string>& points,
                             const std::vector<PointSet>& basis,
                             std::size_t max_opens = kDefaultMaxOpens);

/// Intersection of all opens containing x. Throws on an unknown point.
PointSet minimal_open(const FiniteSpace& space, const std::string& x);

std::vector<PointSet> enumerate_opens(const FiniteSpace& space);

/// Connected components of `subset` in the subspace topology. Two points are
/// adjacent when one lies in the least neighbourhood of the other; components
/// of that comparability graph are the topological components.
Partition connected_components(const FiniteSpace& space, PointSet subset);

struct RelativeOpenness {
  bool is_relatively_open = false;
  bool is_relatively_closed = false;
  bool operator==(const RelativeOpenness&) const = default;
};

/// Openness and closedness of `part` inside `whole` (part must be a subset).
RelativeOpenness relative_openness(const FiniteSpace& space, PointSet part, PointSet whole);

/// Coarsest topology finer than `space` in which every extra set is open.
FiniteSpace generate_topology(const FiniteSpace& space, const std::vector<PointSet>& extra_sets,
                              std::size_t max_opens = kDefaultMaxOpens);

/// True iff every open of `coarse` is open in `fine` (same point set).
bool is_finer(const FiniteSpace& fine, const FiniteSpace& coarse);

}  // namespace locsub
