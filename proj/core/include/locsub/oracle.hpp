#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "locsub/local_subgroupoid.hpp"

namespace locsub {

// Brute-force, definition-level computations used to ground-truth the fast
// algorithms. Every bound fails loudly with ResourceError.

inline constexpr std::size_t kDefaultMaxNonIdentityArrows = 16;
inline constexpr std::size_t kDefaultMaxRefinements = 1'000'000;
inline constexpr std::size_t kMaxPartitionSubset = 20;
inline constexpr std::size_t kMaxSuitePoints = 4;

/// L_G(U): every wide subgroupoid of G|U, by filtering arrow subsets.
/// Order is deterministic (binary counting over inverse-closed arrow pairs).
std::vector<WideSubgroupoid> enumerate_wide_subgroupoids(const GroupoidPtr& g, PointSet base,
                                                         std::size_t max_arrows = kDefaultMaxNonIdentityArrows);

/// Intersection of all wide H over X with s <= loc(H).
WideSubgroupoid glob_by_subgroupoid_defn(const LocalSubgroupoid& s,
                                         std::size_t max_arrows = kDefaultMaxNonIdentityArrows);

/// Intersection of H_V over the refinements V of `atlas`.
///
/// Only point-indexed refinements are enumerated (for each x a chart i with
/// x in U_i and an open V_x with x in V_x within U_i, carrying H_i|V_x). Any
/// refinement is itself refined by a point-indexed one and H_V only shrinks
/// along refinement, so the intersection is unchanged.
WideSubgroupoid glob_by_refinements(const LocalSubgroupoid& s, const Atlas& atlas,
                                    std::size_t max_refinements = kDefaultMaxRefinements);

/// True iff `subset` admits no split into two nonempty relatively open parts.
/// Relative openness is decided by scanning the opens of the space.
bool connected_by_partition(const FiniteSpace& space, PointSet subset);

/// Every topology on points "1".."n", via the reflexive-transitive relations
/// on n elements (x <= y iff y lies in m(x)).
std::vector<FiniteSpace> all_topologies(std::size_t n);

/// Distinct least neighbourhoods, in point order.
std::vector<PointSet> minimal_neighbourhood_cover(const FiniteSpace& space);

/// Every unordered pair of distinct opens whose union is the whole space.
std::vector<std::vector<PointSet>> two_element_covers(const FiniteSpace& space);

struct SuiteSection {
  Atlas atlas;  // an atlas defining `section`
  LocalSubgroupoid section;
  std::string origin;  // "single-chart" or "minimal-neighbourhood"
};

struct SuiteInstance {
  std::string name;
  SpacePtr space;
  GroupoidPtr groupoid;
  std::vector<WideSubgroupoid> wide;  // L_G(X)
  std::vector<SuiteSection> sections;  // every distinct section reachable
};

struct InstanceSuite {
  std::size_t max_points = 0;
  std::size_t max_extra_arrows = 0;
  std::vector<SuiteInstance> instances;
};

/// All topologies on 1..max_points points, each paired with its pair
/// groupoid and its Z2 group bundle (skipped when the groupoid has more than
/// max_extra_arrows non-identity arrows), plus every section reachable from
/// single-chart and minimal-neighbourhood atlases.
InstanceSuite instance_suite(std::size_t max_points, std::size_t max_extra_arrows);

}  // namespace locsub
