#pragma once

// Named fixtures and brute-force reference implementations used across the
// tests. The reference code deliberately avoids the library's algorithms:
// it works on plain vectors and bitmasks and recomputes everything from
// definitions.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "locsub/finite_space.hpp"
#include "locsub/groupoid.hpp"
#include "locsub/local_subgroupoid.hpp"

namespace locsub::testing {

inline SpacePtr make_space(const std::vector<std::string>& points,
                           const std::vector<std::vector<std::string>>& basis) {
  return std::make_shared<const FiniteSpace>(space_from_basis(points, basis));
}

inline SpacePtr sp_disc2() { return make_space({"1", "2"}, {{"1"}, {"2"}}); }
inline SpacePtr sp_ind2() { return make_space({"1", "2"}, {{"1", "2"}}); }
inline SpacePtr sp_sier() { return make_space({"1", "2"}, {{"2"}, {"1", "2"}}); }
inline SpacePtr sp_nc() {
  return make_space({"x", "p", "q", "y", "r", "z"},
                    {{"x", "p", "q"}, {"y", "p", "r"}, {"z", "r", "q"}, {"p"}, {"q"}, {"r"}});
}

inline GroupoidPtr pair_of(const FiniteSpace& space) {
  return std::make_shared<const Groupoid>(pair_groupoid(space.labels()));
}

inline GroupoidPtr z2_bundle_of(const FiniteSpace& space) {
  std::map<std::string, FiniteGroup> fibers;
  for (const auto& p : space.labels()) fibers.emplace(p, cyclic_group(2));
  return std::make_shared<const Groupoid>(group_bundle(space.labels(), fibers));
}

inline WideSubgroupoid sub(const GroupoidPtr& g, const FiniteSpace& space, const std::vector<std::string>& base,
                           const std::vector<std::string>& ids) {
  return WideSubgroupoid::make(g, space.set_of(base), ids);
}

struct NcFixture {
  SpacePtr space = sp_nc();
  GroupoidPtr g = pair_of(*space);
  Atlas atlas = Atlas::make(
      space, g,
      {Chart{space->set_of({"x", "p", "q"}), sub(g, *space, {"x", "p", "q"}, {"x:x", "p:p", "q:q"})},
       Chart{space->set_of({"y", "p", "r"}),
             sub(g, *space, {"y", "p", "r"}, {"y:y", "p:p", "r:r", "p:r", "r:p"})},
       Chart{space->set_of({"z", "r", "q"}),
             sub(g, *space, {"z", "r", "q"}, {"z:z", "r:r", "q:q", "r:q", "q:r"})}});
  LocalSubgroupoid s = section_from_atlas(atlas);
};

// Sorted arrow ids, for readable comparisons.
inline std::vector<std::string> ids_of(const WideSubgroupoid& h) {
  auto v = h.arrow_ids();
  std::sort(v.begin(), v.end());
  return v;
}

inline std::vector<std::vector<std::string>> label_partition(const FiniteSpace& space, const Partition& parts) {
  std::vector<std::vector<std::string>> out;
  for (PointSet p : parts) {
    auto l = space.labels_of(p);
    std::sort(l.begin(), l.end());
    out.push_back(l);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace naive {

// Smallest family containing the basis, empty set and whole space, closed
// under pairwise union and intersection, by fixpoint iteration.
inline std::set<std::uint64_t> topology(std::size_t n, const std::vector<std::uint64_t>& basis) {
  std::set<std::uint64_t> opens{0, n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
  opens.insert(basis.begin(), basis.end());
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<std::uint64_t> cur(opens.begin(), opens.end());
    for (auto a : cur)
      for (auto b : cur) grew |= opens.insert(a | b).second | opens.insert(a & b).second;
  }
  return opens;
}

inline std::set<std::uint64_t> opens_of(const FiniteSpace& space) {
  std::set<std::uint64_t> out;
  for (PointSet o : space.opens()) out.insert(o.bits());
  return out;
}

// A subset is connected iff no split into two nonempty parts has both parts
// of the form O ∩ subset.
inline bool connected(const FiniteSpace& space, std::uint64_t subset) {
  std::set<std::uint64_t> traces;
  for (PointSet o : space.opens()) traces.insert(o.bits() & subset);
  for (std::uint64_t a = subset; a != 0; a = (a - 1) & subset) {
    const std::uint64_t b = subset & ~a;
    if (a != subset && traces.count(a) && traces.count(b)) return false;
  }
  return true;
}

// Arrow subsets of G|base containing every identity and closed under
// composition and inverse, by filtering all 2^k subsets of arrow indices.
inline std::vector<std::vector<ArrowId>> wide_subgroupoids(const Groupoid& g, std::uint64_t base) {
  std::vector<ArrowId> inside;
  for (ArrowId a = 0; a < g.arrow_count(); ++a) {
    const auto& ar = g.arrow(a);
    if (((base >> ar.src) & 1U) && ((base >> ar.tgt) & 1U)) inside.push_back(a);
  }
  std::vector<std::vector<ArrowId>> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << inside.size()); ++m) {
    std::set<ArrowId> s;
    for (std::size_t i = 0; i < inside.size(); ++i)
      if ((m >> i) & 1U) s.insert(inside[i]);
    bool ok = true;
    for (std::size_t x = 0; x < g.object_count() && ok; ++x)
      if (((base >> x) & 1U) && !s.count(g.identity(x))) ok = false;
    for (ArrowId a : s) {
      if (!ok) break;
      if (!s.count(g.inverse(a))) ok = false;
      for (ArrowId b : s)
        if (ok && g.arrow(a).tgt == g.arrow(b).src && !s.count(g.compose(a, b))) ok = false;
    }
    if (ok) out.emplace_back(s.begin(), s.end());
  }
  return out;
}

// Least arrow set containing `seed` and identities on `base`, closed under
// composition and inverse, by repeated full scans.
inline std::set<ArrowId> closure(const Groupoid& g, std::uint64_t base, std::set<ArrowId> s) {
  for (std::size_t x = 0; x < g.object_count(); ++x)
    if ((base >> x) & 1U) s.insert(g.identity(x));
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<ArrowId> cur(s.begin(), s.end());
    for (ArrowId a : cur) {
      grew |= s.insert(g.inverse(a)).second;
      for (ArrowId b : cur)
        if (g.arrow(a).tgt == g.arrow(b).src) grew |= s.insert(g.compose(a, b)).second;
    }
  }
  return s;
}

inline std::set<ArrowId> arrow_set(const WideSubgroupoid& h) {
  std::set<ArrowId> out;
  for (ArrowId a = 0; a < h.parent().arrow_count(); ++a)
    if (h.contains(a)) out.insert(a);
  return out;
}

}  // namespace naive
}  // namespace locsub::testing
