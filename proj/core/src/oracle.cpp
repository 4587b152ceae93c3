#include "locsub/oracle.hpp"

#include <algorithm>
#include <unordered_set>

#include "locsub/errors.hpp"

namespace locsub {

std::vector<WideSubgroupoid> enumerate_wide_subgroupoids(const GroupoidPtr& gp, PointSet base,
                                                         std::size_t max_arrows) {
  const Groupoid& g = *gp;
  const ArrowSet within = g.arrows_within(base);
  ArrowSet identities = g.empty_arrow_set();
  base.for_each([&](PointId x) { identities.set(g.identity(x)); });

  // An arrow and its inverse are always chosen together.
  std::vector<std::vector<ArrowId>> classes;
  std::size_t non_identity = 0;
  for (ArrowId a = within.find_first(); a != ArrowSet::npos; a = within.find_next(a)) {
    if (identities.test(a)) continue;
    ++non_identity;
    if (g.inverse(a) < a) continue;
    classes.push_back(g.inverse(a) == a ? std::vector<ArrowId>{a} : std::vector<ArrowId>{a, g.inverse(a)});
  }
  if (non_identity > max_arrows) {
    throw ResourceError("G|U has " + std::to_string(non_identity) + " non-identity arrows, bound is " +
                        std::to_string(max_arrows));
  }

  std::vector<WideSubgroupoid> out;
  const std::uint64_t limit = std::uint64_t{1} << classes.size();
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    ArrowSet s = identities;
    for (std::size_t i = 0; i < classes.size(); ++i)
      if ((mask >> i) & 1U)
        for (ArrowId a : classes[i]) s.set(a);
    bool closed = true;
    for (ArrowId a = s.find_first(); closed && a != ArrowSet::npos; a = s.find_next(a)) {
      for (ArrowId b : g.out_arrows(g.arrow(a).tgt)) {
        if (s.test(b) && !s.test(g.compose(a, b))) {
          closed = false;
          break;
        }
      }
    }
    if (closed) out.push_back(WideSubgroupoid::trusted(gp, base, std::move(s)));
  }
  return out;
}

WideSubgroupoid glob_by_subgroupoid_defn(const LocalSubgroupoid& s, std::size_t max_arrows) {
  std::vector<WideSubgroupoid> above;
  for (WideSubgroupoid& h : enumerate_wide_subgroupoids(s.parent_ptr(), s.space().all(), max_arrows)) {
    if (section_leq(s, loc(s.space_ptr(), h))) above.push_back(std::move(h));
  }
  if (above.empty()) throw InvariantError("no wide subgroupoid dominates the section; G itself must");
  return intersect_wide(above);
}

WideSubgroupoid glob_by_refinements(const LocalSubgroupoid& s, const Atlas& atlas, std::size_t max_refinements) {
  const FiniteSpace& space = s.space();
  if (!(section_from_atlas(atlas) == s)) {
    throw ValidationError(ErrorCategory::kMismatch, "atlas does not define the local subgroupoid");
  }
  // Per point, the distinct candidate charts (V_x, H_i|V_x).
  std::vector<std::vector<Chart>> choices(space.size());
  std::size_t product = 1;
  for (PointId x = 0; x < space.size(); ++x) {
    for (const Chart& c : atlas.charts()) {
      if (!c.open.contains(x)) continue;
      for (PointSet v : space.opens()) {
        if (!v.contains(x) || !v.subset_of(c.open)) continue;
        Chart piece{v, restrict_wide(c.sub, v)};
        const bool seen = std::any_of(choices[x].begin(), choices[x].end(), [&](const Chart& o) {
          return o.open == piece.open && o.sub.arrows() == piece.sub.arrows();
        });
        if (!seen) choices[x].push_back(std::move(piece));
      }
    }
    product *= choices[x].size();
    if (product > max_refinements) {
      throw ResourceError("more than " + std::to_string(max_refinements) + " point-indexed refinements");
    }
  }

  std::optional<ArrowSet> meet;
  std::vector<std::size_t> pick(space.size(), 0);
  while (true) {
    std::vector<Chart> charts;
    charts.reserve(space.size());
    for (PointId x = 0; x < space.size(); ++x) charts.push_back(choices[x][pick[x]]);
    const Atlas refinement = Atlas::make(atlas.space_ptr(), atlas.parent_ptr(), std::move(charts));
    const WideSubgroupoid hv = generated_from_atlas(refinement);
    if (meet) *meet &= hv.arrows();
    else meet = hv.arrows();

    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  if (!meet) meet = s.parent().empty_arrow_set();  // empty space
  return WideSubgroupoid::trusted(s.parent_ptr(), space.all(), std::move(*meet));
}

bool connected_by_partition(const FiniteSpace& space, PointSet subset) {
  if (subset.size() > kMaxPartitionSubset) {
    throw ResourceError("partition search is limited to " + std::to_string(kMaxPartitionSubset) + " points");
  }
  if (subset.size() <= 1) return true;
  std::unordered_set<std::uint64_t> traces;
  for (PointSet o : space.opens()) traces.insert((o & subset).bits());
  auto rel_open = [&](PointSet a) { return traces.count(a.bits()) > 0; };

  const std::vector<PointId> ids = subset.ids();
  // Parts containing ids[0]; the complement is the other side.
  const std::uint64_t limit = std::uint64_t{1} << (ids.size() - 1);
  for (std::uint64_t mask = 0; mask + 1 < limit; ++mask) {
    PointSet part = PointSet::single(ids[0]);
    for (std::size_t i = 1; i < ids.size(); ++i)
      if ((mask >> (i - 1)) & 1U) part.insert(ids[i]);
    if (rel_open(part) && rel_open(subset - part)) return false;
  }
  return true;
}

std::vector<FiniteSpace> all_topologies(std::size_t n) {
  if (n > kMaxSuitePoints) throw ResourceError("topology enumeration is limited to 4 points");
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  std::vector<std::pair<PointId, PointId>> pairs;
  for (PointId x = 0; x < n; ++x)
    for (PointId y = 0; y < n; ++y)
      if (x != y) pairs.emplace_back(x, y);

  std::vector<FiniteSpace> out;
  const std::uint64_t limit = std::uint64_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    std::vector<PointSet> up(n);
    for (PointId x = 0; x < n; ++x) up[x].insert(x);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if ((mask >> i) & 1U) up[pairs[i].first].insert(pairs[i].second);
    bool transitive = true;
    for (PointId x = 0; x < n && transitive; ++x)
      up[x].for_each([&](PointId y) { transitive = transitive && up[y].subset_of(up[x]); });
    if (transitive) out.push_back(FiniteSpace::from_minimal_opens(labels, up));
  }
  return out;
}

std::vector<PointSet> minimal_neighbourhood_cover(const FiniteSpace& space) {
  std::vector<PointSet> cover;
  for (PointSet m : space.minimal_opens())
    if (std::find(cover.begin(), cover.end(), m) == cover.end()) cover.push_back(m);
  return cover;
}

std::vector<std::vector<PointSet>> two_element_covers(const FiniteSpace& space) {
  std::vector<std::vector<PointSet>> covers;
  const auto& opens = space.opens();
  for (std::size_t i = 0; i < opens.size(); ++i)
    for (std::size_t j = i + 1; j < opens.size(); ++j)
      if ((opens[i] | opens[j]) == space.all()) covers.push_back({opens[i], opens[j]});
  return covers;
}

namespace {

void add_sections(SuiteInstance& inst) {
  auto add = [&](Atlas atlas, LocalSubgroupoid s, const char* origin) {
    const bool seen = std::any_of(inst.sections.begin(), inst.sections.end(),
                                  [&](const SuiteSection& o) { return o.section == s; });
    if (!seen) inst.sections.push_back(SuiteSection{std::move(atlas), std::move(s), origin});
  };
  for (const WideSubgroupoid& h : inst.wide) {
    Atlas a = single_chart_atlas(inst.space, h);
    LocalSubgroupoid s = section_from_atlas(a);
    add(std::move(a), std::move(s), "single-chart");
  }

  const FiniteSpace& space = *inst.space;
  std::vector<std::vector<WideSubgroupoid>> local(space.size());
  std::size_t product = 1;
  for (PointId x = 0; x < space.size(); ++x) {
    local[x] = enumerate_wide_subgroupoids(inst.groupoid, space.minimal_open(x));
    product *= local[x].size();
    if (product > kDefaultMaxRefinements) throw ResourceError("too many minimal-neighbourhood atlases");
  }
  std::vector<std::size_t> pick(space.size(), 0);
  while (true) {
    bool consistent = true;
    for (PointId x = 0; x < space.size() && consistent; ++x) {
      space.minimal_open(x).for_each([&](PointId y) {
        consistent = consistent && restrict_wide(local[x][pick[x]], space.minimal_open(y)) == local[y][pick[y]];
      });
    }
    if (consistent) {
      std::vector<Chart> charts;
      for (PointId x = 0; x < space.size(); ++x) charts.push_back(Chart{space.minimal_open(x), local[x][pick[x]]});
      Atlas a = Atlas::make(inst.space, inst.groupoid, std::move(charts));
      LocalSubgroupoid s = section_from_atlas(a);
      add(std::move(a), std::move(s), "minimal-neighbourhood");
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == local[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
}

}  // namespace

InstanceSuite instance_suite(std::size_t max_points, std::size_t max_extra_arrows) {
  if (max_points > kMaxSuitePoints) {
    throw ResourceError("instance suites are limited to " + std::to_string(kMaxSuitePoints) + " points");
  }
  InstanceSuite suite{max_points, max_extra_arrows, {}};
  for (std::size_t n = 1; n <= max_points; ++n) {
    const std::vector<FiniteSpace> spaces = all_topologies(n);
    for (std::size_t t = 0; t < spaces.size(); ++t) {
      auto space = std::make_shared<const FiniteSpace>(spaces[t]);
      const std::string prefix = "n" + std::to_string(n) + "-t" + std::to_string(t);
      std::map<std::string, FiniteGroup> fibers;
      for (const auto& l : space->labels()) fibers.emplace(l, cyclic_group(2));
      const std::pair<std::string, GroupoidPtr> groupoids[] = {
          {"pair", std::make_shared<const Groupoid>(pair_groupoid(space->labels()))},
          {"bundleZ2", std::make_shared<const Groupoid>(group_bundle(space->labels(), fibers))},
      };
      for (const auto& [kind, g] : groupoids) {
        if (g->arrow_count() - g->object_count() > max_extra_arrows) continue;
        SuiteInstance inst{prefix + "-" + kind, space, g, enumerate_wide_subgroupoids(g, space->all()), {}};
        add_sections(inst);
        suite.instances.push_back(std::move(inst));
      }
    }
  }
  return suite;
}

}  // namespace locsub
