#pragma once

// Seeded random instances for property checks.

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "locsub/errors.hpp"
#include "locsub/local_subgroupoid.hpp"
#include "locsub/oracle.hpp"

namespace locsub::testing {

class Gen {
 public:
  explicit Gen(std::uint32_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  // Random topology on 1..4 points from the full enumeration.
  SpacePtr space() {
    const std::size_t n = 1 + below(kMaxSuitePoints);
    auto& tops = topologies(n);
    return std::make_shared<const FiniteSpace>(tops[below(tops.size())]);
  }

  GroupoidPtr groupoid(const FiniteSpace& sp) {
    const auto& pts = sp.labels();
    switch (below(3)) {
      case 0:
        return std::make_shared<const Groupoid>(pair_groupoid(pts));
      case 1: {
        std::map<std::string, FiniteGroup> fibers;
        for (const auto& p : pts) fibers.emplace(p, cyclic_group(1 + below(3)));
        return std::make_shared<const Groupoid>(group_bundle(pts, fibers));
      }
      default: {
        const auto pair = std::make_shared<const Groupoid>(pair_groupoid(pts));
        return std::make_shared<const Groupoid>(rel_times_group(wide(pair, sp.all()), cyclic_group(2)));
      }
    }
  }

  ArrowSet arrows(const GroupoidPtr& g, PointSet base, double density = 0.25) {
    const ArrowSet within = g->arrows_within(base);
    ArrowSet out = g->empty_arrow_set();
    for (ArrowId a = within.find_first(); a != ArrowSet::npos; a = within.find_next(a))
      if (coin(density)) out.set(a);
    return out;
  }

  WideSubgroupoid wide(const GroupoidPtr& g, PointSet base) {
    return generate_wide(g, base, arrows(g, base, coin() ? 0.1 : 0.3));
  }

  // Either loc of a random subgroupoid or a random consistent atlas.
  LocalSubgroupoid section(const SpacePtr& sp, const GroupoidPtr& g) {
    if (coin()) return loc(sp, wide(g, sp->all()));
    for (int attempt = 0; attempt < 8; ++attempt) {
      std::vector<Chart> charts;
      for (PointId x = 0; x < sp->size(); ++x) {
        const PointSet m = sp->minimal_open(x);
        charts.push_back(Chart{m, wide(g, m)});
      }
      try {
        return section_from_atlas(Atlas::make(sp, g, std::move(charts)));
      } catch (const ValidationError&) {
      }
    }
    return loc(sp, wide(g, sp->all()));
  }

 private:
  const std::vector<FiniteSpace>& topologies(std::size_t n) {
    auto it = cache_.find(n);
    if (it == cache_.end()) it = cache_.emplace(n, all_topologies(n)).first;
    return it->second;
  }

  std::mt19937 rng_;
  std::map<std::size_t, std::vector<FiniteSpace>> cache_;
};

}  // namespace locsub::testing
