#include "locsub/local_subgroupoid.hpp"

#include <algorithm>

#include "locsub/errors.hpp"

namespace locsub {
namespace {

[[noreturn]] void fail(ErrorCategory c, const std::string& msg) { throw ValidationError(c, msg); }

void check_same_context(const LocalSubgroupoid& s, const LocalSubgroupoid& t) {
  if (!same_space(s.space_ptr(), t.space_ptr()) || !same_groupoid(s.parent_ptr(), t.parent_ptr())) {
    fail(ErrorCategory::kMismatch, "local subgroupoids live over different spaces or groupoids");
  }
}

}  // namespace

void check_compatible(const FiniteSpace& space, const Groupoid& g) {
  if (space.labels() != g.objects()) {
    fail(ErrorCategory::kMismatch, "groupoid objects must be the points of the space");
  }
}

bool same_space(const SpacePtr& a, const SpacePtr& b) { return a == b || *a == *b; }

Germ germ_at(const FiniteSpace& space, const WideSubgroupoid& h, PointId x) {
  if (!space.is_open(h.base())) fail(ErrorCategory::kNotOpen, "germ requires a subgroupoid over an open set");
  if (!h.base().contains(x)) fail(ErrorCategory::kPrecondition, "point '" + space.label(x) + "' is outside the chart");
  return Germ{x, restrict_wide(h, space.minimal_open(x))};
}

bool germ_leq(const Germ& a, const Germ& b) {
  if (a.at != b.at) fail(ErrorCategory::kMismatch, "germs at different points are incomparable");
  return is_subgroupoid(a.rep, b.rep);
}

Atlas Atlas::make(SpacePtr space, GroupoidPtr parent, std::vector<Chart> charts) {
  check_compatible(*space, *parent);
  for (std::size_t i = 0; i < charts.size(); ++i) {
    const Chart& c = charts[i];
    if (!space->is_open(c.open)) fail(ErrorCategory::kNotOpen, "chart " + std::to_string(i) + " is not over an open set");
    if (c.sub.base() != c.open) fail(ErrorCategory::kNotWide, "chart " + std::to_string(i) + " is not wide over its open");
    if (!same_groupoid(c.sub.parent_ptr(), parent)) {
      fail(ErrorCategory::kMismatch, "chart " + std::to_string(i) + " belongs to another groupoid");
    }
  }
  return Atlas(std::move(space), std::move(parent), std::move(charts));
}

LocalSubgroupoid LocalSubgroupoid::make(SpacePtr space, GroupoidPtr parent, std::vector<WideSubgroupoid> reps) {
  check_compatible(*space, *parent);
  if (reps.size() != space->size()) fail(ErrorCategory::kSchema, "one germ per point required");
  for (PointId x = 0; x < reps.size(); ++x) {
    if (reps[x].base() != space->minimal_open(x) || !same_groupoid(reps[x].parent_ptr(), parent)) {
      fail(ErrorCategory::kMismatch, "germ at '" + space->label(x) + "' is not canonical");
    }
  }
  for (PointId x = 0; x < reps.size(); ++x) {
    space->minimal_open(x).for_each([&](PointId y) {
      if (!(restrict_wide(reps[x], space->minimal_open(y)) == reps[y])) {
        fail(ErrorCategory::kInconsistentAtlas, "germs at '" + space->label(x) + "' and '" + space->label(y) +
                                                    "' do not glue");
      }
    });
  }
  return LocalSubgroupoid(std::move(space), std::move(parent), std::move(reps));
}

bool LocalSubgroupoid::operator==(const LocalSubgroupoid& other) const {
  return same_space(space_, other.space_) && same_groupoid(parent_, other.parent_) && reps_ == other.reps_;
}

LocalSubgroupoid section_from_atlas(const Atlas& atlas) {
  const FiniteSpace& space = atlas.space();
  const auto& charts = atlas.charts();
  std::vector<WideSubgroupoid> reps;
  reps.reserve(space.size());
  for (PointId x = 0; x < space.size(); ++x) {
    std::ptrdiff_t first = -1;
    std::optional<Germ> germ;
    for (std::size_t i = 0; i < charts.size(); ++i) {
      if (!charts[i].open.contains(x)) continue;
      Germ g = germ_at(space, charts[i].sub, x);
      if (!germ) {
        germ = std::move(g);
        first = static_cast<std::ptrdiff_t>(i);
      } else if (!(g == *germ)) {
        fail(ErrorCategory::kInconsistentAtlas, "charts " + std::to_string(first) + " and " + std::to_string(i) +
                                                    " define different germs at '" + space.label(x) + "'");
      }
    }
    if (!germ) fail(ErrorCategory::kNonCovering, "no chart contains '" + space.label(x) + "'");
    reps.push_back(std::move(germ->rep));
  }
  return LocalSubgroupoid::make(atlas.space_ptr(), atlas.parent_ptr(), std::move(reps));
}

LocalSubgroupoid loc(const SpacePtr& space, const WideSubgroupoid& h) {
  check_compatible(*space, h.parent());
  if (h.base() != space->all()) fail(ErrorCategory::kNotWide, "loc needs a subgroupoid wide over the whole space");
  std::vector<WideSubgroupoid> reps;
  reps.reserve(space->size());
  for (PointId x = 0; x < space->size(); ++x) reps.push_back(restrict_wide(h, space->minimal_open(x)));
  return LocalSubgroupoid::make(space, h.parent_ptr(), std::move(reps));
}

WideSubgroupoid glob(const LocalSubgroupoid& s) {
  ArrowSet seed = s.parent().empty_arrow_set();
  for (const auto& rep : s.reps()) seed |= rep.arrows();
  return generate_wide(s.parent_ptr(), s.space().all(), seed);
}

LocalSubgroupoid restrict_section(const LocalSubgroupoid& s, PointSet v) {
  const FiniteSpace& space = s.space();
  if (!space.is_open(v)) fail(ErrorCategory::kNotOpen, "sections restrict only to open sets");
  auto sub = std::make_shared<const FiniteSpace>(
      space.subspace(v, std::max(kDefaultMaxOpens, space.opens().size())));
  auto parent = std::make_shared<const Groupoid>(full_restriction(s.parent(), v));
  // V is open, so m_V(x) = m(x) and each rep carries over unchanged.
  std::vector<WideSubgroupoid> reps;
  v.for_each([&](PointId x) { reps.push_back(transport(s.rep(x), parent)); });
  return LocalSubgroupoid::make(std::move(sub), std::move(parent), std::move(reps));
}

bool section_leq(const LocalSubgroupoid& s, const LocalSubgroupoid& t) {
  check_same_context(s, t);
  for (PointId x = 0; x < s.space().size(); ++x) {
    if (!s.rep(x).arrows().is_subset_of(t.rep(x).arrows())) return false;
  }
  return true;
}

WideSubgroupoid generated_from_atlas(const Atlas& atlas) {
  section_from_atlas(atlas);
  ArrowSet seed = atlas.parent().empty_arrow_set();
  for (const Chart& c : atlas.charts()) seed |= c.sub.arrows();
  return generate_wide(atlas.parent_ptr(), atlas.space().all(), seed);
}

bool refines(const Atlas& v, const Atlas& u) {
  for (const Chart& fine : v.charts()) {
    const bool found = std::any_of(u.charts().begin(), u.charts().end(), [&](const Chart& coarse) {
      return fine.open.subset_of(coarse.open) && restrict_wide(coarse.sub, fine.open) == fine.sub;
    });
    if (!found) return false;
  }
  return true;
}

Atlas point_indexed_atlas(const LocalSubgroupoid& s) {
  std::vector<Chart> charts;
  for (PointId x = 0; x < s.space().size(); ++x) charts.push_back(Chart{s.space().minimal_open(x), s.rep(x)});
  return Atlas::make(s.space_ptr(), s.parent_ptr(), std::move(charts));
}

Atlas single_chart_atlas(const SpacePtr& space, const WideSubgroupoid& h) {
  return Atlas::make(space, h.parent_ptr(), {Chart{h.base(), h}});
}

}  // namespace locsub
