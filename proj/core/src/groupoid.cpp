#include "locsub/groupoid.hpp"

#include <algorithm>

#include "locsub/errors.hpp"
#include "union_find.hpp"

namespace locsub {
namespace {

[[noreturn]] void fail(ErrorCategory c, const std::string& msg) { throw ValidationError(c, msg); }

std::string quote(const std::string& s) { return "'" + s + "'"; }

}  // namespace

// ---------------------------------------------------------------------------
// Groupoid

void Groupoid::index() {
  if (objects_.size() > kMaxPoints) {
    throw ResourceError("groupoids are limited to " + std::to_string(kMaxPoints) + " objects");
  }
  object_index_.clear();
  arrow_index_.clear();
  for (PointId p = 0; p < objects_.size(); ++p) object_index_.emplace(objects_[p], p);
  for (ArrowId a = 0; a < arrows_.size(); ++a) arrow_index_.emplace(arrows_[a].id, a);
  out_.assign(objects_.size(), {});
  in_.assign(objects_.size(), {});
  for (ArrowId a = 0; a < arrows_.size(); ++a) {
    out_[arrows_[a].src].push_back(a);
    in_[arrows_[a].tgt].push_back(a);
  }
}

std::optional<PointId> Groupoid::find_object(const std::string& label) const {
  auto it = object_index_.find(label);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

PointId Groupoid::object_index(const std::string& label) const {
  if (auto p = find_object(label)) return *p;
  fail(ErrorCategory::kUnknownLabel, "unknown object " + quote(label));
}

std::optional<ArrowId> Groupoid::find_arrow(const std::string& id) const {
  auto it = arrow_index_.find(id);
  if (it == arrow_index_.end()) return std::nullopt;
  return it->second;
}

ArrowId Groupoid::arrow_index(const std::string& id) const {
  if (auto a = find_arrow(id)) return *a;
  fail(ErrorCategory::kUnknownLabel, "unknown arrow " + quote(id));
}

ArrowSet Groupoid::arrows_within(PointSet objects) const {
  ArrowSet s(arrows_.size());
  for (ArrowId a = 0; a < arrows_.size(); ++a) {
    if (objects.contains(arrows_[a].src) && objects.contains(arrows_[a].tgt)) s.set(a);
  }
  return s;
}

bool Groupoid::operator==(const Groupoid& other) const {
  return objects_ == other.objects_ && arrows_ == other.arrows_ && identity_ == other.identity_ &&
         inverse_ == other.inverse_ && table_ == other.table_;
}

Groupoid validate_groupoid(const GroupoidData& data) {
  Groupoid g;
  g.objects_ = data.objects;
  if (g.objects_.size() > kMaxPoints) {
    throw ResourceError("groupoids are limited to " + std::to_string(kMaxPoints) + " objects");
  }
  std::unordered_map<std::string, PointId> objects;
  for (PointId p = 0; p < data.objects.size(); ++p) {
    if (!objects.emplace(data.objects[p], p).second) {
      fail(ErrorCategory::kDuplicateLabel, "duplicate object " + quote(data.objects[p]));
    }
  }
  auto object = [&](const std::string& label) {
    auto it = objects.find(label);
    if (it == objects.end()) fail(ErrorCategory::kUnknownLabel, "unknown object " + quote(label));
    return it->second;
  };

  std::unordered_map<std::string, ArrowId> ids;
  for (const auto& rec : data.arrows) {
    if (!ids.emplace(rec.id, g.arrows_.size()).second) {
      fail(ErrorCategory::kDuplicateLabel, "duplicate arrow id " + quote(rec.id));
    }
    g.arrows_.push_back(Arrow{rec.id, object(rec.src), object(rec.tgt)});
  }
  auto arrow = [&](const std::string& id) {
    auto it = ids.find(id);
    if (it == ids.end()) fail(ErrorCategory::kUnknownLabel, "unknown arrow " + quote(id));
    return it->second;
  };
  const auto& arrows = g.arrows_;
  const std::size_t n = arrows.size();

  g.identity_.assign(data.objects.size(), kNoArrow);
  for (const auto& [obj, id] : data.identity_of) {
    const PointId x = object(obj);
    const ArrowId a = arrow(id);
    if (g.identity_[x] != kNoArrow) fail(ErrorCategory::kDuplicateLabel, "two identities given for " + quote(obj));
    if (arrows[a].src != x || arrows[a].tgt != x) {
      fail(ErrorCategory::kEndpointMismatch, "identity " + quote(id) + " of " + quote(obj) + " is not a loop at it");
    }
    g.identity_[x] = a;
  }
  for (PointId x = 0; x < data.objects.size(); ++x) {
    if (g.identity_[x] == kNoArrow) fail(ErrorCategory::kMissingIdentity, "object " + quote(data.objects[x]) + " has no identity");
  }

  g.inverse_.assign(n, kNoArrow);
  for (const auto& [from, to] : data.inverse_of) {
    const ArrowId a = arrow(from);
    const ArrowId b = arrow(to);
    if (g.inverse_[a] != kNoArrow && g.inverse_[a] != b) {
      fail(ErrorCategory::kDuplicateLabel, "two inverses given for " + quote(from));
    }
    if (arrows[b].src != arrows[a].tgt || arrows[b].tgt != arrows[a].src) {
      fail(ErrorCategory::kEndpointMismatch, "inverse " + quote(to) + " of " + quote(from) + " has wrong endpoints");
    }
    g.inverse_[a] = b;
  }
  for (ArrowId a = 0; a < n; ++a) {
    if (g.inverse_[a] == kNoArrow) fail(ErrorCategory::kInverseLaw, "arrow " + quote(arrows[a].id) + " has no inverse");
  }

  g.table_.assign(n * n, kNoArrow);
  for (const auto& c : data.compose) {
    const ArrowId a = arrow(c.first), b = arrow(c.second), r = arrow(c.result);
    if (arrows[a].tgt != arrows[b].src) {
      fail(ErrorCategory::kEndpointMismatch,
           "composite given for non-composable pair (" + c.first + ", " + c.second + ")");
    }
    if (arrows[r].src != arrows[a].src || arrows[r].tgt != arrows[b].tgt) {
      fail(ErrorCategory::kEndpointMismatch, "composite of (" + c.first + ", " + c.second + ") is " +
                                                 quote(c.result) + ", whose endpoints do not match");
    }
    ArrowId& slot = g.table_[a * n + b];
    if (slot != kNoArrow && slot != r) {
      fail(ErrorCategory::kDuplicateLabel, "conflicting composites for (" + c.first + ", " + c.second + ")");
    }
    slot = r;
  }
  g.index();
  for (ArrowId a = 0; a < n; ++a) {
    for (ArrowId b : g.out_[arrows[a].tgt]) {
      if (g.table_[a * n + b] == kNoArrow) {
        fail(ErrorCategory::kIncompleteComposition,
             "no composite given for (" + arrows[a].id + ", " + arrows[b].id + ")");
      }
    }
  }

  for (ArrowId a = 0; a < n; ++a) {
    const ArrowId left = g.compose(g.identity_[arrows[a].src], a);
    const ArrowId right = g.compose(a, g.identity_[arrows[a].tgt]);
    if (left != a || right != a) {
      fail(ErrorCategory::kIdentityLaw, "identity law fails for " + quote(arrows[a].id));
    }
  }
  for (ArrowId a = 0; a < n; ++a) {
    if (g.compose(a, g.inverse_[a]) != g.identity_[arrows[a].src] ||
        g.compose(g.inverse_[a], a) != g.identity_[arrows[a].tgt]) {
      fail(ErrorCategory::kInverseLaw, "inverse law fails for " + quote(arrows[a].id));
    }
  }
  for (ArrowId a = 0; a < n; ++a) {
    for (ArrowId b : g.out_[arrows[a].tgt]) {
      const ArrowId ab = g.compose(a, b);
      for (ArrowId c : g.out_[arrows[b].tgt]) {
        const ArrowId lhs = g.compose(ab, c);
        const ArrowId rhs = g.compose(a, g.compose(b, c));
        if (lhs != rhs) {
          fail(ErrorCategory::kAssociativity,
               "composition is not associative on triple (" + arrows[a].id + ", " + arrows[b].id + ", " +
                   arrows[c].id + "): (ab)c = " + arrows[lhs].id + " but a(bc) = " + arrows[rhs].id);
        }
      }
    }
  }
  return g;
}

GroupoidData to_data(const Groupoid& g) {
  GroupoidData d;
  d.objects = g.objects();
  for (const Arrow& a : g.arrows()) {
    d.arrows.push_back({a.id, g.objects()[a.src], g.objects()[a.tgt]});
  }
  for (PointId x = 0; x < g.object_count(); ++x) {
    d.identity_of.emplace_back(g.objects()[x], g.arrow(g.identity(x)).id);
  }
  for (ArrowId a = 0; a < g.arrow_count(); ++a) {
    d.inverse_of.emplace_back(g.arrow(a).id, g.arrow(g.inverse(a)).id);
  }
  for (ArrowId a = 0; a < g.arrow_count(); ++a) {
    for (ArrowId b : g.out_arrows(g.arrow(a).tgt)) {
      d.compose.push_back({g.arrow(a).id, g.arrow(b).id, g.arrow(g.compose(a, b)).id});
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup FiniteGroup::make(std::vector<std::string> elements, const std::string& unit,
                              const std::vector<std::vector<std::string>>& mul) {
  const std::size_t n = elements.size();
  if (n == 0) fail(ErrorCategory::kGroupAxiom, "a group needs at least one element");
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.emplace(elements[i], i).second) {
      fail(ErrorCategory::kDuplicateLabel, "duplicate group element " + quote(elements[i]));
    }
  }
  auto lookup = [&](const std::string& e) {
    auto it = index.find(e);
    if (it == index.end()) fail(ErrorCategory::kUnknownLabel, "unknown group element " + quote(e));
    return it->second;
  };
  FiniteGroup k;
  k.unit_ = lookup(unit);
  if (mul.size() != n) fail(ErrorCategory::kGroupAxiom, "multiplication table must have one row per element");
  k.mul_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (mul[i].size() != n) fail(ErrorCategory::kGroupAxiom, "multiplication table must be square");
    for (std::size_t j = 0; j < n; ++j) k.mul_[i * n + j] = lookup(mul[i][j]);
  }
  k.elements_ = std::move(elements);
  for (std::size_t a = 0; a < n; ++a) {
    if (k.mul(k.unit_, a) != a || k.mul(a, k.unit_) != a) {
      fail(ErrorCategory::kGroupAxiom, "unit law fails for " + quote(k.elements_[a]));
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (k.mul(k.mul(a, b), c) != k.mul(a, k.mul(b, c))) {
          fail(ErrorCategory::kGroupAxiom, "group multiplication is not associative on (" + k.elements_[a] +
                                               ", " + k.elements_[b] + ", " + k.elements_[c] + ")");
        }
  k.inv_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (k.mul(a, b) == k.unit_ && k.mul(b, a) == k.unit_) k.inv_[a] = b;
    }
    if (k.inv_[a] == n) fail(ErrorCategory::kGroupAxiom, "element " + quote(k.elements_[a]) + " has no inverse");
  }
  return k;
}

FiniteGroup cyclic_group(std::size_t n) {
  std::vector<std::string> elements;
  for (std::size_t i = 0; i < n; ++i) elements.push_back(std::to_string(i));
  std::vector<std::vector<std::string>> mul(n, std::vector<std::string>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mul[i][j] = elements[(i + j) % n];
  return FiniteGroup::make(elements, "0", mul);
}

FiniteGroup trivial_group() { return FiniteGroup::make({"e"}, "e", {{"e"}}); }

// ---------------------------------------------------------------------------
// WideSubgroupoid

WideSubgroupoid WideSubgroupoid::make(GroupoidPtr parent, PointSet base, ArrowSet arrows) {
  const Groupoid& g = *parent;
  if (!base.subset_of(g.all_objects())) fail(ErrorCategory::kUnknownLabel, "base contains unknown objects");
  if (arrows.size() != g.arrow_count()) fail(ErrorCategory::kMismatch, "arrow set has the wrong size");
  for (ArrowId a = arrows.find_first(); a != ArrowSet::npos; a = arrows.find_next(a)) {
    if (!base.contains(g.arrow(a).src) || !base.contains(g.arrow(a).tgt)) {
      fail(ErrorCategory::kNotWide, "arrow " + quote(g.arrow(a).id) + " leaves the base");
    }
  }
  base.for_each([&](PointId x) {
    if (!arrows.test(g.identity(x))) {
      fail(ErrorCategory::kNotWide, "identity of " + quote(g.objects()[x]) + " is missing");
    }
  });
  for (ArrowId a = arrows.find_first(); a != ArrowSet::npos; a = arrows.find_next(a)) {
    if (!arrows.test(g.inverse(a))) {
      fail(ErrorCategory::kNotClosed, "inverse of " + quote(g.arrow(a).id) + " is missing");
    }
    for (ArrowId b : g.out_arrows(g.arrow(a).tgt)) {
      if (arrows.test(b) && !arrows.test(g.compose(a, b))) {
        fail(ErrorCategory::kNotClosed,
             "composite of (" + g.arrow(a).id + ", " + g.arrow(b).id + ") is missing");
      }
    }
  }
  return WideSubgroupoid(std::move(parent), base, std::move(arrows));
}

WideSubgroupoid WideSubgroupoid::make(GroupoidPtr parent, PointSet base,
                                      const std::vector<std::string>& arrow_ids) {
  ArrowSet s = parent->empty_arrow_set();
  for (const auto& id : arrow_ids) s.set(parent->arrow_index(id));
  return make(std::move(parent), base, std::move(s));
}

std::vector<std::string> WideSubgroupoid::arrow_ids() const {
  std::vector<std::string> out;
  for (ArrowId a = arrows_.find_first(); a != ArrowSet::npos; a = arrows_.find_next(a)) {
    out.push_back(parent_->arrow(a).id);
  }
  return out;
}

bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) { return a == b || *a == *b; }

bool WideSubgroupoid::operator==(const WideSubgroupoid& other) const {
  return base_ == other.base_ && arrows_ == other.arrows_ && same_groupoid(parent_, other.parent_);
}

// ---------------------------------------------------------------------------
// Operations

Groupoid full_restriction(const Groupoid& g, PointSet objects) {
  if (!objects.subset_of(g.all_objects())) fail(ErrorCategory::kUnknownLabel, "restriction to unknown objects");
  std::vector<PointId> new_object(g.object_count(), 0);
  std::vector<std::string> labels;
  objects.for_each([&](PointId p) {
    new_object[p] = labels.size();
    labels.push_back(g.objects()[p]);
  });
  std::vector<ArrowId> new_arrow(g.arrow_count(), kNoArrow);
  std::vector<ArrowId> old_arrow;
  std::vector<Arrow> arrows;
  for (ArrowId a = 0; a < g.arrow_count(); ++a) {
    const Arrow& arr = g.arrow(a);
    if (objects.contains(arr.src) && objects.contains(arr.tgt)) {
      new_arrow[a] = arrows.size();
      old_arrow.push_back(a);
      arrows.push_back(Arrow{arr.id, new_object[arr.src], new_object[arr.tgt]});
    }
  }
  std::vector<ArrowId> identity;
  objects.for_each([&](PointId p) { identity.push_back(new_arrow[g.identity(p)]); });
  std::vector<ArrowId> inverse;
  for (ArrowId old : old_arrow) inverse.push_back(new_arrow[g.inverse(old)]);
  return Groupoid::assemble(std::move(labels), std::move(arrows), std::move(identity), std::move(inverse),
                            [&](ArrowId a, ArrowId b) { return new_arrow[g.compose(old_arrow[a], old_arrow[b])]; });
}

WideSubgroupoid restrict_wide(const WideSubgroupoid& h, PointSet v) {
  if (!v.subset_of(h.base())) fail(ErrorCategory::kPrecondition, "restriction set is not inside the base");
  ArrowSet arrows = h.arrows() & h.parent().arrows_within(v);
  return WideSubgroupoid::trusted(h.parent_ptr(), v, std::move(arrows));
}

WideSubgroupoid generate_wide(const GroupoidPtr& gp, PointSet base, const ArrowSet& seed) {
  const Groupoid& g = *gp;
  if (!base.subset_of(g.all_objects())) fail(ErrorCategory::kUnknownLabel, "base contains unknown objects");
  ArrowSet in(g.arrow_count());
  std::vector<ArrowId> work;
  auto add = [&](ArrowId a) {
    if (!in.test(a)) {
      in.set(a);
      work.push_back(a);
    }
  };
  base.for_each([&](PointId x) { add(g.identity(x)); });
  for (ArrowId a = seed.find_first(); a != ArrowSet::npos; a = seed.find_next(a)) {
    if (!base.contains(g.arrow(a).src) || !base.contains(g.arrow(a).tgt)) {
      fail(ErrorCategory::kNotWide, "seed arrow " + quote(g.arrow(a).id) + " lies outside G|U");
    }
    add(a);
  }
  while (!work.empty()) {
    const ArrowId a = work.back();
    work.pop_back();
    add(g.inverse(a));
    for (ArrowId b : g.out_arrows(g.arrow(a).tgt)) {
      if (in.test(b)) add(g.compose(a, b));
    }
    for (ArrowId c : g.in_arrows(g.arrow(a).src)) {
      if (in.test(c)) add(g.compose(c, a));
    }
  }
  return WideSubgroupoid::trusted(gp, base, std::move(in));
}

Partition transitivity_components(const WideSubgroupoid& h) {
  const Groupoid& g = h.parent();
  detail::UnionFind uf(g.object_count());
  const ArrowSet& arrows = h.arrows();
  for (ArrowId a = arrows.find_first(); a != ArrowSet::npos; a = arrows.find_next(a)) {
    uf.unite(g.arrow(a).src, g.arrow(a).tgt);
  }
  Partition parts;
  std::vector<std::ptrdiff_t> slot(g.object_count(), -1);
  h.base().for_each([&](PointId x) {
    const std::size_t root = uf.find(x);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::ptrdiff_t>(parts.size());
      parts.emplace_back();
    }
    parts[static_cast<std::size_t>(slot[root])].insert(x);
  });
  return parts;
}

WideSubgroupoid whole(const GroupoidPtr& g) {
  ArrowSet all(g->arrow_count());
  all.set();
  return WideSubgroupoid::trusted(g, g->all_objects(), std::move(all));
}

WideSubgroupoid identities_only(const GroupoidPtr& g, PointSet base) {
  return generate_wide(g, base, g->empty_arrow_set());
}

Groupoid pair_groupoid(const std::vector<std::string>& points) {
  const std::size_t n = points.size();
  std::vector<Arrow> arrows;
  for (PointId x = 0; x < n; ++x)
    for (PointId y = 0; y < n; ++y) arrows.push_back(Arrow{points[x] + ":" + points[y], x, y});
  std::vector<ArrowId> identity, inverse;
  for (PointId x = 0; x < n; ++x) identity.push_back(x * n + x);
  for (const Arrow& a : arrows) inverse.push_back(a.tgt * n + a.src);
  return Groupoid::assemble(points, std::move(arrows), std::move(identity), std::move(inverse),
                            [&](ArrowId a, ArrowId b) { return (a / n) * n + (b % n); });
}

Groupoid group_bundle(const std::vector<std::string>& points,
                      const std::map<std::string, FiniteGroup>& fibers) {
  std::vector<Arrow> arrows;
  std::vector<ArrowId> identity, inverse, offset;
  std::vector<const FiniteGroup*> fiber;
  for (PointId x = 0; x < points.size(); ++x) {
    auto it = fibers.find(points[x]);
    if (it == fibers.end()) fail(ErrorCategory::kSchema, "point " + quote(points[x]) + " has no fibre");
    const FiniteGroup& k = it->second;
    fiber.push_back(&k);
    offset.push_back(arrows.size());
    identity.push_back(arrows.size() + k.unit());
    for (std::size_t e = 0; e < k.order(); ++e) arrows.push_back(Arrow{points[x] + "#" + k.elements()[e], x, x});
    for (std::size_t e = 0; e < k.order(); ++e) inverse.push_back(offset[x] + k.inv(e));
  }
  for (const auto& [label, _] : fibers) {
    if (std::find(points.begin(), points.end(), label) == points.end()) {
      fail(ErrorCategory::kUnknownLabel, "fibre given for unknown point " + quote(label));
    }
  }
  return Groupoid::assemble(points, arrows, std::move(identity), std::move(inverse), [&](ArrowId a, ArrowId b) {
    const PointId x = arrows[a].src;
    return offset[x] + fiber[x]->mul(a - offset[x], b - offset[x]);
  });
}

Groupoid discrete_groupoid(const std::vector<std::string>& points) {
  std::map<std::string, FiniteGroup> fibers;
  for (const auto& p : points) fibers.emplace(p, trivial_group());
  return group_bundle(points, fibers);
}

Groupoid rel_times_group(const WideSubgroupoid& relation, const FiniteGroup& k) {
  const Groupoid& pg = relation.parent();
  for (ArrowId a = 0; a < pg.arrow_count(); ++a) {
    for (ArrowId b = a + 1; b < pg.arrow_count(); ++b) {
      if (pg.arrow(a).src == pg.arrow(b).src && pg.arrow(a).tgt == pg.arrow(b).tgt) {
        fail(ErrorCategory::kPrecondition, "relation must live in a pair groupoid");
      }
    }
  }
  const PointSet base = relation.base();
  std::vector<PointId> new_object(pg.object_count(), 0);
  std::vector<std::string> objects;
  base.for_each([&](PointId p) {
    new_object[p] = objects.size();
    objects.push_back(pg.objects()[p]);
  });
  const std::size_t m = objects.size();
  const std::size_t order = k.order();
  std::vector<ArrowId> block(m * m, kNoArrow);  // first arrow of ((x,y), *)
  std::vector<Arrow> arrows;
  const ArrowSet& rel = relation.arrows();
  for (ArrowId a = rel.find_first(); a != ArrowSet::npos; a = rel.find_next(a)) {
    const PointId x = new_object[pg.arrow(a).src], y = new_object[pg.arrow(a).tgt];
    block[x * m + y] = arrows.size();
    for (std::size_t e = 0; e < order; ++e) arrows.push_back(Arrow{pg.arrow(a).id + "#" + k.elements()[e], x, y});
  }
  std::vector<ArrowId> identity, inverse;
  for (PointId x = 0; x < m; ++x) identity.push_back(block[x * m + x] + k.unit());
  for (ArrowId a = 0; a < arrows.size(); ++a) {
    const PointId x = arrows[a].src, y = arrows[a].tgt;
    const std::size_t e = a - block[x * m + y];
    inverse.push_back(block[y * m + x] + k.inv(e));
  }
  return Groupoid::assemble(std::move(objects), arrows, std::move(identity), std::move(inverse),
                            [&](ArrowId a, ArrowId b) {
                              const PointId x = arrows[a].src, y = arrows[a].tgt, z = arrows[b].tgt;
                              const std::size_t e1 = a - block[x * m + y];
                              const std::size_t e2 = b - block[y * m + z];
                              return block[x * m + z] + k.mul(e1, e2);
                            });
}

WideSubgroupoid anchor_image(const WideSubgroupoid& h) {
  const Groupoid& g = h.parent();
  std::vector<PointId> new_object(g.object_count(), 0);
  std::vector<std::string> labels;
  h.base().for_each([&](PointId p) {
    new_object[p] = labels.size();
    labels.push_back(g.objects()[p]);
  });
  auto pairs = std::make_shared<const Groupoid>(pair_groupoid(labels));
  const std::size_t m = labels.size();
  ArrowSet image(pairs->arrow_count());
  const ArrowSet& arrows = h.arrows();
  for (ArrowId a = arrows.find_first(); a != ArrowSet::npos; a = arrows.find_next(a)) {
    image.set(new_object[g.arrow(a).src] * m + new_object[g.arrow(a).tgt]);
  }
  return WideSubgroupoid::trusted(pairs, pairs->all_objects(), std::move(image));
}

WideSubgroupoid intersect_wide(std::span<const WideSubgroupoid> subs) {
  if (subs.empty()) fail(ErrorCategory::kPrecondition, "cannot intersect an empty family");
  ArrowSet arrows = subs.front().arrows();
  for (const auto& h : subs.subspan(1)) {
    if (h.base() != subs.front().base() || !same_groupoid(h.parent_ptr(), subs.front().parent_ptr())) {
      fail(ErrorCategory::kMismatch, "intersected subgroupoids must share parent and base");
    }
    arrows &= h.arrows();
  }
  return WideSubgroupoid::trusted(subs.front().parent_ptr(), subs.front().base(), std::move(arrows));
}

bool is_subgroupoid(const WideSubgroupoid& h1, const WideSubgroupoid& h2) {
  if (!same_groupoid(h1.parent_ptr(), h2.parent_ptr())) {
    fail(ErrorCategory::kMismatch, "subgroupoids of different groupoids are incomparable");
  }
  return h1.base().subset_of(h2.base()) && h1.arrows().is_subset_of(h2.arrows());
}

WideSubgroupoid transport(const WideSubgroupoid& h, const GroupoidPtr& target) {
  const Groupoid& g = h.parent();
  PointSet base;
  h.base().for_each([&](PointId p) { base.insert(target->object_index(g.objects()[p])); });
  ArrowSet arrows = target->empty_arrow_set();
  const ArrowSet& src = h.arrows();
  for (ArrowId a = src.find_first(); a != ArrowSet::npos; a = src.find_next(a)) {
    arrows.set(target->arrow_index(g.arrow(a).id));
  }
  return WideSubgroupoid::trusted(target, base, std::move(arrows));
}

}  // namespace locsub
