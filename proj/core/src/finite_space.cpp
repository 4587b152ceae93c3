#include "locsub/finite_space.hpp"

#include <algorithm>
#include <unordered_set>

#include "locsub/errors.hpp"
#include "union_find.hpp"

namespace locsub {
namespace {

// All unions of least neighbourhoods, i.e. all opens. Every intermediate
// family consists of opens, so the cap is checked against a lower bound.
std::vector<PointSet> all_opens(const std::vector<PointSet>& minimal, std::size_t max_opens) {
  std::unordered_set<std::uint64_t> seen{0};
  std::vector<PointSet> opens{PointSet{}};
  for (PointSet m : minimal) {
    const std::size_t n = opens.size();
    for (std::size_t i = 0; i < n; ++i) {
      PointSet u = opens[i] | m;
      if (seen.insert(u.bits()).second) {
        opens.push_back(u);
        if (opens.size() > max_opens) {
          throw ResourceError("open-set count exceeds the configured cap of " +
                              std::to_string(max_opens));
        }
      }
    }
  }
  std::sort(opens.begin(), opens.end(), size_lex_less);
  return opens;
}

}  // namespace

FiniteSpace FiniteSpace::from_minimal_opens(std::vector<std::string> labels,
                                            std::vector<PointSet> minimal_opens,
                                            std::size_t max_opens) {
  if (labels.size() > kMaxPoints) {
    throw ResourceError("spaces are limited to " + std::to_string(kMaxPoints) + " points");
  }
  if (labels.size() != minimal_opens.size()) {
    throw ValidationError(ErrorCategory::kSchema, "one least neighbourhood per point required");
  }
  FiniteSpace space;
  for (PointId p = 0; p < labels.size(); ++p) {
    if (!space.index_.emplace(labels[p], p).second) {
      throw ValidationError(ErrorCategory::kDuplicateLabel, "duplicate point label '" + labels[p] + "'");
    }
  }
  const PointSet all = PointSet::full(labels.size());
  for (PointId p = 0; p < labels.size(); ++p) {
    const PointSet m = minimal_opens[p];
    if (!m.subset_of(all) || !m.contains(p)) {
      throw ValidationError(ErrorCategory::kNotOpen,
                            "least neighbourhood of '" + labels[p] + "' must contain it");
    }
    m.for_each([&](PointId q) {
      if (!minimal_opens[q].subset_of(m)) {
        throw ValidationError(ErrorCategory::kNotOpen, "least neighbourhood table is not transitive at '" +
                                                           labels[p] + "'");
      }
    });
  }
  space.labels_ = std::move(labels);
  space.minimal_ = std::move(minimal_opens);
  space.opens_ = all_opens(space.minimal_, max_opens);
  return space;
}

std::optional<PointId> FiniteSpace::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

PointId FiniteSpace::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) {
    throw ValidationError(ErrorCategory::kUnknownLabel, "unknown point '" + label + "'");
  }
  return it->second;
}

PointSet FiniteSpace::set_of(const std::vector<std::string>& labels) const {
  PointSet s;
  for (const auto& l : labels) s.insert(index_of(l));
  return s;
}

std::vector<std::string> FiniteSpace::labels_of(PointSet set) const {
  std::vector<std::string> out;
  set.for_each([&](PointId p) { out.push_back(labels_.at(p)); });
  return out;
}

bool FiniteSpace::is_open(PointSet set) const {
  if (!set.subset_of(all())) return false;
  bool open = true;
  set.for_each([&](PointId p) { open = open && minimal_[p].subset_of(set); });
  return open;
}

FiniteSpace FiniteSpace::subspace(PointSet subset, std::size_t max_opens) const {
  if (!subset.subset_of(all())) {
    throw ValidationError(ErrorCategory::kUnknownLabel, "subspace is not a subset of the points");
  }
  const std::vector<PointId> ids = subset.ids();
  std::vector<PointId> position(size(), 0);
  for (std::size_t i = 0; i < ids.size(); ++i) position[ids[i]] = i;

  std::vector<std::string> labels;
  std::vector<PointSet> minimal;
  for (PointId p : ids) {
    labels.push_back(labels_[p]);
    PointSet m;
    (minimal_[p] & subset).for_each([&](PointId q) { m.insert(position[q]); });
    minimal.push_back(m);
  }
  return from_minimal_opens(std::move(labels), std::move(minimal), max_opens);
}

FiniteSpace space_from_basis(const std::vector<std::string>& points,
                             const std::vector<PointSet>& basis, std::size_t max_opens) {
  if (points.size() > kMaxPoints) {
    throw ResourceError("spaces are limited to " + std::to_string(kMaxPoints) + " points");
  }
  const PointSet all = PointSet::full(points.size());
  std::vector<PointSet> minimal(points.size(), all);
  for (PointSet b : basis) {
    if (!b.subset_of(all)) {
      throw ValidationError(ErrorCategory::kUnknownLabel, "basis set refers to an unknown point");
    }
    b.for_each([&](PointId p) { minimal[p] &= b; });
  }
  return FiniteSpace::from_minimal_opens(points, std::move(minimal), max_opens);
}

FiniteSpace space_from_basis(const std::vector<std::string>& points,
                             const std::vector<std::vector<std::string>>& basis,
                             std::size_t max_opens) {
  std::unordered_map<std::string, PointId> index;
  for (PointId p = 0; p < points.size(); ++p) index.emplace(points[p], p);
  std::vector<PointSet> sets;
  sets.reserve(basis.size());
  for (const auto& member : basis) {
    PointSet s;
    for (const auto& label : member) {
      auto it = index.find(label);
      if (it == index.end()) {
        throw ValidationError(ErrorCategory::kUnknownLabel,
                              "basis set contains unknown point '" + label + "'");
      }
      s.insert(it->second);
    }
    sets.push_back(s);
  }
  return space_from_basis(points, sets, max_opens);
}

PointSet minimal_open(const FiniteSpace& space, const std::string& x) {
  return space.minimal_open(space.index_of(x));
}

std::vector<PointSet> enumerate_opens(const FiniteSpace& space) { return space.opens(); }

Partition connected_components(const FiniteSpace& space, PointSet subset) {
  const std::vector<PointId> ids = subset.ids();
  detail::UnionFind uf(space.size());
  for (PointId a : ids) {
    (space.minimal_open(a) & subset).for_each([&](PointId b) { uf.unite(a, b); });
  }
  Partition parts;
  std::vector<std::ptrdiff_t> slot(space.size(), -1);
  for (PointId a : ids) {
    const std::size_t root = uf.find(a);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::ptrdiff_t>(parts.size());
      parts.emplace_back();
    }
    parts[static_cast<std::size_t>(slot[root])].insert(a);
  }
  return parts;
}

RelativeOpenness relative_openness(const FiniteSpace& space, PointSet part, PointSet whole) {
  // part = O ∩ whole for some open O iff m(a) ∩ whole stays in part for a in part.
  auto open_in = [&](PointSet a) {
    bool ok = true;
    a.for_each([&](PointId p) { ok = ok && (space.minimal_open(p) & whole).subset_of(a); });
    return ok;
  };
  return {open_in(part), open_in(whole - part)};
}

FiniteSpace generate_topology(const FiniteSpace& space, const std::vector<PointSet>& extra_sets,
                              std::size_t max_opens) {
  std::vector<PointSet> minimal = space.minimal_opens();
  for (PointSet e : extra_sets) {
    if (!e.subset_of(space.all())) {
      throw ValidationError(ErrorCategory::kUnknownLabel, "generating set is not a subset of the points");
    }
    e.for_each([&](PointId p) { minimal[p] &= e; });
  }
  return FiniteSpace::from_minimal_opens(space.labels(), std::move(minimal), max_opens);
}

bool is_finer(const FiniteSpace& fine, const FiniteSpace& coarse) {
  if (fine.labels() != coarse.labels()) return false;
  for (PointId p = 0; p < fine.size(); ++p) {
    if (!fine.minimal_open(p).subset_of(coarse.minimal_open(p))) return false;
  }
  return true;
}

}  // namespace locsub
