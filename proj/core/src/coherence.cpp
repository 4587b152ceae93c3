#include "locsub/coherence.hpp"

#include <algorithm>

#include "locsub/errors.hpp"

namespace locsub {
namespace {

bool all_connected(const FiniteSpace& space, const Partition& parts) {
  return std::all_of(parts.begin(), parts.end(),
                     [&](PointSet c) { return connected_components(space, c).size() <= 1; });
}

bool all_closed(const FiniteSpace& space, const Partition& parts) {
  return std::all_of(parts.begin(), parts.end(), [&](PointSet c) { return space.is_open(space.all() - c); });
}

TheoremReport finish(TheoremReport r) {
  if (r.hypothesis_holds && !r.conclusion_holds) r.counterexample = r.evidence;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Predicates

CoherenceReport coherence_report(const LocalSubgroupoid& s) {
  WideSubgroupoid g = glob(s);
  const LocalSubgroupoid lg = loc(s.space_ptr(), g);
  CoherenceReport report{true, true, g, {}};
  for (PointId x = 0; x < s.space().size(); ++x) {
    if (s.rep(x) == lg.rep(x)) continue;
    const bool contained = germ_leq(s.germ(x), lg.germ(x));
    report.globally_coherent = false;
    report.coherent = report.coherent && contained;
    report.witnesses.push_back(CoherenceWitness{x, s.germ(x), lg.germ(x), contained});
  }
  return report;
}

TotalCoherence is_totally_coherent(const LocalSubgroupoid& s, std::size_t max_opens) {
  const auto& opens = s.space().opens();
  if (opens.size() > max_opens) {
    throw ResourceError("total coherence needs " + std::to_string(opens.size()) + " opens, cap is " +
                        std::to_string(max_opens));
  }
  for (PointSet u : opens) {
    if (!coherence_report(restrict_section(s, u)).coherent) return {false, u};
  }
  return {true, std::nullopt};
}

SubgroupoidCoherence subgroupoid_coherence(const SpacePtr& space, const WideSubgroupoid& h) {
  const LocalSubgroupoid lh = loc(space, h);
  return {coherence_report(lh).coherent, glob(lh) == h};
}

FiniteSpace foliation_space(const LocalSubgroupoid& s, const Atlas& atlas, std::size_t max_opens) {
  if (!(section_from_atlas(atlas) == s)) {
    throw ValidationError(ErrorCategory::kMismatch, "atlas does not define the local subgroupoid");
  }
  std::vector<PointSet> components;
  for (const Chart& c : atlas.charts()) {
    for (PointSet m : transitivity_components(c.sub)) components.push_back(m);
  }
  return generate_topology(s.space(), components, max_opens);
}

void check_open_cover(const FiniteSpace& space, const std::vector<PointSet>& cover) {
  PointSet covered;
  for (PointSet v : cover) {
    if (!space.is_open(v)) throw ValidationError(ErrorCategory::kNotOpen, "cover member is not open");
    covered |= v;
  }
  if (covered != space.all()) throw ValidationError(ErrorCategory::kNonCovering, "sets do not cover the space");
}

// ---------------------------------------------------------------------------
// Certificates

void Certificate::add(std::string name, const FiniteSpace& space, const std::vector<PointSet>& sets) {
  CertificateEntry e{std::move(name), {}};
  for (PointSet s : sets) e.sets.push_back(space.labels_of(s));
  entries.push_back(std::move(e));
}

const CertificateEntry* Certificate::find(std::string_view name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

std::string_view to_string(TheoremStatus status) {
  switch (status) {
    case TheoremStatus::kPass: return "pass";
    case TheoremStatus::kVacuous: return "vacuous";
    case TheoremStatus::kCounterexample: return "counterexample";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Checkers

TheoremReport verify_pr39(const LocalSubgroupoid& s, const WideSubgroupoid& h, const std::vector<PointSet>& cover) {
  const FiniteSpace& space = s.space();
  if (!(loc(s.space_ptr(), h) == s)) {
    throw ValidationError(ErrorCategory::kPrecondition, "pr39 requires s = loc(H)");
  }
  check_open_cover(space, cover);
  std::vector<Chart> charts;
  for (PointSet v : cover) charts.push_back(Chart{v, restrict_wide(h, v)});
  const WideSubgroupoid hv = generated_from_atlas(Atlas::make(s.space_ptr(), s.parent_ptr(), std::move(charts)));

  const Partition h_parts = transitivity_components(h);
  const Partition hv_parts = transitivity_components(hv);
  TheoremReport r{"pr39", true, true, {}, std::nullopt};
  r.evidence.add("cover", space, cover);
  r.evidence.add("components_H", space, h_parts);
  r.evidence.add("components_HV", space, hv_parts);
  std::vector<PointSet> bad;
  for (PointSet c : hv_parts) {
    const PointSet m = *std::find_if(h_parts.begin(), h_parts.end(), [&](PointSet p) { return c.subset_of(p); });
    const RelativeOpenness rel = relative_openness(space, c, m);
    if (!rel.is_relatively_open || !rel.is_relatively_closed) {
      r.conclusion_holds = false;
      bad.push_back(c);
      bad.push_back(m);
    }
  }
  if (!bad.empty()) r.evidence.add("failing_component_and_container", space, bad);
  return finish(std::move(r));
}

TheoremReport verify_th310(const SpacePtr& space_ptr, const WideSubgroupoid& h,
                           const std::optional<std::vector<PointSet>>& neighbourhoods) {
  const FiniteSpace& space = *space_ptr;
  if (h.base() != space.all()) throw ValidationError(ErrorCategory::kNotWide, "th310 needs H wide over X");
  auto works = [&](PointSet w) { return all_connected(space, transitivity_components(restrict_wide(h, w))); };

  TheoremReport r{"th310", true, false, {}, std::nullopt};
  std::vector<PointSet> chosen;
  std::vector<PointSet> lacking;
  for (PointId x = 0; x < space.size(); ++x) {
    std::optional<PointSet> w;
    if (neighbourhoods) {
      const PointSet given = neighbourhoods->at(x);
      if (!space.is_open(given) || !given.contains(x)) {
        throw ValidationError(ErrorCategory::kNotOpen, "W_x must be an open neighbourhood of x");
      }
      if (works(given)) w = given;
    } else if (works(space.minimal_open(x))) {
      w = space.minimal_open(x);
    } else {
      for (PointSet o : space.opens()) {
        if (o.contains(x) && works(o)) {
          w = o;
          break;
        }
      }
    }
    if (w) {
      chosen.push_back(*w);
    } else {
      r.hypothesis_holds = false;
      lacking.push_back(PointSet::single(x));
    }
  }
  if (r.hypothesis_holds) r.evidence.add("neighbourhoods", space, chosen);
  else r.evidence.add("points_without_neighbourhood", space, lacking);
  r.conclusion_holds = coherence_report(loc(space_ptr, h)).coherent;
  return finish(std::move(r));
}

Th312Report verify_th312(const SpacePtr& space_ptr, const WideSubgroupoid& h) {
  const FiniteSpace& space = *space_ptr;
  const Partition parts = transitivity_components(h);
  const bool connected = all_connected(space, parts);
  const bool closed = all_closed(space, parts);
  const WideSubgroupoid gl = glob(loc(space_ptr, h));
  const bool fixed = gl == h;

  Certificate ev;
  ev.add("components_H", space, parts);
  std::vector<PointSet> disconnected;
  for (PointSet c : parts)
    if (connected_components(space, c).size() > 1) disconnected.push_back(c);
  ev.add("disconnected_components", space, disconnected);
  ev.note(std::string("H = glob(loc(H)): ") + (fixed ? "true" : "false"));
  ev.note(std::string("components closed: ") + (closed ? "true" : "false"));

  Th312Report out{TheoremReport{"th312-forward", connected, fixed, ev, std::nullopt},
                  TheoremReport{"th312-converse", fixed && closed, connected, ev, std::nullopt}};
  out.forward = finish(std::move(out.forward));
  out.converse = finish(std::move(out.converse));
  return out;
}

TheoremReport verify_th314(const LocalSubgroupoid& s, const Atlas& atlas, std::size_t max_opens) {
  const FiniteSpace& space = s.space();
  const CoherenceReport coh = coherence_report(s);
  const FiniteSpace foliated = foliation_space(s, atlas, max_opens);
  const Partition glob_parts = transitivity_components(coh.glob);
  const Partition leaf_parts = connected_components(foliated, foliated.all());

  TheoremReport r{"th314", coh.coherent, true, {}, std::nullopt};
  r.evidence.add("components_glob", space, glob_parts);
  r.evidence.add("components_foliation", space, leaf_parts);
  r.evidence.add("foliation_minimal_opens", space, foliated.minimal_opens());
  std::vector<PointSet> unmatched;
  for (PointSet c : glob_parts) {
    if (std::find(leaf_parts.begin(), leaf_parts.end(), c) == leaf_parts.end()) unmatched.push_back(c);
  }
  if (!unmatched.empty()) {
    r.conclusion_holds = false;
    r.evidence.add("unmatched_glob_components", space, unmatched);
  }
  return finish(std::move(r));
}

RestrictionPropsReport verify_restriction_props(const LocalSubgroupoid& s, const std::vector<PointSet>& cover,
                                                std::size_t max_opens) {
  const FiniteSpace& space = s.space();
  check_open_cover(space, cover);
  auto global_and_total = [&](const LocalSubgroupoid& t) {
    return coherence_report(t).globally_coherent && is_totally_coherent(t, max_opens).totally_coherent;
  };

  TheoremReport one{"restriction-i", global_and_total(s), true, {}, std::nullopt};
  if (space.opens().size() > max_opens) throw ResourceError("open-set count exceeds the configured cap");
  std::vector<PointSet> failing;
  if (one.hypothesis_holds) {
    for (PointSet u : space.opens()) {
      if (!coherence_report(restrict_section(s, u)).globally_coherent) failing.push_back(u);
    }
  }
  one.conclusion_holds = failing.empty();
  one.evidence.add("opens_not_globally_coherent", space, failing);

  TheoremReport two{"restriction-ii", true, true, {}, std::nullopt};
  std::vector<PointSet> bad_cover;
  for (PointSet v : cover) {
    if (!global_and_total(restrict_section(s, v))) bad_cover.push_back(v);
  }
  two.hypothesis_holds = bad_cover.empty();
  two.evidence.add("cover", space, cover);
  two.evidence.add("cover_members_failing_hypothesis", space, bad_cover);
  const TotalCoherence total = is_totally_coherent(s, max_opens);
  two.conclusion_holds = total.totally_coherent;
  if (total.failing_open) two.evidence.add("failing_open", space, {*total.failing_open});

  return {finish(std::move(one)), finish(std::move(two))};
}

}  // namespace locsub
