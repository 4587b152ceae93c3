#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "locsub/local_subgroupoid.hpp"

namespace locsub {

/// A point where s(x) and loc(glob(s))(x) differ.
struct CoherenceWitness {
  PointId point = 0;
  Germ section_germ;
  Germ glob_germ;
  bool contained = false;  // section_germ <= glob_germ (then strictly)
};

struct CoherenceReport {
  bool coherent = false;           // s <= loc(glob(s))
  bool globally_coherent = false;  // s == loc(glob(s))
  WideSubgroupoid glob;
  std::vector<CoherenceWitness> witnesses;
};

CoherenceReport coherence_report(const LocalSubgroupoid& s);

struct TotalCoherence {
  bool totally_coherent = false;
  std::optional<PointSet> failing_open;  // first in enumerate_opens order
};

/// Coherence of s|U for every open U. Throws ResourceError when the space
/// has more than `max_opens` opens.
TotalCoherence is_totally_coherent(const LocalSubgroupoid& s, std::size_t max_opens = kDefaultMaxOpens);

struct SubgroupoidCoherence {
  bool locally_coherent = false;  // loc(H) is coherent
  bool coherent = false;          // H == glob(loc(H))
};

SubgroupoidCoherence subgroupoid_coherence(const SpacePtr& space, const WideSubgroupoid& h);

/// X^s: the topology generated by the opens of X and the transitivity
/// components of every chart subgroupoid. Throws unless the atlas defines s.
FiniteSpace foliation_space(const LocalSubgroupoid& s, const Atlas& atlas,
                            std::size_t max_opens = kDefaultMaxOpens);

// ---------------------------------------------------------------------------
// Theorem checkers. None of them assumes the statement it checks: each one
// evaluates hypothesis and conclusion separately and records the sets it
// looked at, so a failure is reported with a certificate instead of thrown.

using LabelSet = std::vector<std::string>;

struct CertificateEntry {
  std::string name;
  std::vector<LabelSet> sets;
  bool operator==(const CertificateEntry&) const = default;
};

struct Certificate {
  std::vector<CertificateEntry> entries;
  std::vector<std::string> notes;

  void add(std::string name, const FiniteSpace& space, const std::vector<PointSet>& sets);
  void note(std::string text) { notes.push_back(std::move(text)); }
  const CertificateEntry* find(std::string_view name) const;
  bool operator==(const Certificate&) const = default;
};

enum class TheoremStatus { kPass, kVacuous, kCounterexample };
std::string_view to_string(TheoremStatus status);

struct TheoremReport {
  std::string theorem;
  bool hypothesis_holds = false;
  bool conclusion_holds = false;
  Certificate evidence;
  std::optional<Certificate> counterexample;  // iff hypothesis && !conclusion

  TheoremStatus status() const {
    if (!hypothesis_holds) return TheoremStatus::kVacuous;
    return conclusion_holds ? TheoremStatus::kPass : TheoremStatus::kCounterexample;
  }
};

/// For s = loc(H) and an open cover V: every transitivity component of H_V
/// is relatively open and closed in the H-component containing it.
TheoremReport verify_pr39(const LocalSubgroupoid& s, const WideSubgroupoid& h, const std::vector<PointSet>& cover);

/// If some open W_x around each x makes H|W_x have connected transitivity
/// components, then loc(H) is coherent. Without an explicit choice, W_x is
/// m(x) when that works and otherwise the first open containing x that does.
TheoremReport verify_th310(const SpacePtr& space, const WideSubgroupoid& h,
                           const std::optional<std::vector<PointSet>>& neighbourhoods = std::nullopt);

struct Th312Report {
  TheoremReport forward;   // connected components => H == glob(loc(H))
  TheoremReport converse;  // H == glob(loc(H)) and closed components => connected
};

Th312Report verify_th312(const SpacePtr& space, const WideSubgroupoid& h);

/// For coherent s: every transitivity component of glob(s) is a connected
/// component of X^s.
TheoremReport verify_th314(const LocalSubgroupoid& s, const Atlas& atlas, std::size_t max_opens = kDefaultMaxOpens);

struct RestrictionPropsReport {
  TheoremReport part_i;   // globally + totally coherent => s|U globally coherent
  TheoremReport part_ii;  // s|V globally + totally coherent on a cover => s totally coherent
};

RestrictionPropsReport verify_restriction_props(const LocalSubgroupoid& s, const std::vector<PointSet>& cover,
                                                std::size_t max_opens = kDefaultMaxOpens);

/// Cover check shared by the verifiers: every member open, union = X.
void check_open_cover(const FiniteSpace& space, const std::vector<PointSet>& cover);

}  // namespace locsub
