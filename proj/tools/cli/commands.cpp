#include "cli/commands.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "locsub/errors.hpp"
#include "locsub/oracle.hpp"

namespace locsub::cli {
namespace {

constexpr std::size_t kMaxReportedCounterexamples = 10;
constexpr std::size_t kMaxExhaustiveSubsetPoints = 10;

// Suite groupoids never exceed their own arrow bound.
std::size_t suite_arrow_bound(std::size_t max_extra_arrows) {
  return std::max(max_extra_arrows, kDefaultMaxNonIdentityArrows);
}

Json label_set(const FiniteSpace& space, PointSet s) { return space.labels_of(s); }

Json label_sets(const FiniteSpace& space, const std::vector<PointSet>& sets) {
  Json out = Json::array();
  for (PointSet s : sets) out.push_back(label_set(space, s));
  return out;
}

Json per_point(const FiniteSpace& space, const std::vector<PointSet>& sets) {
  Json out = Json::object();
  for (PointId p = 0; p < space.size(); ++p) out[space.label(p)] = label_set(space, sets[p]);
  return out;
}

struct Subject {
  LocalSubgroupoid section;
  Atlas atlas;
  std::string source;
};

Subject subject_of(const Instance& inst) {
  if (inst.atlas) return {section_from_atlas(*inst.atlas), *inst.atlas, "atlas"};
  if (inst.subgroupoid) {
    if (inst.subgroupoid->base() != inst.space->all()) {
      throw ValidationError(ErrorCategory::kNotWide, "/subgroupoid: loc needs a subgroupoid over the whole space");
    }
    return {loc(inst.space, *inst.subgroupoid), single_chart_atlas(inst.space, *inst.subgroupoid), "subgroupoid"};
  }
  throw UsageError("the instance needs an \"atlas\" or a \"subgroupoid\"");
}

// The subgroupoid the per-subgroupoid checkers run on.
WideSubgroupoid theorem_subgroupoid(const Instance& inst, const LocalSubgroupoid& s) {
  if (inst.subgroupoid && inst.subgroupoid->base() == inst.space->all()) return *inst.subgroupoid;
  return glob(s);
}

Json certificate_json(const Certificate& c) {
  Json out = Json::object();
  for (const auto& e : c.entries) out[e.name] = e.sets;
  if (!c.notes.empty()) out["notes"] = c.notes;
  return out;
}

struct GlobComparison {
  WideSubgroupoid fast, by_definition, by_refinements;
  bool equal() const { return fast == by_definition && fast == by_refinements; }
};

GlobComparison compare_globs(const LocalSubgroupoid& s, const Atlas& atlas, std::size_t max_arrows) {
  return {glob(s), glob_by_subgroupoid_defn(s, max_arrows), glob_by_refinements(s, atlas)};
}

// Every checker on one subgroupoid, the cover checker over the minimal
// neighbourhood cover and every two-element open cover.
std::vector<TheoremReport> subgroupoid_battery(const SpacePtr& space, const WideSubgroupoid& h) {
  std::vector<TheoremReport> out;
  const LocalSubgroupoid lh = loc(space, h);
  out.push_back(verify_pr39(lh, h, minimal_neighbourhood_cover(*space)));
  for (const auto& cover : two_element_covers(*space)) out.push_back(verify_pr39(lh, h, cover));
  out.push_back(verify_th310(space, h));
  Th312Report th312 = verify_th312(space, h);
  out.push_back(std::move(th312.forward));
  out.push_back(std::move(th312.converse));
  return out;
}

std::vector<TheoremReport> section_battery(const LocalSubgroupoid& s, const Atlas& atlas, std::size_t max_opens) {
  std::vector<TheoremReport> out;
  out.push_back(verify_th314(s, atlas, max_opens));
  RestrictionPropsReport rp = verify_restriction_props(s, minimal_neighbourhood_cover(s.space()), max_opens);
  out.push_back(std::move(rp.part_i));
  out.push_back(std::move(rp.part_ii));
  return out;
}

std::string render_inline(const Json& j) {
  if (j.is_null()) return "-";
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number()) return j.dump();
  if (j.is_array()) {
    if (j.empty()) return "[]";
    const bool nested = std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_array(); });
    std::string s = nested ? "[" : "{";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? (nested ? " " : ",") : "") + render_inline(j[i]);
    return s + (nested ? "]" : "}");
  }
  return j.dump();
}

bool is_flat(const Json& j) {
  if (!j.is_structured()) return true;
  if (j.is_object()) return false;
  return std::all_of(j.begin(), j.end(), [](const Json& e) {
    return !e.is_structured() || (e.is_array() && std::all_of(e.begin(), e.end(), [](const Json& x) { return !x.is_structured(); }));
  });
}

void render(const Json& j, int indent, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    std::size_t width = 0;
    for (auto it = j.begin(); it != j.end(); ++it) width = std::max(width, it.key().size());
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (is_flat(it.value())) {
        out << pad << it.key() << std::string(width - it.key().size(), ' ') << " : " << render_inline(it.value())
            << "\n";
      } else {
        out << pad << it.key() << ":\n";
        render(it.value(), indent + 2, out);
      }
    }
  } else if (j.is_array()) {
    for (const Json& e : j) {
      if (is_flat(e)) {
        out << pad << "- " << render_inline(e) << "\n";
      } else {
        out << pad << "-\n";
        render(e, indent + 2, out);
      }
    }
  } else {
    out << pad << render_inline(j) << "\n";
  }
}

}  // namespace

Json theorem_json(const TheoremReport& r) {
  return Json{{"theorem", r.theorem},
              {"status", std::string(to_string(r.status()))},
              {"hypothesis_holds", r.hypothesis_holds},
              {"conclusion_holds", r.conclusion_holds},
              {"evidence", certificate_json(r.evidence)},
              {"counterexample", r.counterexample ? certificate_json(*r.counterexample) : Json(nullptr)}};
}

std::string render_text(const Json& doc) {
  std::ostringstream out;
  render(doc, 0, out);
  return out.str();
}

Json analyze(const Instance& inst, std::size_t max_opens) {
  const FiniteSpace& space = *inst.space;
  const Subject subj = subject_of(inst);
  const LocalSubgroupoid& s = subj.section;

  Json germs = Json::object();
  for (PointId x = 0; x < space.size(); ++x) germs[space.label(x)] = s.rep(x).arrow_ids();

  const CoherenceReport coh = coherence_report(s);
  Json witnesses = Json::array();
  for (const auto& w : coh.witnesses) {
    witnesses.push_back(Json{{"point", space.label(w.point)},
                             {"section_germ", w.section_germ.rep.arrow_ids()},
                             {"glob_germ", w.glob_germ.rep.arrow_ids()},
                             {"contained", w.contained}});
  }
  const TotalCoherence total = is_totally_coherent(s, max_opens);
  const FiniteSpace foliated = foliation_space(s, subj.atlas, max_opens);

  Json doc{{"command", "analyze"},
           {"space", Json{{"points", space.labels()},
                          {"minimal_opens", per_point(space, space.minimal_opens())},
                          {"open_count", space.opens().size()}}},
           {"section", Json{{"source", subj.source}, {"germs", germs}}},
           {"glob", Json{{"arrows", coh.glob.arrow_ids()},
                         {"components", label_sets(space, transitivity_components(coh.glob))}}},
           {"coherence", Json{{"coherent", coh.coherent},
                              {"globally_coherent", coh.globally_coherent},
                              {"witnesses", witnesses}}},
           {"totally_coherent", Json{{"value", total.totally_coherent},
                                     {"failing_open", total.failing_open ? label_set(space, *total.failing_open)
                                                                         : Json(nullptr)}}}};
  if (inst.subgroupoid) {
    const WideSubgroupoid& h = *inst.subgroupoid;
    Json sub{{"base", space.labels_of(h.base())},
             {"arrows", h.arrow_ids()},
             {"components", label_sets(space, transitivity_components(h))}};
    if (h.base() == space.all()) {
      const SubgroupoidCoherence sc = subgroupoid_coherence(inst.space, h);
      sub["locally_coherent"] = sc.locally_coherent;
      sub["coherent"] = sc.coherent;
    }
    doc["subgroupoid"] = sub;
  }
  doc["foliation"] = Json{{"minimal_opens", per_point(space, foliated.minimal_opens())},
                          {"opens", label_sets(space, foliated.opens())},
                          {"components", label_sets(space, connected_components(foliated, foliated.all()))}};
  return doc;
}

CommandResult verify(const Instance& inst, std::size_t max_opens, std::size_t max_arrows) {
  const FiniteSpace& space = *inst.space;
  const Subject subj = subject_of(inst);
  const LocalSubgroupoid& s = subj.section;

  const GlobComparison globs = compare_globs(s, subj.atlas, max_arrows);
  const bool coherent = coherence_report(s).coherent;
  const WideSubgroupoid h = theorem_subgroupoid(inst, s);

  Json theorems = Json::array();
  for (const auto& r : subgroupoid_battery(inst.space, h)) theorems.push_back(theorem_json(r));
  for (const auto& r : section_battery(s, subj.atlas, max_opens)) theorems.push_back(theorem_json(r));

  const bool ok = globs.equal() && coherent;
  Json doc{{"command", "verify"},
           {"mode", "instance"},
           {"section_source", subj.source},
           {"theorem_subgroupoid", Json{{"arrows", h.arrow_ids()},
                                        {"components", label_sets(space, transitivity_components(h))}}},
           {"glob_equality", Json{{"fast", globs.fast.arrow_ids()},
                                  {"by_definition", globs.by_definition.arrow_ids()},
                                  {"by_refinements", globs.by_refinements.arrow_ids()},
                                  {"equal", globs.equal()}}},
           {"coherence_collapse", Json{{"coherent", coherent}}},
           {"theorems", theorems},
           {"status", ok ? "ok" : "internal-invariant-violation"}};
  return {doc, ok ? kExitOk : kExitInternal};
}

CommandResult verify_suite(std::size_t max_points, std::size_t max_extra_arrows, std::size_t max_opens) {
  const InstanceSuite suite = instance_suite(max_points, max_extra_arrows);
  std::map<std::string, std::map<std::string, std::size_t>> tally;
  Json counterexamples = Json::array();
  std::size_t sections = 0, wide = 0, glob_mismatch = 0, incoherent = 0;

  auto record = [&](const SuiteInstance& inst, const TheoremReport& r) {
    ++tally[r.theorem][std::string(to_string(r.status()))];
    if (r.counterexample && counterexamples.size() < kMaxReportedCounterexamples) {
      Json c = theorem_json(r);
      c["instance"] = inst.name;
      counterexamples.push_back(c);
    }
  };
  for (const SuiteInstance& inst : suite.instances) {
    for (const WideSubgroupoid& h : inst.wide) {
      ++wide;
      for (const auto& r : subgroupoid_battery(inst.space, h)) record(inst, r);
    }
    for (const SuiteSection& ss : inst.sections) {
      ++sections;
      if (!compare_globs(ss.section, ss.atlas, suite_arrow_bound(max_extra_arrows)).equal()) ++glob_mismatch;
      if (!coherence_report(ss.section).coherent) ++incoherent;
      for (const auto& r : section_battery(ss.section, ss.atlas, max_opens)) record(inst, r);
    }
  }
  Json theorems = Json::object();
  for (const auto& [name, counts] : tally) {
    Json c{{"pass", 0}, {"vacuous", 0}, {"counterexample", 0}};
    for (const auto& [status, n] : counts) c[status] = n;
    theorems[name] = c;
  }
  const bool ok = glob_mismatch == 0 && incoherent == 0;
  Json doc{{"command", "verify"},
           {"mode", "suite"},
           {"suite", Json{{"max_points", max_points},
                          {"max_extra_arrows", max_extra_arrows},
                          {"instances", suite.instances.size()},
                          {"sections", sections},
                          {"wide_subgroupoids", wide}}},
           {"glob_equality", Json{{"checked", sections}, {"mismatches", glob_mismatch}}},
           {"coherence_collapse", Json{{"checked", sections}, {"failures", incoherent}}},
           {"theorems", theorems},
           {"counterexamples", counterexamples},
           {"status", ok ? "ok" : "internal-invariant-violation"}};
  return {doc, ok ? kExitOk : kExitInternal};
}

namespace {

struct OracleTally {
  std::size_t glob_checked = 0, glob_mismatches = 0;
  std::size_t connectivity_checked = 0, connectivity_mismatches = 0;
  std::size_t wide_checked = 0, wide_invalid = 0;
  Json failures = Json::array();

  void connectivity(const std::string& where, const FiniteSpace& space, PointSet subset) {
    ++connectivity_checked;
    const bool fast = connected_components(space, subset).size() <= 1;
    if (fast != connected_by_partition(space, subset)) {
      ++connectivity_mismatches;
      failures.push_back(Json{{"where", where}, {"check", "connectivity"}, {"subset", space.labels_of(subset)}});
    }
  }

  void space_subsets(const std::string& where, const FiniteSpace& space) {
    if (space.size() <= kMaxExhaustiveSubsetPoints) {
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << space.size()); ++b) connectivity(where, space, PointSet(b));
    } else if (space.size() <= kMaxPartitionSubset) {
      connectivity(where, space, space.all());
    }
  }

  void globs(const std::string& where, const LocalSubgroupoid& s, const Atlas& atlas, std::size_t max_arrows) {
    ++glob_checked;
    const GlobComparison c = compare_globs(s, atlas, max_arrows);
    if (!c.equal()) {
      ++glob_mismatches;
      failures.push_back(Json{{"where", where}, {"check", "glob"}, {"fast", c.fast.arrow_ids()},
                              {"by_definition", c.by_definition.arrow_ids()},
                              {"by_refinements", c.by_refinements.arrow_ids()}});
    }
  }

  void wide(const std::string& where, const std::vector<WideSubgroupoid>& subs) {
    for (const auto& h : subs) {
      ++wide_checked;
      try {
        WideSubgroupoid::make(h.parent_ptr(), h.base(), h.arrows());
      } catch (const ValidationError& e) {
        ++wide_invalid;
        failures.push_back(Json{{"where", where}, {"check", "wide-subgroupoid"}, {"error", e.what()}});
      }
    }
  }

  CommandResult result(Json scope) const {
    const bool ok = glob_mismatches == 0 && connectivity_mismatches == 0 && wide_invalid == 0;
    Json doc{{"command", "oracle-check"},
             {"scope", std::move(scope)},
             {"glob", Json{{"checked", glob_checked}, {"mismatches", glob_mismatches}}},
             {"connectivity", Json{{"checked", connectivity_checked}, {"mismatches", connectivity_mismatches}}},
             {"wide_enumeration", Json{{"checked", wide_checked}, {"invalid", wide_invalid}}},
             {"failures", failures},
             {"status", ok ? "ok" : "internal-invariant-violation"}};
    return {doc, ok ? kExitOk : kExitInternal};
  }
};

}  // namespace

CommandResult oracle_check(const Instance& inst, std::size_t max_arrows) {
  const Subject subj = subject_of(inst);
  OracleTally t;
  t.globs("instance", subj.section, subj.atlas, max_arrows);
  t.space_subsets("instance", *inst.space);
  t.wide("instance", enumerate_wide_subgroupoids(inst.groupoid, inst.space->all(), max_arrows));
  return t.result(Json{{"mode", "instance"}});
}

CommandResult oracle_check_suite(std::size_t max_points, std::size_t max_extra_arrows) {
  const InstanceSuite suite = instance_suite(max_points, max_extra_arrows);
  OracleTally t;
  for (const SuiteInstance& inst : suite.instances) {
    for (const SuiteSection& ss : inst.sections) t.globs(inst.name, ss.section, ss.atlas, suite_arrow_bound(max_extra_arrows));
    t.space_subsets(inst.name, *inst.space);
    t.wide(inst.name, inst.wide);
  }
  return t.result(Json{{"mode", "suite"}, {"max_points", max_points}, {"max_extra_arrows", max_extra_arrows}});
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local subgroupoids of finite groupoids over finite spaces"};
  app.require_subcommand(1);
  std::string input, format = "json", suite_spec;
  std::size_t max_opens = kDefaultMaxOpens;
  std::size_t max_arrows = kDefaultMaxNonIdentityArrows;

  auto add_common = [&](CLI::App* sub, bool allow_suite) {
    sub->add_option("--input", input, "Instance file (JSON)");
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--max-opens", max_opens, "Cap on the number of open sets")->capture_default_str();
    if (allow_suite) {
      sub->add_option("--max-arrows", max_arrows, "Cap on non-identity arrows for subgroupoid enumeration")
          ->capture_default_str();
    }
    if (allow_suite) sub->add_option("--suite", suite_spec, "Enumerated suite \"points,arrows\"");
  };
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Coherence report for one instance");
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the theorem checkers");
  CLI::App* oracle_cmd = app.add_subcommand("oracle-check", "Compare fast algorithms with oracles");
  add_common(analyze_cmd, false);
  add_common(verify_cmd, true);
  add_common(oracle_cmd, true);

  auto fail = [&](int code, std::string_view category, const std::string& message) {
    err << "locsub: error[" << category << "]: " << message << "\n";
    return code;
  };

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }

    auto parse_suite = [&]() -> std::pair<std::size_t, std::size_t> {
      const auto comma = suite_spec.find(',');
      try {
        if (comma == std::string::npos) throw std::invalid_argument("comma");
        return {std::stoul(suite_spec.substr(0, comma)), std::stoul(suite_spec.substr(comma + 1))};
      } catch (const std::exception&) {
        throw UsageError("--suite expects \"points,arrows\"");
      }
    };
    auto need_one_source = [&](bool suite_allowed) {
      const bool has_suite = suite_allowed && !suite_spec.empty();
      if (has_suite == !input.empty()) {
        throw UsageError(suite_allowed ? "give exactly one of --input or --suite" : "--input is required");
      }
      return has_suite;
    };

    CommandResult result;
    if (analyze_cmd->parsed()) {
      need_one_source(false);
      result.document = analyze(parse_input(input, max_opens), max_opens);
    } else if (verify_cmd->parsed()) {
      if (need_one_source(true)) {
        const auto [points, arrows] = parse_suite();
        result = verify_suite(points, arrows, max_opens);
      } else {
        result = verify(parse_input(input, max_opens), max_opens, max_arrows);
      }
    } else {
      if (need_one_source(true)) {
        const auto [points, arrows] = parse_suite();
        result = oracle_check_suite(points, arrows);
      } else {
        result = oracle_check(parse_input(input, max_opens), max_arrows);
      }
    }
    out << (format == "text" ? render_text(result.document) : result.document.dump(2) + "\n");
    if (result.exit_code == kExitInternal) err << "locsub: error[internal]: an internal invariant failed\n";
    return result.exit_code;
  } catch (const UsageError& e) {
    return fail(kExitUsage, "usage", e.what());
  } catch (const ParseError& e) {
    return fail(kExitParse, "parse", e.what());
  } catch (const ValidationError& e) {
    return fail(kExitInvalidInstance, to_string(e.category()), e.what());
  } catch (const ResourceError& e) {
    return fail(kExitResource, "resource", e.what());
  } catch (const InvariantError& e) {
    return fail(kExitInternal, "internal", e.what());
  }
}

}  // namespace locsub::cli
