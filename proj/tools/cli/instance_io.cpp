#include "cli/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "locsub/errors.hpp"

namespace locsub::cli {
namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

const Json& member(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path, std::string("missing key \"") + key + "\"");
  return *it;
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> as_strings(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], child(path, i)));
  return out;
}

std::vector<std::vector<std::string>> as_string_lists(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array of arrays");
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_strings(j[i], child(path, i)));
  return out;
}

std::vector<std::pair<std::string, std::string>> as_string_map(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object of strings");
  std::vector<std::pair<std::string, std::string>> out;
  for (auto it = j.begin(); it != j.end(); ++it) out.emplace_back(it.key(), as_string(it.value(), child(path, it.key())));
  return out;
}

GroupSpec group_from_json(const Json& j, const std::string& path) {
  return GroupSpec{as_strings(member(j, "elements", path), child(path, "elements")),
                   as_string(member(j, "unit", path), child(path, "unit")),
                   as_string_lists(member(j, "mul", path), child(path, "mul"))};
}

Json group_to_json(const GroupSpec& g) { return Json{{"elements", g.elements}, {"unit", g.unit}, {"mul", g.mul}}; }

GroupoidSpec groupoid_from_json(const Json& j, const std::string& path) {
  const std::string kind = as_string(member(j, "kind", path), child(path, "kind"));
  if (kind == "pair") return PairSpec{};
  if (kind == "bundle") {
    const std::string fp = child(path, "fibers");
    const Json& fibers = member(j, "fibers", path);
    if (!fibers.is_object()) throw ParseError(fp, "expected an object");
    BundleSpec spec;
    for (auto it = fibers.begin(); it != fibers.end(); ++it) {
      spec.fibers.emplace_back(it.key(), group_from_json(it.value(), child(fp, it.key())));
    }
    return spec;
  }
  if (kind == "rel_times_group") {
    RelTimesGroupSpec spec;
    const std::string rp = child(path, "relation");
    const auto pairs = as_string_lists(member(j, "relation", path), rp);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (pairs[i].size() != 2) throw ParseError(child(rp, i), "expected a pair");
      spec.relation.emplace_back(pairs[i][0], pairs[i][1]);
    }
    spec.group = group_from_json(member(j, "group", path), child(path, "group"));
    return spec;
  }
  if (kind == "explicit") {
    ExplicitGroupoidSpec spec;
    const std::string ap = child(path, "arrows");
    const Json& arrows = member(j, "arrows", path);
    if (!arrows.is_array()) throw ParseError(ap, "expected an array");
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      const std::string p = child(ap, i);
      spec.arrows.push_back({as_string(member(arrows[i], "id", p), child(p, "id")),
                             as_string(member(arrows[i], "src", p), child(p, "src")),
                             as_string(member(arrows[i], "tgt", p), child(p, "tgt"))});
    }
    spec.identity_of = as_string_map(member(j, "identity_of", path), child(path, "identity_of"));
    spec.inverse_of = as_string_map(member(j, "inverse_of", path), child(path, "inverse_of"));
    const std::string cp = child(path, "compose");
    const auto triples = as_string_lists(member(j, "compose", path), cp);
    for (std::size_t i = 0; i < triples.size(); ++i) {
      if (triples[i].size() != 3) throw ParseError(child(cp, i), "expected [first, second, result]");
      spec.compose.push_back({triples[i][0], triples[i][1], triples[i][2]});
    }
    return spec;
  }
  throw ParseError(child(path, "kind"), "unknown groupoid kind \"" + kind + "\"");
}

struct GroupoidToJson {
  Json operator()(const PairSpec&) const { return Json{{"kind", "pair"}}; }
  Json operator()(const BundleSpec& b) const {
    Json fibers = Json::object();
    for (const auto& [point, g] : b.fibers) fibers[point] = group_to_json(g);
    return Json{{"kind", "bundle"}, {"fibers", fibers}};
  }
  Json operator()(const RelTimesGroupSpec& r) const {
    Json rel = Json::array();
    for (const auto& [p, q] : r.relation) rel.push_back(Json::array({p, q}));
    return Json{{"kind", "rel_times_group"}, {"relation", rel}, {"group", group_to_json(r.group)}};
  }
  Json operator()(const ExplicitGroupoidSpec& e) const {
    Json arrows = Json::array();
    for (const auto& a : e.arrows) arrows.push_back(Json{{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}});
    Json identity = Json::object();
    for (const auto& [o, a] : e.identity_of) identity[o] = a;
    Json inverse = Json::object();
    for (const auto& [a, b] : e.inverse_of) inverse[a] = b;
    Json compose = Json::array();
    for (const auto& c : e.compose) compose.push_back(Json::array({c.first, c.second, c.result}));
    return Json{{"kind", "explicit"}, {"arrows", arrows}, {"identity_of", identity}, {"inverse_of", inverse},
                {"compose", compose}};
  }
};

FiniteGroup build_group(const GroupSpec& g) { return FiniteGroup::make(g.elements, g.unit, g.mul); }

struct GroupoidBuilder {
  const std::vector<std::string>& points;
  Groupoid operator()(const PairSpec&) const { return pair_groupoid(points); }
  Groupoid operator()(const BundleSpec& b) const {
    std::map<std::string, FiniteGroup> fibers;
    for (const auto& [point, g] : b.fibers) {
      if (!fibers.emplace(point, build_group(g)).second) {
        throw ValidationError(ErrorCategory::kDuplicateLabel, "two fibres over '" + point + "'");
      }
    }
    return group_bundle(points, fibers);
  }
  Groupoid operator()(const RelTimesGroupSpec& r) const {
    auto pairs = std::make_shared<const Groupoid>(pair_groupoid(points));
    ArrowSet seed = pairs->empty_arrow_set();
    for (const auto& [p, q] : r.relation) {
      pairs->object_index(p);
      pairs->object_index(q);
      seed.set(pairs->arrow_index(p + ":" + q));
    }
    return rel_times_group(generate_wide(pairs, pairs->all_objects(), seed), build_group(r.group));
  }
  Groupoid operator()(const ExplicitGroupoidSpec& e) const {
    return validate_groupoid(GroupoidData{points, e.arrows, e.identity_of, e.inverse_of, e.compose});
  }
};

template <typename F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw ValidationError(e.category(), path + ": " + e.what());
  }
}

}  // namespace

InstanceFile instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("", "instance must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& k = it.key();
    if (k != "space" && k != "groupoid" && k != "atlas" && k != "subgroupoid") {
      throw ParseError("/" + k, "unknown top-level key");
    }
  }
  InstanceFile f;
  const Json& space = member(doc, "space", "");
  f.space.points = as_strings(member(space, "points", "/space"), "/space/points");
  f.space.basis = as_string_lists(member(space, "basis", "/space"), "/space/basis");
  f.groupoid = groupoid_from_json(member(doc, "groupoid", ""), "/groupoid");
  if (auto it = doc.find("atlas"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("/atlas", "expected an array of charts");
    std::vector<ChartSpec> charts;
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string p = child("/atlas", i);
      charts.push_back(ChartSpec{as_strings(member((*it)[i], "open", p), child(p, "open")),
                                 as_strings(member((*it)[i], "arrows", p), child(p, "arrows"))});
    }
    f.atlas = std::move(charts);
  }
  if (auto it = doc.find("subgroupoid"); it != doc.end()) {
    f.subgroupoid = SubgroupoidSpec{as_strings(member(*it, "base", "/subgroupoid"), "/subgroupoid/base"),
                                    as_strings(member(*it, "arrows", "/subgroupoid"), "/subgroupoid/arrows")};
  }
  return f;
}

Json instance_to_json(const InstanceFile& f) {
  Json doc{{"space", Json{{"points", f.space.points}, {"basis", f.space.basis}}},
           {"groupoid", std::visit(GroupoidToJson{}, f.groupoid)}};
  if (f.atlas) {
    Json charts = Json::array();
    for (const auto& c : *f.atlas) charts.push_back(Json{{"open", c.open}, {"arrows", c.arrows}});
    doc["atlas"] = charts;
  }
  if (f.subgroupoid) doc["subgroupoid"] = Json{{"base", f.subgroupoid->base}, {"arrows", f.subgroupoid->arrows}};
  return doc;
}

Instance resolve(InstanceFile file, std::size_t max_opens) {
  Instance inst{std::move(file), nullptr, nullptr, std::nullopt, std::nullopt};
  const InstanceFile& f = inst.file;
  inst.space = at_path("/space", [&] {
    return std::make_shared<const FiniteSpace>(space_from_basis(f.space.points, f.space.basis, max_opens));
  });
  inst.groupoid = at_path("/groupoid", [&] {
    auto g = std::make_shared<const Groupoid>(std::visit(GroupoidBuilder{f.space.points}, f.groupoid));
    check_compatible(*inst.space, *g);
    return GroupoidPtr(g);
  });
  if (f.atlas) {
    std::vector<Chart> charts;
    for (std::size_t i = 0; i < f.atlas->size(); ++i) {
      const ChartSpec& c = (*f.atlas)[i];
      charts.push_back(at_path(child("/atlas", i), [&] {
        const PointSet open = inst.space->set_of(c.open);
        return Chart{open, WideSubgroupoid::make(inst.groupoid, open, c.arrows)};
      }));
    }
    inst.atlas = at_path("/atlas", [&] {
      Atlas a = Atlas::make(inst.space, inst.groupoid, std::move(charts));
      section_from_atlas(a);
      return a;
    });
  }
  if (f.subgroupoid) {
    inst.subgroupoid = at_path("/subgroupoid", [&] {
      return WideSubgroupoid::make(inst.groupoid, inst.space->set_of(f.subgroupoid->base), f.subgroupoid->arrows);
    });
  }
  return inst;
}

Instance parse_text(const std::string& text, std::size_t max_opens) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "malformed JSON");
  }
  return resolve(instance_from_json(doc), max_opens);
}

Instance parse_input(const std::filesystem::path& path, std::size_t max_opens) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot read file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), max_opens);
}

ExplicitGroupoidSpec explicit_spec(const Groupoid& g) {
  GroupoidData d = to_data(g);
  return ExplicitGroupoidSpec{std::move(d.arrows), std::move(d.identity_of), std::move(d.inverse_of),
                              std::move(d.compose)};
}

}  // namespace locsub::cli
