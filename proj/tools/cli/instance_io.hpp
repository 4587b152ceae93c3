#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "locsub/local_subgroupoid.hpp"

namespace locsub::cli {

using Json = nlohmann::ordered_json;

/// The file could not be read, is not JSON, or does not follow the schema.
/// `where` is a byte offset or a JSON pointer.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, const std::string& message)
      : std::runtime_error(where + ": " + message), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Plain mirror of the instance file schema. Serialising this is lossless.

struct SpaceSpec {
  std::vector<std::string> points;
  std::vector<std::vector<std::string>> basis;
  bool operator==(const SpaceSpec&) const = default;
};

struct GroupSpec {
  std::vector<std::string> elements;
  std::string unit;
  std::vector<std::vector<std::string>> mul;
  bool operator==(const GroupSpec&) const = default;
};

struct ExplicitGroupoidSpec {
  std::vector<GroupoidData::ArrowRecord> arrows;
  std::vector<std::pair<std::string, std::string>> identity_of;
  std::vector<std::pair<std::string, std::string>> inverse_of;
  std::vector<GroupoidData::Composite> compose;
  bool operator==(const ExplicitGroupoidSpec&) const = default;
};
struct PairSpec {
  bool operator==(const PairSpec&) const = default;
};
struct BundleSpec {
  std::vector<std::pair<std::string, GroupSpec>> fibers;
  bool operator==(const BundleSpec&) const = default;
};
struct RelTimesGroupSpec {
  std::vector<std::pair<std::string, std::string>> relation;
  GroupSpec group;
  bool operator==(const RelTimesGroupSpec&) const = default;
};
using GroupoidSpec = std::variant<ExplicitGroupoidSpec, PairSpec, BundleSpec, RelTimesGroupSpec>;

struct ChartSpec {
  std::vector<std::string> open;
  std::vector<std::string> arrows;
  bool operator==(const ChartSpec&) const = default;
};

struct SubgroupoidSpec {
  std::vector<std::string> base;
  std::vector<std::string> arrows;
  bool operator==(const SubgroupoidSpec&) const = default;
};

struct InstanceFile {
  SpaceSpec space;
  GroupoidSpec groupoid;
  std::optional<std::vector<ChartSpec>> atlas;
  std::optional<SubgroupoidSpec> subgroupoid;
  bool operator==(const InstanceFile&) const = default;
};

/// Validated values built from an InstanceFile.
struct Instance {
  InstanceFile file;
  SpacePtr space;
  GroupoidPtr groupoid;
  std::optional<Atlas> atlas;
  std::optional<WideSubgroupoid> subgroupoid;
};

InstanceFile instance_from_json(const Json& doc);
Json instance_to_json(const InstanceFile& file);

/// Builds and validates every value. ValidationError messages are prefixed
/// with the JSON pointer of the offending part of the file.
Instance resolve(InstanceFile file, std::size_t max_opens = kDefaultMaxOpens);

/// Reads, parses and validates an instance file.
Instance parse_input(const std::filesystem::path& path, std::size_t max_opens = kDefaultMaxOpens);
Instance parse_text(const std::string& text, std::size_t max_opens = kDefaultMaxOpens);

/// Explicit-table form of any groupoid, for writing fixtures.
ExplicitGroupoidSpec explicit_spec(const Groupoid& g);

}  // namespace locsub::cli
