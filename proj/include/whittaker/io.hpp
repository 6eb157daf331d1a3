#ifndef WHITTAKER_IO_HPP
#define WHITTAKER_IO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "whittaker/solver.hpp"

namespace whittaker::io {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

Json rational_json(const Rational& r);
Json rationals_json(const std::vector<Rational>& v);
/// Accepts "p", "p/q" or a JSON integer. Floats are rejected.
Rational rational_from_json(const Json& j, const std::string& field);

Json root_system_json(const RootSystem& rs);
Json descriptor_json(const ModuleDescriptor& d);
Json element_json(const ModulePresentation& p, const ModuleElement& w);
Json truncation_json(const Truncation& t);
Json report_json(const WhittakerReport& r);
Json sweep_json(const RootSystem& rs, const Truncation& t, const std::vector<SweepRow>& rows);
Json corollary_json(const std::vector<LengthRow>& rows);

/// One column per grid axis, then dim, verdict, stabilized, error.
std::string sweep_csv(const std::vector<std::string>& axes, const std::vector<SweepRow>& rows);
std::string report_csv(const WhittakerReport& r);
/// "name  dim ≤ length STATUS" per row.
std::string corollary_text(const std::vector<LengthRow>& rows);
/// "VERDICT dim=N depth=D factor_degree=K stabilized=B".
std::string summary_line(const WhittakerReport& r);

struct RootSpec {
  std::string type = "A";
  int rank = 1;
};

struct InstanceSpec {
  std::string name;
  RootSpec root_system;
  ModuleDescriptor module;
  Truncation truncation;
};

/// Parsed and validated experiment file.
struct ExperimentConfig {
  RootSpec root_system;
  std::optional<ModuleDescriptor> module;
  /// Grid axes in the fixed order lambda, psi, omega, casimir; each value is
  /// a full parameter vector.
  std::vector<std::pair<std::string, std::vector<std::vector<Rational>>>> grid;
  bool has_grid = false;
  std::vector<InstanceSpec> instances;
  Truncation truncation;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output_path;
};

/// Throws Error(InvalidConfig) naming the offending field.
ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::filesystem::path& file);

/// McDowell omega/casimir left empty in the config are drawn from the seed.
void fill_generic_parameters(ModuleDescriptor& d, const RootSystem& rs, std::uint64_t seed);

/// Cartesian product of the grid axes, first axis slowest.
std::vector<SweepPoint> expand_grid(const ExperimentConfig& c);

/// Built-in corollary suite (rank-1 Vermas, universal modules, direct sums).
Json default_corollary_suite();

/// Checks the subset of JSON Schema used by the shipped schemas: type,
/// required, properties, additionalProperties, items, enum, minimum,
/// pattern. Returns one message per violation.
std::vector<std::string> validate(const Json& instance, const Json& schema);

/// Writes through a sibling temporary file and renames it into place.
void atomic_write(const std::filesystem::path& file, const std::string& content);

}  // namespace whittaker::io

#endif  // WHITTAKER_IO_HPP
