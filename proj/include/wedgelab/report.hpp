#pragma once

// Run reports. JSON layout:
//   { "meta": {...}, "config": {...}, "checks": [...], "results": {...},
//     "timing": {...}, "error": "..." (only on failure) }
// Keys are emitted in insertion order, so identical runs give identical bytes.

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wedgelab/bounds.hpp"

namespace wedgelab {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr std::string_view kArtifactVersion = "0.1.0";

using Json = nlohmann::ordered_json;

struct RunReport {
  std::string command;
  Json config = Json::object();
  std::optional<std::uint64_t> seed;
  std::vector<TheoremReport> checks;
  Json results = Json::object();  // command-specific payload (spectra, canonical forms, ...)
  std::optional<double> wall_seconds;
  std::optional<std::string> error;

  /// True when no non-skipped check has pass == false and no error occurred.
  [[nodiscard]] bool all_pass() const;
};

[[nodiscard]] Json to_json(const TheoremReport& r);
[[nodiscard]] Json to_json(const RunReport& r);

/// One row per check; details become columns (union of keys, sorted).
[[nodiscard]] std::string to_csv(const RunReport& r);

/// `.csv` paths get CSV, anything else JSON.
void write_report(const RunReport& r, const std::filesystem::path& path);

}  // namespace wedgelab
