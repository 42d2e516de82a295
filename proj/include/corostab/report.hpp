#pragma once

#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "corostab/pathsim.hpp"
#include "corostab/stability.hpp"

namespace corostab {

inline constexpr int kSchemaVersion = 1;

/// Voigt-ordered (11, 22, 33, 12, 23, 31) array.
nlohmann::json to_json(const Sym3& s);
nlohmann::json to_json(const SampleRegion& r);
nlohmann::json to_json(const StabilityReport& r);
nlohmann::json to_json(const InvertibilityReport& r);
nlohmann::json to_json(const SearchResult& r);

/// Shortest round-trip decimal form.
std::string format_double(double x);

std::string stability_csv(const StabilityReport& r);

using Overlay = std::function<double(double)>;

/// First line "# <meta json>", then t, sigma (Voigt), B (Voigt), diagnostics[, overlay].
std::string trajectory_csv(const Trajectory& tr, const nlohmann::json& meta,
                           const std::optional<Overlay>& overlay);

std::string utc_timestamp();

}  // namespace corostab
