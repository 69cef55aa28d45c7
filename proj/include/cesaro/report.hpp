#pragma once

#include "cesaro/bmoa.hpp"
#include "cesaro/config.hpp"
#include "cesaro/operators.hpp"
#include "cesaro/spectra.hpp"
#include "cesaro/weights.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace cesaro {

using json = nlohmann::ordered_json;

/// {tool, version, command, config_hash, modules, config}; thread count and
/// output paths are left out so reports do not depend on them.
json provenance(const RunConfig& cfg, const std::string& command);

json to_json(const CharacteristicReport& r);
json to_json(const ResolventProbeReport& r);
json to_json(const GJReport& r);
json to_json(const PointReport& r);
json to_json(const AxesReport& r);
json to_json(const QuasinilReport& r);
json to_json(const SectorReport& r, const SpectrumMap& map);
json to_json(const StabilityReport& r);
json to_json(const std::vector<StarViolation>& v, const SpectrumMap& map);

/// Grid, exclusion radius and label counts.
json map_summary(const SpectrumMap& map);

/// Columns re,im,label,growth_exponent,weight_verdict, one row per cell in row-major order.
void write_map_csv(std::ostream& out, const SpectrumMap& map);

/// Two-space indented dump with a trailing newline; stdout when path is empty.
void write_json(const json& doc, const std::string& path);
void write_text(const std::string& text, const std::string& path);

json complex_json(cplx z);

} // namespace cesaro
