#pragma once

#include "pconvex/types.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace pconvex::cli {

/// On-disk body description. Doubles survive a save/load round trip
/// bit-exactly (shortest round-trip decimal emission).
struct BodyFile {
    PBody body;
    std::optional<std::string> name;
};

BodyFile load_body(const std::string& path);
void save_body(const BodyFile& body, const std::string& path);

PCombination load_combination(const std::string& path);
nlohmann::json combination_to_json(const PCombination& comb);

LinearMap load_map(const std::string& path);

/// Parses a comma-separated coordinate list, e.g. "0.25,0.25".
Vector parse_vector(const std::string& text);

/// 17-significant-digit decimal, enough to round-trip any double.
std::string format_double(double v);

/// Sidecar manifest describing a run. The timestamp honors
/// SOURCE_DATE_EPOCH so reruns can be made byte-identical.
void write_manifest(const std::string& out_path, const std::string& command,
                    const nlohmann::json& parameters, std::uint64_t seed);

}  // namespace pconvex::cli
