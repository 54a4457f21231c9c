#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "sphsolve/polysys.hpp"

namespace sphsolve {

inline constexpr int kSchemaVersion = 1;

/// JSON document {schema_version, d, degrees, polys: [[exponents, coeff],...]}.
/// Round-trips bit-exactly for finite doubles.
nlohmann::json system_to_json(const PolynomialSystem& sys);
PolynomialSystem system_from_json(const nlohmann::json& j);

/// Seeded generation record {schema_version, d, degrees, seed, rng} so a
/// system can be regenerated instead of stored.
nlohmann::json generation_record(int d, const std::vector<int>& degrees,
                                 std::uint64_t seed);

/// Load either a full system document or a generation record.
PolynomialSystem load_system(const nlohmann::json& j);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace sphsolve
