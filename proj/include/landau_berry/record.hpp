#pragma once

// Result records: deterministic JSON text and the config hash.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "landau_berry/fock.hpp"

namespace landau {

using Json = nlohmann::json;

/// Compact JSON with keys in sorted order and every double printed with 17
/// significant digits, so parse -> write reproduces the text byte for byte.
/// Non-finite doubles become null.
std::string write_json(const Json& value);

/// {"rows", "cols", "re": [...], "im": [...]}, row-major.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

/// 64-bit FNV-1a over the bytes of `text`.
std::uint64_t fnv1a64(const std::string& text);
/// Hash of the canonical (sorted-key, compact) dump of a config, as 16
/// lowercase hex digits.
std::string config_hash(const Json& config);

inline constexpr const char* kArtifactVersion = "0.1.0";

}  // namespace landau
