#pragma once

#include <string>

#include <json.hpp>

namespace inellipse {

/// Compact JSON with object keys sorted and every float printed with 17
/// significant digits. Non-finite numbers become null.
std::string to_canonical_json(const nlohmann::json& value);

}  // namespace inellipse
