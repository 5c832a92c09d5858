#pragma once

#include <string>

#include <json.hpp>

namespace faqkit {

using ordered_json = nlohmann::ordered_json;

// Single-line rendering with ", " and ": " separators, keys in insertion
// order, UTF-8 passed through unescaped. This is the byte format of every
// JSON Lines artifact.
std::string to_json_line(const ordered_json& value);

}  // namespace faqkit
