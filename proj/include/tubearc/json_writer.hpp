#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace tubearc {

/// Deterministic JSON text: sorted keys, doubles with 17 significant digits,
/// LF line endings, trailing newline.
std::string dump_json(const nlohmann::json& doc, int indent = 2);

/// %.17g
std::string format_double(double value);

/// Writes `content` to `path` through a sibling temp file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace tubearc
