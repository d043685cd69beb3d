#pragma once

#include <filesystem>
#include <string>

namespace citenorm::cli {

/// Lowercase hex SHA-256 of the file's bytes. Throws validation_error when
/// the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace citenorm::cli
