#pragma once

#include <filesystem>
#include <string>

namespace kgbound {

/// Writes to `path`.tmp and renames over `path`, so readers never see a
/// partial file. Raises IoError.
void write_then_rename(const std::filesystem::path& path, const std::string& text);

/// %.17g, enough digits to round-trip a double.
std::string format_double(double x);

} // namespace kgbound
