#pragma once

#include <string>
#include <string_view>

namespace theft_trace {

// Hex digest of the given bytes.
std::string sha256_hex(std::string_view data);

// Hex digest of a file's contents; throws on IO failure.
std::string sha256_file_hex(const std::string& path);

}  // namespace theft_trace
