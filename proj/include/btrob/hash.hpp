#pragma once

#include <string>
#include <string_view>

namespace btrob {

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

std::string base64_encode(std::string_view bytes);

/// Throws AdapterError on malformed input.
std::string base64_decode(std::string_view text);

}  // namespace btrob
