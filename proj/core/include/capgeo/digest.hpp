#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace capgeo {

// SHA-256 hex digest; the fingerprint primitive for request caching and the
// image content store.
std::string sha256_hex(const void* data, std::size_t size);
std::string sha256_hex(std::string_view text);
std::string sha256_hex(const std::vector<unsigned char>& bytes);

}  // namespace capgeo
