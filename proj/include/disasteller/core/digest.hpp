#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace disasteller::core {

using Bytes = std::vector<std::uint8_t>;

/// Lowercase hex SHA-256.
std::string sha256_hex(std::span<const std::uint8_t> data);
std::string sha256_hex(std::string_view data);

std::string base64_encode(std::span<const std::uint8_t> data);
/// Throws Error(MalformedResponse) on invalid input.
Bytes base64_decode(std::string_view text);

Bytes read_file(const std::string& path);
std::string read_text_file(const std::string& path);
/// Fails with IoError if the file exists; never overwrites.
void write_new_file(const std::string& path, std::span<const std::uint8_t> data);
void write_new_file(const std::string& path, std::string_view data);

}  // namespace disasteller::core
