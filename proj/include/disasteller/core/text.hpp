#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace disasteller::core {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

/// Lowercase, punctuation dropped, whitespace runs collapsed to one space,
/// trimmed. Used for gazetteer names and web-search fixture keys.
std::string normalize_name(std::string_view s);

std::vector<std::string> split_lines(std::string_view text);
std::vector<std::string> split_whitespace(std::string_view text);

bool contains_icase(std::string_view haystack, std::string_view needle);

}  // namespace disasteller::core
