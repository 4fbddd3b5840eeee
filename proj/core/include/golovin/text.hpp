#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace golovin::text {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

// Collapses every run of whitespace into one space and trims both ends.
std::string collapse_whitespace(std::string_view s);

// Splits on runs of whitespace.
std::vector<std::string> split_ws(std::string_view s);

// Splits on a single delimiter character, keeping empty fields.
std::vector<std::string> split(std::string_view s, char delim);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Lowercased alphanumeric words; every other character separates words.
std::vector<std::string> words(std::string_view s);

bool starts_with_icase(std::string_view s, std::string_view prefix);

}  // namespace golovin::text
