#pragma once

#include <algorithm>
#include <array>
#include <string_view>

namespace golovin {

// The fixed movement vocabulary used for exploration.
inline constexpr std::array<std::string_view, 16> kMoveWords{
    "south", "north", "east", "west", "northeast", "northwest", "southeast", "southwest",
    "up",    "down",  "left", "right", "enter",    "exit",      "in",        "out"};

// Moves that name a direction. These never count as nouns in a description,
// whereas "exit" or "enter" often do.
inline constexpr std::array<std::string_view, 12> kDirectionWords{
    "south", "north", "east", "west", "northeast", "northwest", "southeast", "southwest",
    "up",    "down",  "left", "right"};

inline bool is_move_word(std::string_view w) {
  return std::find(kMoveWords.begin(), kMoveWords.end(), w) != kMoveWords.end();
}

inline bool is_direction_word(std::string_view w) {
  return std::find(kDirectionWords.begin(), kDirectionWords.end(), w) != kDirectionWords.end();
}

}  // namespace golovin
