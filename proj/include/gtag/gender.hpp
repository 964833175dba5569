#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace gtag {

/// Grammatical gender label of a referent.
enum class Gender : std::uint8_t { M = 0, F = 1, N = 2 };

inline constexpr std::array<Gender, 3> kAllGenders{Gender::M, Gender::F, Gender::N};
inline constexpr std::array<Gender, 2> kBinaryGenders{Gender::M, Gender::F};

/// nullopt stands for "Unknown" wherever a classification can fail.
using GenderGuess = std::optional<Gender>;

constexpr std::size_t index_of(Gender g) { return static_cast<std::size_t>(g); }

std::string_view to_string(Gender g);
std::string to_string(const GenderGuess& g);  // "Unknown" for nullopt

/// Accepts "M", "F" or "N".
std::optional<Gender> parse_gender(std::string_view s);

/// Source-side tag token, e.g. "<F>".
std::string tag_token(Gender g);
std::optional<Gender> parse_tag(std::string_view token);
inline bool is_tag(std::string_view token) { return parse_tag(token).has_value(); }

}  // namespace gtag
