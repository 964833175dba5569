#include "gtag/gender.hpp"

namespace gtag {

std::string_view to_string(Gender g) {
  switch (g) {
    case Gender::M: return "M";
    case Gender::F: return "F";
    case Gender::N: return "N";
  }
  return "?";
}

std::string to_string(const GenderGuess& g) {
  return g ? std::string(to_string(*g)) : std::string("Unknown");
}

std::optional<Gender> parse_gender(std::string_view s) {
  if (s == "M") return Gender::M;
  if (s == "F") return Gender::F;
  if (s == "N") return Gender::N;
  return std::nullopt;
}

std::string tag_token(Gender g) { return "<" + std::string(to_string(g)) + ">"; }

std::optional<Gender> parse_tag(std::string_view token) {
  if (token.size() != 3 || token.front() != '<' || token.back() != '>') return std::nullopt;
  return parse_gender(token.substr(1, 1));
}

}  // namespace gtag
