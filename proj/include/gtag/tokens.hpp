#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gtag {

using Tokens = std::vector<std::string>;
using TokenView = std::span<const std::string>;

/// Half-open token range [begin, end).
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return end <= begin; }
  bool overlaps(const Span& o) const { return begin < o.end && o.begin < end; }
  friend bool operator==(const Span&, const Span&) = default;
};

/// Splits on ASCII whitespace.
Tokens split_ws(std::string_view text);

/// Splits on a single delimiter character, keeping empty fields.
std::vector<std::string> split_on(std::string_view text, char delim);

std::string join(TokenView tokens, std::string_view sep = " ");

/// Joins tokens with spaces except before "," and "." tokens.
std::string detokenize(TokenView tokens);

/// Whitespace split followed by detaching leading/trailing punctuation.
Tokens tokenize_sentence(std::string_view sentence);

std::string to_lower_ascii(std::string_view s);

inline bool starts_with_at(TokenView haystack, std::size_t pos, TokenView needle) {
  if (needle.empty() || pos + needle.size() > haystack.size()) return false;
  for (std::size_t i = 0; i < needle.size(); ++i)
    if (haystack[pos + i] != needle[i]) return false;
  return true;
}

}  // namespace gtag
