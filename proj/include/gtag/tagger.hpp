#pragma once

// Source-side tag injection and entity label sources.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gtag/gender.hpp"
#include "gtag/tokens.hpp"

namespace gtag {

enum class Role { Primary, Secondary };

struct EntityAnnotation {
  Span span;
  Gender label;
  Role role = Role::Primary;
};

using RoleSet = std::set<Role>;

/// Inserts each selected annotation's tag right after the span's last token.
Tokens inject_tags(TokenView source, const std::vector<EntityAnnotation>& annotations, const RoleSet& roles);

Tokens strip_tags(TokenView tokens);

/// Reads `sentence_id <TAB> label` lines. When `known_ids` is given, ids
/// outside it are rejected.
std::map<std::string, Gender> import_labels(std::istream& in, std::string_view origin = "<labels>",
                                            const std::set<std::string>* known_ids = nullptr);
std::map<std::string, Gender> import_labels(const std::filesystem::path& path,
                                            const std::set<std::string>* known_ids = nullptr);

/// Pronoun-to-gender table used by the heuristic labeler and conditioning.
GenderGuess pronoun_gender(std::string_view token);

struct HeuristicLabel {
  Span span;
  Gender label;
  bool heuristic = true;  // always set: this is not a coreference model
};

/// Naive stand-in for coreference: the single pronoun's gender, attached to
/// the candidate nearest to it (earlier span on ties).
HeuristicLabel heuristic_label(TokenView source, const std::vector<Span>& candidates);

}  // namespace gtag
