#pragma once

// Source conditioning for n-gram rescoring. An n-gram LM over plain
// `source <SEP> target` strings cannot see a tag dozens of tokens back, so
// the scored sequence is instead the target itself, prefixed by a cue naming
// the source pronoun genders and with each source tag moved in front of the
// aligned target noun phrase. Profession nouns collapse to one class token so
// the adaptation corpus generalizes across lexemes.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gtag/lattice.hpp"
#include "gtag/morphlex.hpp"
#include "gtag/tokens.hpp"

namespace gtag {

inline constexpr std::string_view kNounClass = "<noun>";

/// "<ctx:F>", "<ctx:MF>", ... from the source pronouns; "<ctx:->" if none.
std::string source_cue(TokenView source);

bool is_cue(std::string_view token);

struct TargetTag {
  Span span;  // target noun phrase
  Gender gender;
};

/// cue + target with tag tokens inserted before each tagged span.
Tokens conditioned_target(const std::string& cue, TokenView target, std::vector<TargetTag> tags);

/// Drops cue and tag tokens.
Tokens strip_conditioning(TokenView tokens);

class ScoringView {
 public:
  ScoringView(const Lexicon& lexicon, const Language& language);

  const std::string& map(const std::string& token) const;
  Tokens map(TokenView tokens) const;
  /// Same topology and flags, tokens mapped arc by arc.
  AlternativeLattice map(const AlternativeLattice& lattice) const;

 private:
  std::set<std::string> noun_tokens_;
  std::string noun_class_{kNounClass};
};

}  // namespace gtag
