#include "gtag/conditioning.hpp"

#include <algorithm>

#include "gtag/tagger.hpp"

namespace gtag {

std::string source_cue(TokenView source) {
  std::set<Gender> seen;
  for (const auto& t : source)
    if (auto g = pronoun_gender(t)) seen.insert(*g);
  std::string cue = "<ctx:";
  if (seen.empty()) cue += '-';
  for (Gender g : seen) cue += to_string(g);
  return cue + ">";
}

bool is_cue(std::string_view token) { return token.starts_with("<ctx:") && token.ends_with(">"); }

Tokens conditioned_target(const std::string& cue, TokenView target, std::vector<TargetTag> tags) {
  std::stable_sort(tags.begin(), tags.end(), [](const auto& a, const auto& b) { return a.span.begin < b.span.begin; });
  Tokens out{cue};
  auto next = tags.begin();
  for (std::size_t i = 0; i < target.size(); ++i) {
    while (next != tags.end() && next->span.begin == i) out.push_back(tag_token((next++)->gender));
    out.push_back(target[i]);
  }
  return out;
}

Tokens strip_conditioning(TokenView tokens) {
  Tokens out;
  for (const auto& t : tokens)
    if (!is_cue(t) && !is_tag(t)) out.push_back(t);
  return out;
}

ScoringView::ScoringView(const Lexicon& lexicon, const Language& language) {
  for (const auto& n : lexicon.nouns()) {
    if (!n.has_language(language)) continue;
    for (const auto& f : n.forms.at(language))
      for (const auto& t : f.noun) noun_tokens_.insert(t);
  }
}

const std::string& ScoringView::map(const std::string& token) const {
  return noun_tokens_.count(token) ? noun_class_ : token;
}

Tokens ScoringView::map(TokenView tokens) const {
  Tokens out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(map(t));
  return out;
}

AlternativeLattice ScoringView::map(const AlternativeLattice& lattice) const {
  AlternativeLattice out = lattice;
  for (auto& a : out.arcs) a.tokens = map(a.tokens);
  out.baseline = map(lattice.baseline);
  return out;
}

}  // namespace gtag
