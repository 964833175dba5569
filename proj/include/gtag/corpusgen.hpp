#pragma once

// Template expansion of the synthetic gender-tagged adaptation sets.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gtag/gender.hpp"
#include "gtag/morphlex.hpp"
#include "gtag/tokens.hpp"

namespace gtag {

enum class SchemeName { SB, V1, V2, V3, V4 };

struct TagScheme {
  SchemeName name;
  bool tags_entities;
  bool keeps_possessive;
  std::size_t entities_per_sentence;
  bool lexicon_style;
  bool includes_adjective_sentences;

  static const TagScheme& get(SchemeName name);
  /// "SB" (or "S&B"), "V1" ... "V4", case-insensitive.
  static const TagScheme& parse(std::string_view text);
  std::string_view label() const;
};

struct LanguagePair {
  Language source = "en";
  Language target;
};

/// One slot of a template: a profession or an adjective ("[adjective] man").
struct EntityRef {
  const NounLexeme* noun = nullptr;
  const AdjectiveLexeme* adjective = nullptr;

  static EntityRef of(const NounLexeme& n) { return {&n, nullptr}; }
  static EntityRef of(const AdjectiveLexeme& a) { return {nullptr, &a}; }
  const std::string& id() const;
};

struct ParallelExample {
  Tokens source;  // tagged where the scheme tags entities
  Tokens target;
  SchemeName scheme = SchemeName::SB;
  std::vector<Gender> genders;
  LanguagePair languages;
  std::vector<std::string> entity_ids;
  // Entity spans; source spans index the tag-free source.
  std::vector<Span> source_spans;
  std::vector<Span> target_spans;
  bool tagged = false;
};

struct CorpusStats {
  std::size_t sentence_count = 0;
  std::size_t source_tokens = 0;
  std::size_t target_tokens = 0;
  std::size_t token_count = 0;  // source + target
  std::array<std::size_t, 3> entities{};  // by Gender index

  std::size_t entity_total() const { return entities[0] + entities[1] + entities[2]; }
};

/// Fills one scheme template. Table 1 cells carry no final period, so it is
/// opt-in here; generate() always adds it.
ParallelExample render_example(std::span<const EntityRef> entities, std::span<const Gender> genders,
                               const TagScheme& scheme, const LanguagePair& languages,
                               const Lexicon& lexicon, bool final_period = false);

std::vector<ParallelExample> generate(const Lexicon& lexicon, const TagScheme& scheme,
                                      const LanguagePair& languages, bool neutral_augment,
                                      std::uint64_t seed);

CorpusStats stats(std::span<const ParallelExample> corpus);

/// corpus.en / corpus.<tgt> lines and the metadata sidecar.
void write_corpus(std::span<const ParallelExample> corpus, std::ostream& source, std::ostream& target,
                  std::ostream& meta);

}  // namespace gtag
