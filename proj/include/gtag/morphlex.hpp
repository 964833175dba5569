#pragma once

// Gender lexicon: noun/adjective/pronoun inflection tables for the target
// languages, the placeholder neutral forms, and lookups that classify or
// re-inflect target-language material.

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gtag/gender.hpp"
#include "gtag/tokens.hpp"

namespace gtag {

using Language = std::string;

/// Placeholder symbols for gender-neutral target material.
inline constexpr std::string_view kNeutralArticle = "DEF";
inline constexpr std::string_view kNeutralSuffix = "W_END";
inline constexpr std::string_view kNeutralPossessive = "PRP";

/// Article plus (possibly multi-token) noun for one gender.
struct GenderForms {
  std::string article;
  Tokens noun;

  Tokens tokens() const;
  friend bool operator==(const GenderForms&, const GenderForms&) = default;
};

struct NounLexeme {
  std::string id;
  std::string english;
  std::map<Language, std::array<GenderForms, 3>> forms;
  bool winomt_overlap = false;

  bool has_language(const Language& lang) const { return forms.count(lang) != 0; }
};

struct AdjectiveLexeme {
  std::string id;
  std::string english;
  std::map<Language, std::array<std::string, 3>> forms;
};

/// Possessive determiner per language and gender ("en" included).
struct PronounForms {
  std::map<Language, std::array<std::string, 3>> possessive;
};

/// man / woman / person. English entries hold the bare noun in `noun`.
struct PersonNouns {
  std::map<Language, std::array<GenderForms, 3>> forms;
};

/// Where a lexicon noun form was found in a token sequence.
struct NounMatch {
  std::size_t length = 0;
  Gender gender = Gender::M;
  const NounLexeme* lexeme = nullptr;  // nullptr for person nouns
};

class Lexicon {
 public:
  /// Parses the line-oriented lexicon format (see data/lexicon.tsv).
  static Lexicon parse(std::istream& in, std::string_view origin = "<stream>");
  static Lexicon parse_text(std::string_view text, std::string_view origin = "<text>");
  static Lexicon load(const std::filesystem::path& path);
  /// The lexicon shipped with the toolkit.
  static const Lexicon& builtin();

  const std::vector<Language>& languages() const { return languages_; }
  bool has_language(const Language& lang) const;
  const std::vector<NounLexeme>& nouns() const { return nouns_; }
  const std::vector<AdjectiveLexeme>& adjectives() const { return adjectives_; }
  const PronounForms& pronouns() const { return pronouns_; }
  const PersonNouns& person_nouns() const { return person_; }

  const NounLexeme* find_noun(std::string_view id) const;
  /// Case-insensitive lookup on the English lemma.
  const NounLexeme* find_noun_by_english(std::string_view lemma) const;
  const AdjectiveLexeme* find_adjective(std::string_view id) const;

  std::optional<Gender> article_gender(const Language& lang, std::string_view token) const;
  /// First inventory article carrying gender g.
  const std::string& article_for(const Language& lang, Gender g) const;

  /// Longest noun form (profession or person noun) starting at pos.
  std::optional<NounMatch> match_noun(const Language& lang, TokenView tokens, std::size_t pos) const;

  /// Gender of a possessive form, only when the language distinguishes
  /// possessives by gender at all (Spanish "su" is not gendered).
  std::optional<Gender> possessive_gender(const Language& lang, std::string_view token) const;
  const std::string& possessive(const Language& lang, Gender g) const;

  struct AdjectiveHit {
    const AdjectiveLexeme* lexeme;
    Gender gender;
  };
  /// Adjective form whose lexeme distinguishes genders in `lang`.
  std::optional<AdjectiveHit> gendered_adjective(const Language& lang, std::string_view token) const;

  bool adjective_after_noun(const Language& lang) const;

  /// Function-word phrase from the lexicon file, e.g. phrase("finished", "es", "pl").
  const Tokens& phrase(std::string_view name, const Language& lang, std::string_view variant = "") const;

  /// Copy without nouns flagged as occurring in WinoMT.
  Lexicon without_winomt_overlap() const;
  /// Copy restricted to the first `professions` nouns and `adjectives` adjectives.
  Lexicon truncated(std::size_t professions, std::size_t adjectives) const;

  /// Appends a noun and re-validates (large synthetic lexicons are built this way).
  void add_noun(NounLexeme noun);
  void add_adjective(AdjectiveLexeme adjective);

 private:
  void validate_and_index();

  std::vector<Language> languages_;
  std::map<Language, bool> adjective_after_;
  std::map<Language, std::vector<std::pair<std::string, Gender>>> articles_;
  std::vector<NounLexeme> nouns_;
  std::vector<AdjectiveLexeme> adjectives_;
  PronounForms pronouns_;
  PersonNouns person_;
  std::map<std::string, std::map<Language, std::map<std::string, Tokens>>> phrases_;

  static constexpr std::size_t kPersonNoun = static_cast<std::size_t>(-1);
  struct NounIndexEntry {
    Tokens tokens;
    Gender gender;
    std::size_t noun;  // index into nouns_, kPersonNoun for man/woman/person
  };
  // Indices rather than pointers so copies stay valid.
  std::map<Language, std::map<std::string, std::vector<NounIndexEntry>>> noun_index_;
  std::map<Language, std::map<std::string, std::pair<std::size_t, Gender>>> adjective_index_;
};

/// Stored forms of `lexeme` for `gender` in `lang`.
const GenderForms& inflect(const NounLexeme& lexeme, Gender gender, const Language& lang);

/// Noun evidence decides first, then the first inventory article; otherwise Unknown.
GenderGuess classify_gender(TokenView phrase, const Language& lang, const Lexicon& lexicon);

struct GenderVariant {
  Gender gender;
  Tokens tokens;
  friend bool operator==(const GenderVariant&, const GenderVariant&) = default;
};

/// All gender re-inflections of an article+noun phrase or of a single gendered
/// token (article, possessive, adjective), in M, F, N order. The input surface
/// is always present under its own gender. Empty if the surface is not gendered.
std::vector<GenderVariant> gender_alternatives(TokenView surface, const Language& lang,
                                               const Lexicon& lexicon, bool include_neutral);

}  // namespace gtag
