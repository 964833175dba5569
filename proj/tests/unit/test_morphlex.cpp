#include "doctest.h"

#include "gtag/error.hpp"
#include "gtag/morphlex.hpp"

using namespace gtag;

namespace {

constexpr const char* kMini =
    "@lang\tes\tadjective=after\n"
    "@article\tes\tel=M\tla=F\tDEF=N\n"
    "@possessive\ten:M=his\ten:F=her\ten:N=their\tes:M=su\tes:F=su\tes:N=su\n"
    "@person\ten:M=man\ten:F=woman\ten:N=person\tes:M=el+hombre\tes:F=la+mujer\tes:N=la+persona\n"
    "nurse\tnurse\tes:M=el+enfermero\tes:F=la+enfermera\tes:N=DEF+enfermerW_END\n";

}  // namespace

TEST_CASE("builtin lexicon covers Spanish and German") {
  const auto& lex = Lexicon::builtin();
  CHECK(lex.has_language("es"));
  CHECK(lex.has_language("de"));
  CHECK(lex.nouns().size() >= 24);
  CHECK(lex.adjectives().size() >= 12);
  const auto* trainer = lex.find_noun("trainer");
  REQUIRE(trainer);
  CHECK(inflect(*trainer, Gender::F, "es").tokens() == Tokens{"la", "entrenadora"});
  CHECK(inflect(*trainer, Gender::N, "de").tokens() == Tokens{"DEF", "TrainerW_END"});
  CHECK(lex.find_noun_by_english("Trainer") == trainer);
  CHECK_THROWS_AS(inflect(*trainer, Gender::M, "fr"), MissingLanguageError);
}

TEST_CASE("classification prefers noun evidence over the article") {
  const auto& lex = Lexicon::builtin();
  CHECK(classify_gender(Tokens{"la", "entrenadora"}, "es", lex) == Gender::F);
  CHECK(classify_gender(Tokens{"DEF", "entrenadorW_END"}, "es", lex) == Gender::N);
  CHECK(classify_gender(Tokens{"die", "Trainerin"}, "de", lex) == Gender::F);
  // Mismatched article: the noun decides.
  CHECK(classify_gender(Tokens{"la", "entrenador"}, "es", lex) == Gender::M);
  CHECK(classify_gender(Tokens{"la", "casa"}, "es", lex) == Gender::F);
  CHECK_FALSE(classify_gender(Tokens{"casa"}, "es", lex).has_value());
}

TEST_CASE("possessives are gendered only where the language marks them") {
  const auto& lex = Lexicon::builtin();
  CHECK_FALSE(lex.possessive_gender("es", "su").has_value());
  CHECK(lex.possessive_gender("de", "ihre") == Gender::F);
  CHECK(lex.possessive_gender("de", "PRP") == Gender::N);
}

TEST_CASE("gender alternatives of phrases and single tokens") {
  const auto& lex = Lexicon::builtin();
  auto alts = gender_alternatives(Tokens{"el", "entrenador"}, "es", lex, true);
  REQUIRE(alts.size() == 3);
  CHECK(alts[0] == GenderVariant{Gender::M, {"el", "entrenador"}});
  CHECK(alts[1] == GenderVariant{Gender::F, {"la", "entrenadora"}});
  CHECK(alts[2] == GenderVariant{Gender::N, {"DEF", "entrenadorW_END"}});
  CHECK(gender_alternatives(Tokens{"el", "entrenador"}, "es", lex, false).size() == 2);
  CHECK(gender_alternatives(Tokens{"alta"}, "es", lex, false).size() == 2);
  CHECK(gender_alternatives(Tokens{"casa"}, "es", lex, true).empty());
  CHECK(gender_alternatives(Tokens{"su"}, "es", lex, true).empty());
}

TEST_CASE("parsing a small lexicon") {
  auto lex = Lexicon::parse_text(kMini);
  CHECK(lex.languages() == std::vector<Language>{"es"});
  CHECK(lex.find_noun("nurse"));
  CHECK(lex.article_for("es", Gender::F) == "la");
  CHECK(lex.adjective_after_noun("es"));
}

TEST_CASE("lexicon errors") {
  // Line numbers are reported.
  std::string bad = std::string(kMini) + "broken line without forms\n";
  try {
    Lexicon::parse_text(bad, "x.tsv");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("x.tsv:6") != std::string::npos);
  }
  // A noun missing a language the lexicon declares.
  std::string missing = std::string(kMini) + "@lang\tde\tadjective=before\n@article\tde\tder=M\tdie=F\tDEF=N\n";
  CHECK_THROWS_AS(Lexicon::parse_text(missing), MissingLanguageError);
  // Neutral forms must use the placeholders.
  std::string neutral = kMini;
  neutral.replace(neutral.find("DEF+enfermerW_END"), 17, "DEF+enfermere");
  CHECK_THROWS_AS(Lexicon::parse_text(neutral), Error);
  // Duplicate ids.
  CHECK_THROWS_AS(Lexicon::parse_text(std::string(kMini) + "nurse\tnurse\tes:M=el+a\tes:F=la+b\tes:N=DEF+cW_END\n"), Error);
}

TEST_CASE("lexicon views and extension") {
  const auto& lex = Lexicon::builtin();
  auto small = lex.truncated(3, 2);
  CHECK(small.nouns().size() == 3);
  CHECK(small.adjectives().size() == 2);
  auto held_out = lex.without_winomt_overlap();
  for (const auto& n : held_out.nouns()) CHECK_FALSE(n.winomt_overlap);
  CHECK(held_out.nouns().size() < lex.nouns().size());

  Lexicon copy = lex;
  NounLexeme extra = *lex.find_noun("trainer");
  extra.id = "trainer2";
  CHECK_THROWS(copy.add_noun(extra));  // same surface forms: ambiguous
}
