#include "gtag/corpusgen.hpp"

#include <algorithm>
#include <ostream>
#include <random>

#include "gtag/error.hpp"

namespace gtag {

namespace {

constexpr TagScheme kSchemes[] = {
    // name          tags   poss   ents lexstyle adj
    {SchemeName::SB, false, true, 1, false, true},
    {SchemeName::V1, true, true, 1, false, true},
    {SchemeName::V2, true, false, 1, false, true},
    {SchemeName::V3, true, false, 2, false, true},
    {SchemeName::V4, true, false, 2, true, false},
};

void append(Tokens& dst, const Tokens& src) { dst.insert(dst.end(), src.begin(), src.end()); }

struct Builder {
  Tokens source;  // tag-free
  Tokens target;
  std::vector<Span> source_spans, target_spans;
  std::vector<std::size_t> tag_after;  // source positions (tag-free) followed by a tag

  void entity_source(const Tokens& words) {
    source_spans.push_back({source.size(), source.size() + words.size()});
    append(source, words);
  }
  void entity_target(const Tokens& words) {
    target_spans.push_back({target.size(), target.size() + words.size()});
    append(target, words);
  }
};

// "el hombre alto" / "der große Mann"; the adjective agrees with the
// person noun's own article, so neutral "persona" takes the feminine form.
Tokens person_phrase(const AdjectiveLexeme& adj, Gender g, const Language& lang, const Lexicon& lexicon) {
  const auto& person = lexicon.person_nouns().forms.at(lang)[index_of(g)];
  auto agree = lexicon.article_gender(lang, person.article).value_or(g);
  auto fit = adj.forms.find(lang);
  if (fit == adj.forms.end())
    throw MissingLanguageError("adjective " + adj.id + " has no forms for language '" + lang + "'");
  const std::string& form = fit->second[index_of(agree)];
  Tokens out{person.article};
  if (lexicon.adjective_after_noun(lang)) {
    append(out, person.noun);
    out.push_back(form);
  } else {
    out.push_back(form);
    append(out, person.noun);
  }
  return out;
}

Tokens english_entity(const EntityRef& e, Gender g, const Lexicon& lexicon) {
  Tokens out = lexicon.phrase("the", "en");
  if (e.noun) {
    append(out, split_ws(e.noun->english));
  } else {
    append(out, split_ws(e.adjective->english));
    append(out, lexicon.person_nouns().forms.at("en")[index_of(g)].noun);
  }
  return out;
}

Tokens target_entity(const EntityRef& e, Gender g, const Language& lang, const Lexicon& lexicon) {
  if (e.noun) return inflect(*e.noun, g, lang).tokens();
  return person_phrase(*e.adjective, g, lang, lexicon);
}

}  // namespace

const TagScheme& TagScheme::get(SchemeName name) {
  for (const auto& s : kSchemes)
    if (s.name == name) return s;
  throw InvalidArgument("unknown tag scheme");
}

const TagScheme& TagScheme::parse(std::string_view text) {
  const std::string t = to_lower_ascii(text);
  if (t == "sb" || t == "s&b") return get(SchemeName::SB);
  if (t == "v1") return get(SchemeName::V1);
  if (t == "v2") return get(SchemeName::V2);
  if (t == "v3") return get(SchemeName::V3);
  if (t == "v4") return get(SchemeName::V4);
  throw InvalidArgument("unknown tag scheme '" + std::string(text) + "' (expected SB, V1, V2, V3 or V4)");
}

std::string_view TagScheme::label() const {
  switch (name) {
    case SchemeName::SB: return "SB";
    case SchemeName::V1: return "V1";
    case SchemeName::V2: return "V2";
    case SchemeName::V3: return "V3";
    case SchemeName::V4: return "V4";
  }
  return "?";
}

const std::string& EntityRef::id() const {
  if (noun) return noun->id;
  if (adjective) return adjective->id;
  throw InvalidArgument("empty entity reference");
}

ParallelExample render_example(std::span<const EntityRef> entities, std::span<const Gender> genders,
                               const TagScheme& scheme, const LanguagePair& languages,
                               const Lexicon& lexicon, bool final_period) {
  if (entities.size() != genders.size())
    throw InvalidArgument("entity and gender lists differ in length");
  for (const auto& e : entities)
    if (!e.noun && !e.adjective) throw InvalidArgument("empty entity reference");

  // Adjective sentences are never tagged; under V3 they keep the V2 template.
  const bool adjective_sentence = entities.size() == 1 && entities[0].adjective;
  if (adjective_sentence && !scheme.includes_adjective_sentences)
    throw InvalidArgument(std::string(scheme.label()) + " has no adjective sentences");
  const std::size_t expected = adjective_sentence ? 1 : scheme.entities_per_sentence;
  if (entities.size() != expected)
    throw InvalidArgument(std::string(scheme.label()) + " expects " + std::to_string(expected) + " entities, got " +
                          std::to_string(entities.size()));
  if (entities.size() == 2 && genders[0] == genders[1])
    throw InvalidArgument(std::string(scheme.label()) + " requires a different gender tag per entity");
  for (const auto& e : entities)
    if (e.adjective && entities.size() != 1) throw InvalidArgument("adjective entities fill one-entity templates only");

  const Language& tgt = languages.target;
  const bool tag = scheme.tags_entities && !adjective_sentence;
  Builder b;

  if (entities.size() == 1) {
    const Gender g = genders[0];
    b.entity_source(english_entity(entities[0], g, lexicon));
    b.entity_target(target_entity(entities[0], g, tgt, lexicon));
    if (tag) b.tag_after.push_back(b.source.size());
    append(b.source, lexicon.phrase("finished", "en", "sg"));
    append(b.target, lexicon.phrase("finished", tgt, "sg"));
    if (scheme.keeps_possessive) {
      b.source.push_back(lexicon.possessive("en", g));
      append(b.source, lexicon.phrase("work", "en"));
      b.target.push_back(lexicon.possessive(tgt, g));
      append(b.target, lexicon.phrase("work", tgt));
    } else {
      append(b.source, lexicon.phrase("the_work", "en"));
      append(b.target, lexicon.phrase("the_work", tgt));
    }
  } else if (!scheme.lexicon_style) {
    // V3: "the A <g1> and the B <g2> finished the work", plural verb.
    b.entity_source(english_entity(entities[0], genders[0], lexicon));
    b.tag_after.push_back(b.source.size());
    b.entity_target(target_entity(entities[0], genders[0], tgt, lexicon));
    append(b.source, lexicon.phrase("and", "en"));
    append(b.target, lexicon.phrase("and", tgt));
    b.entity_source(english_entity(entities[1], genders[1], lexicon));
    b.tag_after.push_back(b.source.size());
    b.entity_target(target_entity(entities[1], genders[1], tgt, lexicon));
    append(b.source, lexicon.phrase("finished", "en", "pl"));
    append(b.target, lexicon.phrase("finished", tgt, "pl"));
    append(b.source, lexicon.phrase("the_work", "en"));
    append(b.target, lexicon.phrase("the_work", tgt));
  } else {
    // V4: "the A <g1>, the B <g2>"
    b.entity_source(english_entity(entities[0], genders[0], lexicon));
    b.tag_after.push_back(b.source.size());
    b.entity_target(target_entity(entities[0], genders[0], tgt, lexicon));
    b.source.push_back(",");
    b.target.push_back(",");
    b.entity_source(english_entity(entities[1], genders[1], lexicon));
    b.tag_after.push_back(b.source.size());
    b.entity_target(target_entity(entities[1], genders[1], tgt, lexicon));
  }
  if (final_period) {
    b.source.push_back(".");
    b.target.push_back(".");
  }

  ParallelExample ex;
  ex.scheme = scheme.name;
  ex.genders.assign(genders.begin(), genders.end());
  ex.languages = languages;
  for (const auto& e : entities) ex.entity_ids.push_back(e.id());
  ex.source_spans = b.source_spans;
  ex.target_spans = b.target_spans;
  ex.target = std::move(b.target);
  ex.tagged = tag;
  std::size_t next_tag = 0;
  for (std::size_t i = 0; i <= b.source.size(); ++i) {
    while (tag && next_tag < b.tag_after.size() && b.tag_after[next_tag] == i)
      ex.source.push_back(tag_token(genders[next_tag++]));
    if (i < b.source.size()) ex.source.push_back(b.source[i]);
  }
  return ex;
}

std::vector<ParallelExample> generate(const Lexicon& lexicon, const TagScheme& scheme,
                                      const LanguagePair& languages, bool neutral_augment,
                                      std::uint64_t seed) {
  std::vector<ParallelExample> out;
  const auto& nouns = lexicon.nouns();
  auto emit = [&](std::vector<EntityRef> ents, std::vector<Gender> gs) {
    out.push_back(render_example(ents, gs, scheme, languages, lexicon, true));
  };

  std::vector<Gender> singles{Gender::M, Gender::F};
  if (neutral_augment) singles.push_back(Gender::N);

  if (scheme.entities_per_sentence == 1) {
    for (const auto& n : nouns)
      for (Gender g : singles) emit({EntityRef::of(n)}, {g});
  } else {
    // Rotation pairing: entity i with i+1; neutral sentences alternate the partner gender.
    const std::size_t p = nouns.size();
    for (std::size_t i = 0; i < p; ++i) {
      std::vector<EntityRef> pair{EntityRef::of(nouns[i]), EntityRef::of(nouns[(i + 1) % p])};
      emit(pair, {Gender::M, Gender::F});
      emit(pair, {Gender::F, Gender::M});
      if (neutral_augment) emit(pair, {Gender::N, i % 2 == 0 ? Gender::M : Gender::F});
    }
  }
  if (scheme.includes_adjective_sentences)
    for (const auto& a : lexicon.adjectives())
      for (Gender g : singles) emit({EntityRef::of(a)}, {g});

  if (seed != 0) {
    // Explicit Fisher-Yates: std::shuffle's draw sequence is implementation-defined.
    std::mt19937_64 rng(seed);
    for (std::size_t i = out.size(); i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(out[i - 1], out[pick(rng)]);
    }
  }
  return out;
}

CorpusStats stats(std::span<const ParallelExample> corpus) {
  CorpusStats s;
  for (const auto& ex : corpus) {
    ++s.sentence_count;
    s.source_tokens += ex.source.size();
    s.target_tokens += ex.target.size();
    for (Gender g : ex.genders) ++s.entities[index_of(g)];
  }
  s.token_count = s.source_tokens + s.target_tokens;
  return s;
}

void write_corpus(std::span<const ParallelExample> corpus, std::ostream& source, std::ostream& target,
                  std::ostream& meta) {
  auto spans = [](const std::vector<Span>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(v[i].begin) + ":" + std::to_string(v[i].end);
    }
    return s;
  };
  for (const auto& ex : corpus) {
    source << join(ex.source) << '\n';
    target << join(ex.target) << '\n';
    std::string genders;
    for (std::size_t i = 0; i < ex.genders.size(); ++i) {
      if (i) genders += ',';
      genders += to_string(ex.genders[i]);
    }
    meta << TagScheme::get(ex.scheme).label() << '\t' << join(ex.entity_ids, ",") << '\t' << spans(ex.source_spans)
         << '\t' << spans(ex.target_spans) << '\t' << genders << '\t' << (ex.tagged ? 1 : 0) << '\n';
  }
}

}  // namespace gtag
