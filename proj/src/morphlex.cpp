#include "gtag/morphlex.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "gtag/error.hpp"

namespace gtag {

namespace detail {
std::string_view default_lexicon_text();
}

namespace {

struct LineContext {
  std::string_view origin;
  std::size_t line;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(std::string(origin) + ":" + std::to_string(line) + ": " + what);
  }
};

// "lang:G=value" or "lang=value" / "lang:variant=value".
struct KeyedField {
  std::string lang;
  std::string qualifier;
  std::string value;
};

KeyedField parse_keyed(const std::string& field, const LineContext& ctx) {
  auto eq = field.find('=');
  if (eq == std::string::npos) ctx.fail("expected key=value, got '" + field + "'");
  KeyedField out;
  std::string key = field.substr(0, eq);
  out.value = field.substr(eq + 1);
  auto colon = key.find(':');
  if (colon == std::string::npos) {
    out.lang = key;
  } else {
    out.lang = key.substr(0, colon);
    out.qualifier = key.substr(colon + 1);
  }
  if (out.lang.empty()) ctx.fail("empty language in '" + field + "'");
  return out;
}

Gender parse_gender_or_fail(const std::string& s, const LineContext& ctx) {
  auto g = parse_gender(s);
  if (!g) ctx.fail("bad gender '" + s + "'");
  return *g;
}

GenderForms parse_forms(const std::string& value, bool article_required, const LineContext& ctx) {
  GenderForms f;
  auto plus = value.find('+');
  if (plus == std::string::npos) {
    if (article_required) ctx.fail("expected article+noun, got '" + value + "'");
    f.noun = split_ws(value);
  } else {
    f.article = value.substr(0, plus);
    f.noun = split_ws(value.substr(plus + 1));
  }
  if (f.noun.empty()) ctx.fail("empty noun in '" + value + "'");
  return f;
}

Tokens plus_tokens(const std::string& value) {
  Tokens out;
  for (auto& part : split_on(value, '+'))
    for (auto& t : split_ws(part)) out.push_back(t);
  return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}


}  // namespace

Tokens GenderForms::tokens() const {
  Tokens out;
  if (!article.empty()) out.push_back(article);
  out.insert(out.end(), noun.begin(), noun.end());
  return out;
}

Lexicon Lexicon::parse(std::istream& in, std::string_view origin) {
  Lexicon lex;
  std::map<std::string, std::map<Language, std::array<bool, 3>>> filled;  // key: "noun:<id>", "adj:<id>", ...
  std::string raw;
  std::size_t lineno = 0;

  auto mark = [&](const std::string& key, const Language& lang, Gender g, const LineContext& ctx) {
    auto& slot = filled[key][lang][index_of(g)];
    if (slot) ctx.fail("duplicate " + std::string(to_string(g)) + " form for " + lang + " in " + key);
    slot = true;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    LineContext ctx{origin, lineno};
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty() || raw[0] == '#') continue;
    auto fields = split_on(raw, '\t');
    while (!fields.empty() && fields.back().empty()) fields.pop_back();
    const std::string& head = fields[0];

    if (head == "@lang") {
      if (fields.size() != 3) ctx.fail("@lang expects: @lang <lang> adjective=before|after");
      const auto& lang = fields[1];
      if (std::find(lex.languages_.begin(), lex.languages_.end(), lang) != lex.languages_.end())
        ctx.fail("language declared twice: " + lang);
      lex.languages_.push_back(lang);
      if (fields[2] == "adjective=after") lex.adjective_after_[lang] = true;
      else if (fields[2] == "adjective=before") lex.adjective_after_[lang] = false;
      else ctx.fail("bad adjective placement '" + fields[2] + "'");
    } else if (head == "@article") {
      if (fields.size() < 3) ctx.fail("@article expects a language and forms");
      auto& inv = lex.articles_[fields[1]];
      for (std::size_t i = 2; i < fields.size(); ++i) {
        auto kf = parse_keyed(fields[i], ctx);  // "el=M": lang slot holds the form
        inv.emplace_back(kf.lang, parse_gender_or_fail(kf.value, ctx));
      }
    } else if (head == "@possessive") {
      for (std::size_t i = 1; i < fields.size(); ++i) {
        auto kf = parse_keyed(fields[i], ctx);
        Gender g = parse_gender_or_fail(kf.qualifier, ctx);
        mark("possessive", kf.lang, g, ctx);
        lex.pronouns_.possessive[kf.lang][index_of(g)] = kf.value;
      }
    } else if (head == "@person") {
      for (std::size_t i = 1; i < fields.size(); ++i) {
        auto kf = parse_keyed(fields[i], ctx);
        Gender g = parse_gender_or_fail(kf.qualifier, ctx);
        mark("person", kf.lang, g, ctx);
        lex.person_.forms[kf.lang][index_of(g)] = parse_forms(kf.value, kf.lang != "en", ctx);
      }
    } else if (head == "@phrase") {
      if (fields.size() < 3) ctx.fail("@phrase expects a name and forms");
      auto& entry = lex.phrases_[fields[1]];
      for (std::size_t i = 2; i < fields.size(); ++i) {
        auto kf = parse_keyed(fields[i], ctx);
        entry[kf.lang][kf.qualifier] = plus_tokens(kf.value);
      }
    } else if (head == "@adj") {
      if (fields.size() < 4) ctx.fail("@adj expects id, english and forms");
      AdjectiveLexeme adj{fields[1], fields[2], {}};
      for (std::size_t i = 3; i < fields.size(); ++i) {
        auto kf = parse_keyed(fields[i], ctx);
        Gender g = parse_gender_or_fail(kf.qualifier, ctx);
        mark("adj:" + adj.id, kf.lang, g, ctx);
        adj.forms[kf.lang][index_of(g)] = kf.value;
      }
      lex.adjectives_.push_back(std::move(adj));
    } else if (head.starts_with("@")) {
      ctx.fail("unknown directive " + head);
    } else {
      if (fields.size() < 3) ctx.fail("noun record expects id, english and forms");
      NounLexeme noun{fields[0], fields[1], {}, false};
      for (std::size_t i = 2; i < fields.size(); ++i) {
        auto kf = parse_keyed(fields[i], ctx);
        if (kf.lang == "winomt" && kf.qualifier.empty()) {
          noun.winomt_overlap = kf.value == "1";
          continue;
        }
        Gender g = parse_gender_or_fail(kf.qualifier, ctx);
        mark("noun:" + noun.id, kf.lang, g, ctx);
        noun.forms[kf.lang][index_of(g)] = parse_forms(kf.value, true, ctx);
      }
      lex.nouns_.push_back(std::move(noun));
    }
  }

  // Completeness of three-gender tables per configured language.
  auto require_complete = [&](const std::string& key, const std::vector<Language>& langs) {
    for (const auto& lang : langs) {
      auto it = filled[key].find(lang);
      if (it == filled[key].end() || !(it->second[0] && it->second[1] && it->second[2]))
        throw MissingLanguageError(std::string(origin) + ": " + key + " lacks M/F/N forms for " + lang);
    }
  };
  std::vector<Language> with_en = lex.languages_;
  with_en.push_back("en");
  for (const auto& n : lex.nouns_) require_complete("noun:" + n.id, lex.languages_);
  for (const auto& a : lex.adjectives_) require_complete("adj:" + a.id, lex.languages_);
  require_complete("possessive", with_en);
  require_complete("person", with_en);

  lex.validate_and_index();
  return lex;
}

Lexicon Lexicon::parse_text(std::string_view text, std::string_view origin) {
  std::istringstream in{std::string(text)};
  return parse(in, origin);
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon file " + path.string());
  return parse(in, path.string());
}

const Lexicon& Lexicon::builtin() {
  static const Lexicon lex = parse_text(detail::default_lexicon_text(), "<builtin lexicon>");
  return lex;
}

void Lexicon::validate_and_index() {
  if (languages_.empty()) throw InvalidArgument("lexicon declares no target language");
  noun_index_.clear();
  adjective_index_.clear();

  for (const auto& lang : languages_) {
    const auto it = articles_.find(lang);
    if (it == articles_.end()) throw InvalidArgument("no article inventory for " + lang);
    bool has_def = false, has_m = false, has_f = false;
    for (const auto& [form, g] : it->second) {
      if (form == kNeutralArticle && g == Gender::N) has_def = true;
      has_m |= g == Gender::M;
      has_f |= g == Gender::F;
    }
    if (!has_def) throw InvalidArgument("article inventory for " + lang + " lacks DEF=N");
    if (!has_m || !has_f) throw InvalidArgument("article inventory for " + lang + " lacks M or F article");
  }

  std::set<std::string> ids;
  for (std::size_t i = 0; i < nouns_.size(); ++i) {
    const auto& n = nouns_[i];
    if (!ids.insert(n.id).second) throw InvalidArgument("duplicate lexeme id: " + n.id);
    for (const auto& lang : languages_) {
      if (!n.has_language(lang)) throw MissingLanguageError("noun " + n.id + " has no forms for " + lang);
      const auto& neutral = n.forms.at(lang)[index_of(Gender::N)];
      if (neutral.article != kNeutralArticle || !ends_with(neutral.noun.back(), kNeutralSuffix))
        throw InvalidArgument("neutral form of " + n.id + "/" + lang + " must be DEF + ...W_END");
    }
  }
  std::set<std::string> adj_ids;
  for (const auto& a : adjectives_)
    if (!adj_ids.insert(a.id).second) throw InvalidArgument("duplicate adjective id: " + a.id);

  for (const auto& lang : languages_) {
    auto& index = noun_index_[lang];
    std::map<Tokens, std::pair<std::size_t, Gender>> seen;
    auto add = [&](const Tokens& noun, Gender g, std::size_t owner) {
      auto [it, fresh] = seen.emplace(noun, std::make_pair(owner, g));
      if (!fresh) {
        if (it->second != std::make_pair(owner, g))
          throw InvalidArgument("noun form '" + join(noun) + "' is ambiguous in " + lang);
        return;
      }
      index[noun.front()].push_back({noun, g, owner});
    };
    for (std::size_t i = 0; i < nouns_.size(); ++i)
      for (Gender g : kAllGenders) add(nouns_[i].forms.at(lang)[index_of(g)].noun, g, i);
    for (Gender g : kAllGenders) add(person_.forms.at(lang)[index_of(g)].noun, g, kPersonNoun);

    auto& adj_index = adjective_index_[lang];
    for (std::size_t i = 0; i < adjectives_.size(); ++i) {
      const auto& forms = adjectives_[i].forms.at(lang);
      if (forms[0] == forms[1] && forms[1] == forms[2]) continue;  // not gendered here
      for (Gender g : kAllGenders) adj_index.emplace(forms[index_of(g)], std::make_pair(i, g));
    }
  }
}

bool Lexicon::has_language(const Language& lang) const {
  return std::find(languages_.begin(), languages_.end(), lang) != languages_.end();
}

const NounLexeme* Lexicon::find_noun(std::string_view id) const {
  for (const auto& n : nouns_)
    if (n.id == id) return &n;
  return nullptr;
}

const NounLexeme* Lexicon::find_noun_by_english(std::string_view lemma) const {
  const auto key = to_lower_ascii(lemma);
  for (const auto& n : nouns_)
    if (to_lower_ascii(n.english) == key) return &n;
  return nullptr;
}

const AdjectiveLexeme* Lexicon::find_adjective(std::string_view id) const {
  for (const auto& a : adjectives_)
    if (a.id == id) return &a;
  return nullptr;
}

std::optional<Gender> Lexicon::article_gender(const Language& lang, std::string_view token) const {
  auto it = articles_.find(lang);
  if (it == articles_.end()) return std::nullopt;
  for (const auto& [form, g] : it->second)
    if (form == token) return g;
  return std::nullopt;
}

const std::string& Lexicon::article_for(const Language& lang, Gender g) const {
  auto it = articles_.find(lang);
  if (it == articles_.end()) throw MissingLanguageError("no article inventory for " + lang);
  for (const auto& [form, gender] : it->second)
    if (gender == g) return form;
  throw MissingLanguageError("no " + std::string(to_string(g)) + " article for " + lang);
}

std::optional<NounMatch> Lexicon::match_noun(const Language& lang, TokenView tokens, std::size_t pos) const {
  if (pos >= tokens.size()) return std::nullopt;
  auto lit = noun_index_.find(lang);
  if (lit == noun_index_.end()) return std::nullopt;
  auto it = lit->second.find(tokens[pos]);
  if (it == lit->second.end()) return std::nullopt;
  std::optional<NounMatch> best;
  for (const auto& e : it->second) {
    if (!starts_with_at(tokens, pos, e.tokens)) continue;
    if (best && best->length >= e.tokens.size()) continue;
    best = NounMatch{e.tokens.size(), e.gender, e.noun == kPersonNoun ? nullptr : &nouns_[e.noun]};
  }
  return best;
}

std::optional<Gender> Lexicon::possessive_gender(const Language& lang, std::string_view token) const {
  auto it = pronouns_.possessive.find(lang);
  if (it == pronouns_.possessive.end()) return std::nullopt;
  const auto& forms = it->second;
  if (forms[0] == forms[1] && forms[1] == forms[2]) return std::nullopt;
  for (Gender g : kAllGenders)
    if (forms[index_of(g)] == token) return g;
  return std::nullopt;
}

const std::string& Lexicon::possessive(const Language& lang, Gender g) const {
  auto it = pronouns_.possessive.find(lang);
  if (it == pronouns_.possessive.end()) throw MissingLanguageError("no possessive forms for " + lang);
  return it->second[index_of(g)];
}

std::optional<Lexicon::AdjectiveHit> Lexicon::gendered_adjective(const Language& lang,
                                                                 std::string_view token) const {
  auto lit = adjective_index_.find(lang);
  if (lit == adjective_index_.end()) return std::nullopt;
  auto it = lit->second.find(std::string(token));
  if (it == lit->second.end()) return std::nullopt;
  return AdjectiveHit{&adjectives_[it->second.first], it->second.second};
}

bool Lexicon::adjective_after_noun(const Language& lang) const {
  auto it = adjective_after_.find(lang);
  if (it == adjective_after_.end()) throw MissingLanguageError("unknown language " + lang);
  return it->second;
}

const Tokens& Lexicon::phrase(std::string_view name, const Language& lang, std::string_view variant) const {
  auto it = phrases_.find(std::string(name));
  if (it == phrases_.end()) throw InvalidArgument("lexicon has no phrase '" + std::string(name) + "'");
  auto lit = it->second.find(lang);
  if (lit == it->second.end())
    throw MissingLanguageError("phrase '" + std::string(name) + "' has no " + lang + " form");
  auto vit = lit->second.find(std::string(variant));
  if (vit == lit->second.end()) vit = lit->second.find("");
  if (vit == lit->second.end())
    throw MissingLanguageError("phrase '" + std::string(name) + "' has no " + lang + ":" +
                               std::string(variant) + " form");
  return vit->second;
}

Lexicon Lexicon::without_winomt_overlap() const {
  Lexicon out = *this;
  std::erase_if(out.nouns_, [](const NounLexeme& n) { return n.winomt_overlap; });
  out.validate_and_index();
  return out;
}

Lexicon Lexicon::truncated(std::size_t professions, std::size_t adjectives) const {
  Lexicon out = *this;
  if (out.nouns_.size() > professions) out.nouns_.resize(professions);
  if (out.adjectives_.size() > adjectives) out.adjectives_.resize(adjectives);
  out.validate_and_index();
  return out;
}

void Lexicon::add_noun(NounLexeme noun) {
  nouns_.push_back(std::move(noun));
  validate_and_index();
}

void Lexicon::add_adjective(AdjectiveLexeme adjective) {
  for (const auto& lang : languages_)
    if (!adjective.forms.count(lang))
      throw MissingLanguageError("adjective " + adjective.id + " has no forms for " + lang);
  adjectives_.push_back(std::move(adjective));
  validate_and_index();
}

const GenderForms& inflect(const NounLexeme& lexeme, Gender gender, const Language& lang) {
  auto it = lexeme.forms.find(lang);
  if (it == lexeme.forms.end())
    throw MissingLanguageError("lexeme " + lexeme.id + " has no forms for language '" + lang + "'");
  return it->second[index_of(gender)];
}

GenderGuess classify_gender(TokenView phrase, const Language& lang, const Lexicon& lexicon) {
  for (std::size_t i = 0; i < phrase.size(); ++i)
    if (auto m = lexicon.match_noun(lang, phrase, i)) return m->gender;
  for (const auto& tok : phrase)
    if (auto g = lexicon.article_gender(lang, tok)) return g;
  return std::nullopt;
}

std::vector<GenderVariant> gender_alternatives(TokenView surface, const Language& lang,
                                               const Lexicon& lexicon, bool include_neutral) {
  std::vector<GenderVariant> out;
  if (surface.empty()) return out;

  auto wanted = [&](Gender g, Gender own) { return g == own || g != Gender::N || include_neutral; };
  auto emit = [&](Gender own, auto&& form_for) {
    for (Gender g : kAllGenders) {
      if (!wanted(g, own)) continue;
      if (g == own) out.push_back({g, Tokens(surface.begin(), surface.end())});
      else out.push_back({g, form_for(g)});
    }
  };

  // Article + profession noun, jointly re-inflected.
  if (surface.size() >= 2 && lexicon.article_gender(lang, surface[0])) {
    auto m = lexicon.match_noun(lang, surface, 1);
    if (m && m->lexeme && 1 + m->length == surface.size()) {
      const NounLexeme& lex = *m->lexeme;
      emit(m->gender, [&](Gender g) { return inflect(lex, g, lang).tokens(); });
      return out;
    }
    return out;
  }
  if (surface.size() != 1) return out;

  const std::string& tok = surface[0];
  if (auto g = lexicon.article_gender(lang, tok)) {
    emit(*g, [&](Gender v) { return Tokens{lexicon.article_for(lang, v)}; });
  } else if (auto pg = lexicon.possessive_gender(lang, tok)) {
    emit(*pg, [&](Gender v) { return Tokens{lexicon.possessive(lang, v)}; });
  } else if (auto hit = lexicon.gendered_adjective(lang, tok)) {
    const auto& forms = hit->lexeme->forms.at(lang);
    emit(hit->gender, [&](Gender v) { return Tokens{forms[index_of(v)]}; });
  }
  return out;
}

}  // namespace gtag
