#include "gtag/testset.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <set>

#include "json.hpp"

#include "gtag/error.hpp"

namespace gtag {

namespace {

std::optional<Gender> parse_gold(const std::string& s, const std::string& where) {
  auto l = to_lower_ascii(s);
  if (l == "male" || l == "m") return Gender::M;
  if (l == "female" || l == "f") return Gender::F;
  if (l == "neutral" || l == "n") return Gender::N;
  if (l.empty() || l == "-" || l == "unknown") return std::nullopt;
  throw ParseError(where + "bad gender '" + s + "'");
}

std::string_view gold_word(const std::optional<Gender>& g) {
  if (!g) return "-";
  switch (*g) {
    case Gender::M: return "male";
    case Gender::F: return "female";
    case Gender::N: return "neutral";
  }
  return "-";
}

std::vector<std::size_t> occurrences(const Tokens& tokens, const Tokens& lemma) {
  std::vector<std::size_t> out;
  if (lemma.empty()) return out;
  for (std::size_t i = 0; i + lemma.size() <= tokens.size(); ++i) {
    bool ok = true;
    for (std::size_t k = 0; k < lemma.size() && ok; ++k) ok = to_lower_ascii(tokens[i + k]) == to_lower_ascii(lemma[k]);
    if (ok) out.push_back(i);
  }
  return out;
}

// Token index at which whitespace word `word` of `sentence` starts.
std::size_t token_index_of_word(std::string_view sentence, std::size_t word) {
  auto words = split_ws(sentence);
  std::size_t pos = 0;
  for (std::size_t w = 0; w < words.size() && w < word; ++w) pos += tokenize_sentence(words[w]).size();
  // Skip leading punctuation detached from the target word.
  if (word < words.size()) {
    for (const auto& t : tokenize_sentence(words[word])) {
      if (t.size() == 1 && std::string_view(".,;:!?\"()").find(t[0]) != std::string_view::npos) ++pos;
      else break;
    }
  }
  return pos;
}

std::size_t distance(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

std::optional<TestEntity> detect_secondary(const Tokens& tokens, const Span& primary, const Lexicon& lexicon) {
  std::optional<TestEntity> found;
  std::set<std::size_t> starts;
  for (const auto& n : lexicon.nouns()) {
    auto lemma = split_ws(n.english);
    for (auto pos : occurrences(tokens, lemma)) {
      Span s{pos, pos + lemma.size()};
      if (s.overlaps(primary) || starts.count(pos)) continue;
      if (found) return std::nullopt;  // ambiguous
      starts.insert(pos);
      found = TestEntity{s, n.english};
    }
  }
  return found;
}

// Closed-class words after which "her" is an object pronoun.
const std::set<std::string>& her_object_context() {
  static const std::set<std::string> words{
      "the", "a", "an", "this", "that", "these", "those", "some", "any", "every", "each", "all",
      "my", "your", "his", "her", "our", "their", "its", "to", "for", "with", "about", "at",
      "in", "on", "of", "from", "by", "into", "onto", "over", "under", "after", "before",
      "because", "and", "or", "but", "so", "if", "when", "while", "since", "as", "than",
      "until", "up", "down", "out", "off", "back", "again", "yesterday", "today", "tomorrow",
      "tonight", "now", "then", "there", "here", "how", "why", "what", "where", "who", "whom",
      "which", "whether", "anything", "something", "everything", "nothing", "anyone", "someone",
      "everyone", "more", "less", "very", "too", "much", "many", "well", "first", "last",
      "enough", "already", "also", "still", "just", "not", "never", ",", ".", ";", ":", "!",
      "?", "\"", "(", ")"};
  return words;
}

// Residual cases: bare verbs after causatives ("let her know").
const std::map<std::string, std::string>& her_overrides() {
  static const std::map<std::string, std::string> m{
      {"know", "them"}, {"feel", "them"}, {"understand", "them"}, {"go", "them"},  {"come", "them"},
      {"leave", "them"}, {"stay", "them"}, {"win", "them"}, {"finish", "them"}, {"do", "them"},
      {"get", "them"},  {"take", "them"}, {"make", "them"}, {"see", "them"},    {"be", "them"},
      {"own", "their"}};
  return m;
}

const std::map<std::string, std::string>& verb_agreement() {
  static const std::map<std::string, std::string> m{
      {"is", "are"},       {"was", "were"},       {"does", "do"},       {"has", "have"},
      {"isn't", "aren't"}, {"wasn't", "weren't"}, {"doesn't", "don't"}, {"hasn't", "haven't"}};
  return m;
}

std::string match_case(const std::string& like, std::string word) {
  if (!like.empty() && like[0] >= 'A' && like[0] <= 'Z' && !word.empty() && word[0] >= 'a' && word[0] <= 'z')
    word[0] = static_cast<char>(word[0] - 'a' + 'A');
  return word;
}

}  // namespace

std::string_view to_string(Stereotype s) {
  switch (s) {
    case Stereotype::Pro: return "pro";
    case Stereotype::Anti: return "anti";
    case Stereotype::None: return "none";
  }
  return "none";
}

Stereotype parse_stereotype(std::string_view s) {
  if (s == "pro") return Stereotype::Pro;
  if (s == "anti") return Stereotype::Anti;
  if (s == "none" || s.empty()) return Stereotype::None;
  throw ParseError("bad stereotype '" + std::string(s) + "'");
}

const TestEntity& TestItem::measured_entity() const {
  if (measured == Measured::Primary) return primary;
  if (!secondary) throw InvalidArgument("item " + id + " measures a secondary entity it does not have");
  return *secondary;
}

std::vector<TestItem> import_winomt_tsv(std::istream& in, std::string_view origin, const Lexicon* lexicon) {
  std::vector<TestItem> items;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++row;
    const auto where = std::string(origin) + ":" + std::to_string(row) + ": ";
    auto f = split_on(line, '\t');
    if (f.size() < 4 || f.size() > 6) throw ParseError(where + "expected 4 to 6 tab-separated fields");

    TestItem item;
    item.id = "s" + std::to_string(row);
    item.gold = parse_gold(f[0], where);
    char* end = nullptr;
    const long index = std::strtol(f[1].c_str(), &end, 10);
    if (f[1].empty() || *end != '\0' || index < 0) throw ParseError(where + "bad entity index '" + f[1] + "'");
    item.source = tokenize_sentence(f[2]);

    auto lemma = split_ws(f[3]);
    auto occ = occurrences(item.source, lemma);
    if (occ.empty()) throw ParseError(where + "lemma '" + f[3] + "' not found in sentence");
    const std::size_t target = token_index_of_word(f[2], static_cast<std::size_t>(index));
    std::size_t best = occ[0];
    for (auto o : occ)
      if (distance(o, target) < distance(best, target)) best = o;
    item.primary = {{best, best + lemma.size()}, f[3]};

    if (f.size() >= 5 && !f[4].empty()) {
      auto sec = split_ws(f[4]);
      for (auto o : occurrences(item.source, sec)) {
        Span s{o, o + sec.size()};
        if (!s.overlaps(item.primary.span)) {
          item.secondary = TestEntity{s, f[4]};
          break;
        }
      }
      if (!item.secondary) throw ParseError(where + "secondary lemma '" + f[4] + "' not found in sentence");
    } else if (lexicon) {
      item.secondary = detect_secondary(item.source, item.primary.span, *lexicon);
    }
    if (f.size() == 6) {
      try {
        item.stereotype = parse_stereotype(f[5]);
      } catch (const ParseError& e) {
        throw ParseError(where + e.what());
      }
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<TestItem> import_winomt_tsv(const std::filesystem::path& path, const Lexicon* lexicon) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open test set " + path.string());
  return import_winomt_tsv(in, path.string(), lexicon);
}

void write_winomt_tsv(const std::vector<TestItem>& items, std::ostream& out) {
  for (const auto& it : items) {
    out << gold_word(it.gold) << '\t' << it.primary.span.begin << '\t' << join(it.source) << '\t' << it.primary.lemma
        << '\t' << (it.secondary ? it.secondary->lemma : "") << '\t' << to_string(it.stereotype) << '\n';
  }
}

namespace {

nlohmann::json entity_json(const TestEntity& e) {
  return {{"begin", e.span.begin}, {"end", e.span.end}, {"lemma", e.lemma}};
}

TestEntity entity_from(const nlohmann::json& j) {
  return {{j.at("begin").get<std::size_t>(), j.at("end").get<std::size_t>()}, j.at("lemma").get<std::string>()};
}

}  // namespace

void write_jsonl(const std::vector<TestItem>& items, std::ostream& out) {
  for (const auto& it : items) {
    nlohmann::ordered_json j;
    j["id"] = it.id;
    j["gold"] = it.gold ? nlohmann::ordered_json(std::string(to_string(*it.gold))) : nlohmann::ordered_json(nullptr);
    j["source"] = it.source;
    j["primary"] = entity_json(it.primary);
    j["secondary"] = it.secondary ? nlohmann::ordered_json(entity_json(*it.secondary)) : nlohmann::ordered_json(nullptr);
    j["stereotype"] = to_string(it.stereotype);
    j["measured"] = it.measured == Measured::Primary ? "primary" : "secondary";
    out << j.dump() << '\n';
  }
}

std::vector<TestItem> read_jsonl(std::istream& in, std::string_view origin) {
  std::vector<TestItem> items;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      TestItem it;
      it.id = j.at("id").get<std::string>();
      if (!j.at("gold").is_null()) {
        it.gold = parse_gender(j.at("gold").get<std::string>());
        if (!it.gold) throw ParseError("bad gold label");
      }
      it.source = j.at("source").get<Tokens>();
      it.primary = entity_from(j.at("primary"));
      if (!j.at("secondary").is_null()) it.secondary = entity_from(j.at("secondary"));
      it.stereotype = parse_stereotype(j.at("stereotype").get<std::string>());
      const auto m = j.at("measured").get<std::string>();
      if (m != "primary" && m != "secondary") throw ParseError("bad measured role '" + m + "'");
      it.measured = m == "primary" ? Measured::Primary : Measured::Secondary;
      items.push_back(std::move(it));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string(origin) + ":" + std::to_string(lineno) + ": " + e.what());
    } catch (const ParseError& e) {
      throw ParseError(std::string(origin) + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return items;
}

std::vector<TestItem> derive_secondary(const std::vector<TestItem>& items) {
  std::vector<TestItem> out;
  out.reserve(items.size());
  for (const auto& it : items) {
    if (!it.secondary) throw InvalidArgument("item " + it.id + " has no secondary entity annotation");
    TestItem d = it;
    d.measured = Measured::Secondary;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<TestItem> neutralize(const std::vector<TestItem>& items) {
  std::vector<TestItem> out;
  std::set<std::string> seen;
  for (const auto& it : items) {
    if (!it.gold || *it.gold == Gender::N) continue;
    TestItem n = it;
    n.gold = Gender::N;
    Tokens& s = n.source;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto w = to_lower_ascii(s[i]);
      const std::string next = i + 1 < s.size() ? to_lower_ascii(s[i + 1]) : std::string();
      std::string repl;
      if (w == "he" || w == "she") {
        repl = "they";
        if (auto v = verb_agreement().find(next); v != verb_agreement().end())
          s[i + 1] = match_case(s[i + 1], v->second);
      } else if (w == "him") {
        repl = "them";
      } else if (w == "his") {
        repl = "their";
      } else if (w == "hers") {
        repl = "theirs";
      } else if (w == "himself" || w == "herself") {
        repl = "themselves";
      } else if (w == "her") {
        if (auto o = her_overrides().find(next); o != her_overrides().end()) repl = o->second;
        else repl = next.empty() || her_object_context().count(next) ? "them" : "their";
      }
      if (!repl.empty()) s[i] = match_case(s[i], repl);
    }
    if (seen.insert(join(s)).second) out.push_back(std::move(n));
  }
  return out;
}

}  // namespace gtag
