#include "gtag/tagger.hpp"

#include <algorithm>
#include <fstream>

#include "gtag/error.hpp"

namespace gtag {

Tokens inject_tags(TokenView source, const std::vector<EntityAnnotation>& annotations, const RoleSet& roles) {
  std::vector<const EntityAnnotation*> chosen;
  for (const auto& a : annotations) {
    if (a.span.empty() || a.span.end > source.size())
      throw InvalidArgument("entity span " + std::to_string(a.span.begin) + ".." + std::to_string(a.span.end) +
                            " out of bounds for " + std::to_string(source.size()) + " tokens");
    if (roles.count(a.role)) chosen.push_back(&a);
  }
  for (std::size_t i = 0; i < annotations.size(); ++i)
    for (std::size_t j = i + 1; j < annotations.size(); ++j)
      if (annotations[i].span.overlaps(annotations[j].span)) throw InvalidArgument("overlapping entity spans");
  std::stable_sort(chosen.begin(), chosen.end(),
                   [](const auto* a, const auto* b) { return a->span.end < b->span.end; });

  Tokens out;
  out.reserve(source.size() + chosen.size());
  auto next = chosen.begin();
  for (std::size_t i = 0; i < source.size(); ++i) {
    out.push_back(source[i]);
    while (next != chosen.end() && (*next)->span.end == i + 1) out.push_back(tag_token((*next++)->label));
  }
  return out;
}

Tokens strip_tags(TokenView tokens) {
  Tokens out;
  for (const auto& t : tokens)
    if (!is_tag(t)) out.push_back(t);
  return out;
}

std::map<std::string, Gender> import_labels(std::istream& in, std::string_view origin,
                                            const std::set<std::string>* known_ids) {
  std::map<std::string, Gender> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto where = std::string(origin) + ":" + std::to_string(lineno) + ": ";
    auto fields = split_on(line, '\t');
    if (fields.size() != 2) throw ParseError(where + "expected 'id<TAB>label'");
    auto g = parse_gender(fields[1]);
    if (!g) throw ParseError(where + "bad label '" + fields[1] + "'");
    if (known_ids && !known_ids->count(fields[0])) throw ParseError(where + "unknown sentence id " + fields[0]);
    if (!out.emplace(fields[0], *g).second) throw ParseError(where + "duplicate sentence id " + fields[0]);
  }
  return out;
}

std::map<std::string, Gender> import_labels(const std::filesystem::path& path,
                                            const std::set<std::string>* known_ids) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open label file " + path.string());
  return import_labels(in, path.string(), known_ids);
}

GenderGuess pronoun_gender(std::string_view token) {
  auto t = to_lower_ascii(token);
  if (t == "he" || t == "his" || t == "him") return Gender::M;
  if (t == "she" || t == "her" || t == "hers") return Gender::F;
  if (t == "they" || t == "their" || t == "them") return Gender::N;
  return std::nullopt;
}

HeuristicLabel heuristic_label(TokenView source, const std::vector<Span>& candidates) {
  std::optional<std::size_t> pronoun;
  Gender label = Gender::M;
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (auto g = pronoun_gender(source[i])) {
      if (pronoun) throw InvalidArgument("heuristic labeler needs exactly one pronoun, found several");
      pronoun = i;
      label = *g;
    }
  }
  if (!pronoun) throw InvalidArgument("heuristic labeler needs exactly one pronoun, found none");
  if (candidates.empty()) throw InvalidArgument("no candidate entity spans");

  auto distance = [&](const Span& s) -> std::size_t {
    if (*pronoun >= s.end) return *pronoun - (s.end - 1);
    if (*pronoun < s.begin) return s.begin - *pronoun;
    return 0;
  };
  const Span* best = nullptr;
  for (const auto& c : candidates) {
    if (!best || distance(c) < distance(*best) || (distance(c) == distance(*best) && c.begin < best->begin))
      best = &c;
  }
  return {*best, label, true};
}

}  // namespace gtag
