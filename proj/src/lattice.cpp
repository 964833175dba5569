#include "gtag/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>

#include "gtag/error.hpp"

namespace gtag {

namespace {

constexpr std::string_view kHeader = "#glat v1 ";

void add_segment(AlternativeLattice& lat, std::vector<GenderVariant> variants, Gender own) {
  const std::size_t from = lat.node_count - 1;
  for (auto& v : variants) {
    bool base = v.gender == own;
    lat.arcs.push_back({from, from + 1, std::move(v.tokens), v.gender, base});
  }
  ++lat.node_count;
}

void add_plain(AlternativeLattice& lat, const std::string& token) {
  const std::size_t from = lat.node_count - 1;
  lat.arcs.push_back({from, from + 1, Tokens{token}, std::nullopt, true});
  ++lat.node_count;
}

Gender own_gender(const std::vector<GenderVariant>& variants, TokenView surface) {
  for (const auto& v : variants)
    if (std::equal(v.tokens.begin(), v.tokens.end(), surface.begin(), surface.end())) return v.gender;
  throw InvalidArgument("alternative set lacks the input surface");
}

std::vector<std::vector<std::size_t>> out_arcs(const AlternativeLattice& lat) {
  std::vector<std::vector<std::size_t>> out(lat.node_count);
  for (std::size_t i = 0; i < lat.arcs.size(); ++i) out[lat.arcs[i].from].push_back(i);
  return out;
}

}  // namespace

AlternativeLattice build_lattice(TokenView hypothesis, const Language& language, const Lexicon& lexicon,
                                 bool include_neutral) {
  if (hypothesis.empty()) throw InvalidArgument("cannot build a lattice for an empty hypothesis");
  AlternativeLattice lat;
  lat.baseline.assign(hypothesis.begin(), hypothesis.end());

  std::size_t i = 0;
  while (i < hypothesis.size()) {
    if (lexicon.article_gender(language, hypothesis[i])) {
      auto m = lexicon.match_noun(language, hypothesis, i + 1);
      if (m && m->lexeme) {
        auto surface = hypothesis.subspan(i, 1 + m->length);
        auto variants = gender_alternatives(surface, language, lexicon, include_neutral);
        add_segment(lat, variants, own_gender(variants, surface));
        i += surface.size();
        continue;
      }
      if (m) {
        // Article of man/woman/person: the referent's gender is lexical, so
        // neither the article nor the noun is offered in other genders.
        add_plain(lat, hypothesis[i]);
        ++i;
        continue;
      }
    }
    auto surface = hypothesis.subspan(i, 1);
    auto variants = gender_alternatives(surface, language, lexicon, include_neutral);
    if (variants.size() > 1) add_segment(lat, variants, own_gender(variants, surface));
    else add_plain(lat, hypothesis[i]);
    ++i;
  }
  return lat;
}

void validate(const AlternativeLattice& lat) {
  if (lat.node_count < 2 || lat.arcs.empty()) throw ParseError("lattice has no arcs");
  std::size_t prev_from = 0;
  for (std::size_t i = 0; i < lat.arcs.size(); ++i) {
    const Arc& a = lat.arcs[i];
    const auto where = "arc " + std::to_string(i) + ": ";
    if (!(a.from < a.to)) throw ParseError(where + "from must be smaller than to");
    if (a.to >= lat.node_count) throw ParseError(where + "node index out of range");
    if (a.from < prev_from) throw ParseError(where + "arcs not sorted by source node");
    prev_from = a.from;
    if (a.tokens.empty()) throw ParseError(where + "empty token sequence");
    for (const auto& t : a.tokens)
      if (t.empty() || t.find_first_of(" \t\n\r") != std::string::npos) throw ParseError(where + "bad token");
  }
  std::vector<char> fwd(lat.node_count, 0), bwd(lat.node_count, 0);
  fwd[0] = 1;
  for (const auto& a : lat.arcs)
    if (fwd[a.from]) fwd[a.to] = 1;
  bwd[lat.sink()] = 1;
  for (auto it = lat.arcs.rbegin(); it != lat.arcs.rend(); ++it)
    if (bwd[it->to]) bwd[it->from] = 1;
  for (std::size_t n = 0; n < lat.node_count; ++n)
    if (!fwd[n] || !bwd[n]) throw ParseError("node " + std::to_string(n) + " is not on a source-to-sink path");

  // The baseline must be spelled by some path of baseline-flagged arcs.
  auto out = out_arcs(lat);
  std::vector<std::vector<char>> seen(lat.node_count, std::vector<char>(lat.baseline.size() + 1, 0));
  seen[0][0] = 1;
  for (std::size_t n = 0; n < lat.node_count; ++n) {
    for (std::size_t pos = 0; pos <= lat.baseline.size(); ++pos) {
      if (!seen[n][pos]) continue;
      for (auto ai : out[n]) {
        const Arc& a = lat.arcs[ai];
        if (a.on_baseline && starts_with_at(lat.baseline, pos, a.tokens)) seen[a.to][pos + a.tokens.size()] = 1;
      }
    }
  }
  if (!seen[lat.sink()][lat.baseline.size()]) throw ParseError("no baseline path spells the baseline hypothesis");
}

std::size_t path_count(const AlternativeLattice& lat) {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> count(lat.node_count, 0);
  count[0] = 1;
  for (const auto& a : lat.arcs) {
    auto& c = count[a.to];
    c = kMax - c < count[a.from] ? kMax : c + count[a.from];
  }
  return count[lat.sink()];
}

Tokens path_tokens(const AlternativeLattice& lat, const std::vector<std::size_t>& arcs) {
  Tokens out;
  for (auto i : arcs) out.insert(out.end(), lat.arcs[i].tokens.begin(), lat.arcs[i].tokens.end());
  return out;
}

PathList enumerate_paths(const AlternativeLattice& lat, std::size_t limit) {
  if (limit < 1) throw InvalidArgument("path limit must be at least 1");
  PathList result;
  auto out = out_arcs(lat);
  std::vector<std::size_t> stack;
  // Iterative DFS; `cursor[d]` is the next out-arc position to try at depth d.
  std::vector<std::size_t> cursor{0};
  std::vector<std::size_t> node{0};
  while (!cursor.empty()) {
    const std::size_t n = node.back();
    if (n == lat.sink()) {
      if (result.arcs.size() == limit) {
        result.truncated = true;
        break;
      }
      result.arcs.push_back(stack);
      result.paths.push_back(path_tokens(lat, stack));
      cursor.pop_back();
      node.pop_back();
      if (!stack.empty()) stack.pop_back();
      continue;
    }
    auto& c = cursor.back();
    if (c == out[n].size()) {
      cursor.pop_back();
      node.pop_back();
      if (!stack.empty()) stack.pop_back();
      continue;
    }
    const std::size_t ai = out[n][c++];
    stack.push_back(ai);
    node.push_back(lat.arcs[ai].to);
    cursor.push_back(0);
  }
  return result;
}

std::size_t baseline_arc_count(const AlternativeLattice& lat, const std::vector<std::size_t>& arcs) {
  return static_cast<std::size_t>(
      std::count_if(arcs.begin(), arcs.end(), [&](std::size_t i) { return lat.arcs[i].on_baseline; }));
}

bool path_preferred(double score, std::size_t baseline_arcs, const std::vector<std::size_t>& arcs,
                    double best_score, std::size_t best_baseline_arcs, const std::vector<std::size_t>& best_arcs) {
  if (score != best_score) return score > best_score;
  if (baseline_arcs != best_baseline_arcs) return baseline_arcs > best_baseline_arcs;
  return arcs < best_arcs;
}

BestPath best_path(const AlternativeLattice& lat, const MarkovScorer& scorer) {
  struct Entry {
    double score;
    std::size_t baseline;
    std::vector<std::size_t> arcs;
  };
  using States = std::map<Tokens, Entry>;
  std::vector<States> states(lat.node_count);
  states[0].emplace(ContextWindow(scorer.order()).tokens(), Entry{0.0, 0, {}});
  auto out = out_arcs(lat);

  auto offer = [](States& s, Tokens ctx, Entry e) {
    auto [it, fresh] = s.try_emplace(std::move(ctx), e);
    if (!fresh && path_preferred(e.score, e.baseline, e.arcs, it->second.score, it->second.baseline, it->second.arcs))
      it->second = std::move(e);
  };

  for (std::size_t n = 0; n + 1 < lat.node_count; ++n) {
    for (const auto& [ctx, entry] : states[n]) {
      for (auto ai : out[n]) {
        const Arc& a = lat.arcs[ai];
        // Rebuild the window from the stored context so no state leaks between arcs.
        Tokens window = ctx;
        double score = entry.score;
        for (const auto& t : a.tokens) {
          score += scorer.log_prob(window, t);
          window.push_back(t);
          if (window.size() > scorer.order() - 1) window.erase(window.begin());
        }
        Entry next{score, entry.baseline + (a.on_baseline ? 1 : 0), entry.arcs};
        next.arcs.push_back(ai);
        offer(states[a.to], std::move(window), std::move(next));
      }
    }
    states[n].clear();
  }

  const States& final_states = states[lat.sink()];
  if (final_states.empty()) throw InvalidArgument("lattice sink is unreachable");
  const Entry* best = nullptr;
  double best_score = 0.0;
  for (const auto& [ctx, entry] : final_states) {
    const double total = entry.score + scorer.log_prob(ctx, std::string(kEos));
    if (!best || path_preferred(total, entry.baseline, entry.arcs, best_score, best->baseline, best->arcs)) {
      best = &entry;
      best_score = total;
    }
  }
  return {path_tokens(lat, best->arcs), best->arcs, best_score};
}

std::string serialize(const AlternativeLattice& lat) {
  std::string out(kHeader);
  out += std::to_string(lat.node_count);
  out += '\n';
  for (const auto& a : lat.arcs) {
    out += std::to_string(a.from) + '\t' + std::to_string(a.to) + '\t' + join(a.tokens) + '\t';
    out += a.gender ? std::string(to_string(*a.gender)) : std::string("-");
    out += a.on_baseline ? "\t1\n" : "\t0\n";
  }
  return out;
}

AlternativeLattice deserialize(std::string_view bytes) {
  auto lines = split_on(bytes, '\n');
  if (lines.empty() || !lines[0].starts_with("#glat ")) throw ParseError("lattice: missing '#glat' header");
  if (!lines[0].starts_with(kHeader)) throw ParseError("lattice: unsupported version in header '" + lines[0] + "'");
  if (lines.back() != "") throw ParseError("lattice: truncated payload (no final newline)");
  lines.pop_back();

  auto number = [](const std::string& s, const std::string& what) {
    char* end = nullptr;
    auto v = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0' || s[0] == '-') throw ParseError("lattice: bad " + what + " '" + s + "'");
    return static_cast<std::size_t>(v);
  };

  AlternativeLattice lat;
  lat.node_count = number(lines[0].substr(kHeader.size()), "node count");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto f = split_on(lines[i], '\t');
    if (f.size() != 5) throw ParseError("lattice line " + std::to_string(i + 1) + ": expected 5 fields");
    Arc a;
    a.from = number(f[0], "node index");
    a.to = number(f[1], "node index");
    a.tokens = split_ws(f[2]);
    if (f[3] != "-") {
      a.gender = parse_gender(f[3]);
      if (!a.gender) throw ParseError("lattice line " + std::to_string(i + 1) + ": bad gender '" + f[3] + "'");
    }
    if (f[4] != "0" && f[4] != "1") throw ParseError("lattice line " + std::to_string(i + 1) + ": bad baseline flag");
    a.on_baseline = f[4] == "1";
    lat.arcs.push_back(std::move(a));
  }
  if (lat.arcs.empty()) throw ParseError("lattice has no arcs");

  // Recover the baseline from the flagged arcs, then check everything.
  for (const auto& a : lat.arcs)
    if (a.to >= lat.node_count || a.from >= a.to) throw ParseError("lattice: arc outside node range");
  auto out = out_arcs(lat);
  std::size_t n = 0;
  while (n != lat.sink()) {
    auto it = std::find_if(out[n].begin(), out[n].end(), [&](std::size_t ai) { return lat.arcs[ai].on_baseline; });
    if (it == out[n].end()) throw ParseError("no baseline path through the lattice");
    const Arc& a = lat.arcs[*it];
    lat.baseline.insert(lat.baseline.end(), a.tokens.begin(), a.tokens.end());
    n = a.to;
  }
  validate(lat);
  return lat;
}

}  // namespace gtag
