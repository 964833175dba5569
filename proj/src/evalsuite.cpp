#include "gtag/evalsuite.hpp"

#include <algorithm>
#include <cmath>

#include "gtag/error.hpp"

namespace gtag {

namespace {

struct Located {
  std::optional<Span> span;
  AlignMethod method = AlignMethod::None;
};

Located locate(const TestItem& item, const Tokens& hyp, const Lexicon& lexicon, const Language& language,
               AlignmentFallback fallback) {
  const TestEntity& e = item.measured_entity();
  if (const NounLexeme* lex = lexicon.find_noun_by_english(e.lemma)) {
    if (auto s = lexicon_align(*lex, hyp, language, lexicon)) return {s, AlignMethod::Lexicon};
  }
  if (!fallback.table) return {};
  auto links = viterbi_align(*fallback.table, item.source, hyp);
  std::optional<std::size_t> lo, hi;
  for (auto [s, t] : links) {
    if (s < e.span.begin || s >= e.span.end) continue;
    lo = lo ? std::min(*lo, t) : t;
    hi = hi ? std::max(*hi, t) : t;
  }
  if (!lo) return {};
  std::size_t begin = *lo;
  if (begin > 0 && lexicon.article_gender(language, hyp[begin - 1])) --begin;
  return {Span{begin, *hi + 1}, AlignMethod::Viterbi};
}

SentenceJudgment judge(const TestItem& item, const Tokens& hyp, const Lexicon& lexicon, const Language& language,
                       AlignmentFallback fallback) {
  SentenceJudgment j;
  j.id = item.id;
  j.gold = item.gold;
  auto loc = locate(item, hyp, lexicon, language, fallback);
  j.span = loc.span;
  j.method = loc.method;
  if (loc.span) {
    TokenView view(hyp);
    j.predicted = classify_gender(view.subspan(loc.span->begin, loc.span->size()), language, lexicon);
  }
  j.correct = j.predicted && j.gold && *j.predicted == *j.gold;
  return j;
}

void check_sizes(std::size_t items, std::size_t hyps) {
  if (items != hyps)
    throw InvalidArgument("test set has " + std::to_string(items) + " items but " + std::to_string(hyps) +
                          " hypotheses were given");
}

nlohmann::ordered_json rate_json(const Rate& r) {
  return {{"percent", r.percent()}, {"correct", r.correct}, {"total", r.total}};
}

}  // namespace

std::string_view to_string(AlignMethod m) {
  switch (m) {
    case AlignMethod::Lexicon: return "lexicon";
    case AlignMethod::Viterbi: return "ibm1";
    case AlignMethod::None: return "none";
  }
  return "none";
}

EvalReport evaluate(const std::vector<TestItem>& items, const std::vector<Tokens>& hypotheses, const Lexicon& lexicon,
                    const Language& language, AlignmentFallback fallback, std::string test_set_id,
                    std::string system_id) {
  check_sizes(items.size(), hypotheses.size());
  EvalReport r;
  r.test_set_id = std::move(test_set_id);
  r.system_id = std::move(system_id);
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto j = judge(items[i], hypotheses[i], lexicon, language, fallback);
    if (!j.span) ++r.unaligned;
    else if (!j.predicted) ++r.unknown;
    auto bump = [&](Rate& rate) {
      ++rate.total;
      if (j.correct) ++rate.correct;
    };
    bump(r.overall);
    if (j.gold) bump(r.by_gender[index_of(*j.gold)]);
    if (items[i].stereotype == Stereotype::Pro) bump(r.pro);
    if (items[i].stereotype == Stereotype::Anti) bump(r.anti);
    r.judgments.push_back(std::move(j));
  }
  return r;
}

L2Result l2_correspondence(const std::vector<TestItem>& secondary_items, const std::vector<Tokens>& hypotheses,
                           const Lexicon& lexicon, const Language& language, AlignmentFallback fallback,
                           std::string test_set_id) {
  check_sizes(secondary_items.size(), hypotheses.size());
  L2Result l2;
  l2.test_set_id = std::move(test_set_id);
  for (std::size_t i = 0; i < secondary_items.size(); ++i) {
    const auto& item = secondary_items[i];
    if (item.measured != Measured::Secondary)
      throw InvalidArgument("item " + item.id + " is not a secondary-entity item");
    auto j = judge(item, hypotheses[i], lexicon, language, fallback);
    ++l2.total;
    if (!j.span) ++l2.unaligned;
    else if (!j.predicted) ++l2.unknown;
    if (j.correct) ++l2.corresponding;
  }
  l2.empty = l2.total == 0;
  l2.percent = l2.empty ? 0.0 : 100.0 * static_cast<double>(l2.corresponding) / static_cast<double>(l2.total);
  return l2;
}

double delta_l2(double system_l2, double baseline_l2) { return system_l2 - baseline_l2; }

double delta_l2(const L2Result& system, const L2Result& baseline) {
  if (system.test_set_id != baseline.test_set_id)
    throw InvalidArgument("ΔL2 needs both systems on the same secondary set ('" + system.test_set_id + "' vs '" +
                          baseline.test_set_id + "')");
  return delta_l2(system.percent, baseline.percent);
}

nlohmann::ordered_json to_json(const EvalReport& r, bool with_judgments) {
  nlohmann::ordered_json j;
  j["test_set"] = r.test_set_id;
  j["system"] = r.system_id;
  j["accuracy"] = rate_json(r.overall);
  j["accuracy_by_gender"] = {{"M", rate_json(r.by_gender[0])}, {"F", rate_json(r.by_gender[1])},
                             {"N", rate_json(r.by_gender[2])}};
  j["accuracy_pro_stereotype"] = rate_json(r.pro);
  j["accuracy_anti_stereotype"] = rate_json(r.anti);
  j["unaligned"] = r.unaligned;
  j["unknown"] = r.unknown;
  if (with_judgments) {
    auto& arr = j["judgments"] = nlohmann::ordered_json::array();
    for (const auto& s : r.judgments) {
      nlohmann::ordered_json e;
      e["id"] = s.id;
      e["span"] = s.span ? nlohmann::ordered_json::array({s.span->begin, s.span->end}) : nlohmann::ordered_json(nullptr);
      e["predicted"] = to_string(s.predicted);
      e["gold"] = to_string(s.gold);
      e["correct"] = s.correct;
      e["alignment"] = to_string(s.method);
      arr.push_back(std::move(e));
    }
  }
  return j;
}

nlohmann::ordered_json to_json(const L2Result& l2) {
  return {{"test_set", l2.test_set_id}, {"l2_correspondence", l2.percent}, {"corresponding", l2.corresponding},
          {"total", l2.total},          {"unaligned", l2.unaligned},        {"unknown", l2.unknown},
          {"empty", l2.empty}};
}

}  // namespace gtag
