#pragma once

// WinoMT-style judgments: primary-entity accuracy, secondary-entity label
// correspondence (L2) and its change against a baseline (ΔL2).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gtag/aligner.hpp"
#include "gtag/gender.hpp"
#include "gtag/morphlex.hpp"
#include "gtag/testset.hpp"

namespace gtag {

enum class AlignMethod { Lexicon, Viterbi, None };
std::string_view to_string(AlignMethod m);

struct SentenceJudgment {
  std::string id;
  std::optional<Span> span;  // in the hypothesis
  GenderGuess predicted;
  std::optional<Gender> gold;
  bool correct = false;
  AlignMethod method = AlignMethod::None;
};

struct Rate {
  std::size_t correct = 0;
  std::size_t total = 0;
  double percent() const { return total ? 100.0 * static_cast<double>(correct) / static_cast<double>(total) : 0.0; }
};

struct EvalReport {
  std::string test_set_id;
  std::string system_id;
  Rate overall;
  std::array<Rate, 3> by_gender;  // indexed by gold gender
  Rate pro, anti;
  std::size_t unaligned = 0;
  std::size_t unknown = 0;
  std::vector<SentenceJudgment> judgments;

  double accuracy() const { return overall.percent(); }
};

/// Optional IBM-1 fallback for entities the lexicon cannot place.
struct AlignmentFallback {
  const TranslationTable* table = nullptr;
};

/// Judges each item's measured entity. Unaligned or Unknown counts as incorrect.
EvalReport evaluate(const std::vector<TestItem>& items, const std::vector<Tokens>& hypotheses, const Lexicon& lexicon,
                    const Language& language, AlignmentFallback fallback = {}, std::string test_set_id = "",
                    std::string system_id = "");

/// Secondary-entity inflections that match the primary gold label. This is a
/// correspondence rate, not a correctness score.
struct L2Result {
  std::string test_set_id;
  double percent = 0.0;
  std::size_t corresponding = 0;
  std::size_t total = 0;
  std::size_t unaligned = 0;
  std::size_t unknown = 0;
  bool empty = true;
};

L2Result l2_correspondence(const std::vector<TestItem>& secondary_items, const std::vector<Tokens>& hypotheses,
                           const Lexicon& lexicon, const Language& language, AlignmentFallback fallback = {},
                           std::string test_set_id = "");

double delta_l2(double system_l2, double baseline_l2);
/// Same, after checking both results come from the same secondary set.
double delta_l2(const L2Result& system, const L2Result& baseline);

nlohmann::ordered_json to_json(const EvalReport& report, bool with_judgments = true);
nlohmann::ordered_json to_json(const L2Result& l2);

}  // namespace gtag
