#pragma once

// Experiment orchestration: generate -> train -> adapt -> tag -> lattice ->
// rescore -> evaluate -> report, all into one run directory.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "gtag/corpusgen.hpp"

namespace gtag {

enum class LabelMode { None, Reference, External };

struct ExperimentConfig {
  std::string name = "system";
  std::string lexicon = "builtin";  // or a path
  std::optional<SchemeName> scheme;  // nullopt: no adaptation, base LM only
  LanguagePair languages{"en", "es"};
  bool neutral = false;
  std::size_t lm_order = 3;
  double lambda = 0.5;
  std::filesystem::path base_corpus;  // prefix: <p>.en / <p>.<tgt>
  std::filesystem::path test_primary;
  std::filesystem::path test_secondary;  // empty: derived from test_primary
  std::filesystem::path test_neutral;    // optional
  std::filesystem::path hypotheses;
  std::filesystem::path hypotheses_secondary;  // empty: same as hypotheses
  std::filesystem::path hypotheses_neutral;
  std::filesystem::path general;  // optional prefix: .en, .<tgt>, .hyp.<tgt>
  LabelMode label_mode = LabelMode::None;
  std::filesystem::path labels;
  std::uint64_t seed = 0;
  std::filesystem::path output;

  /// `key = value` lines, '#' comments, `version = 1` required. Relative
  /// paths resolve against `base_dir`.
  static ExperimentConfig parse(std::istream& in, const std::filesystem::path& base_dir,
                                std::string_view origin = "<config>");
  static ExperimentConfig load(const std::filesystem::path& path);
};

std::string_view to_string(LabelMode m);

/// Runs the whole experiment; stage failures surface as StageError.
void run_experiment(const ExperimentConfig& config);

/// Text table (BLEU | Acc | ΔL2) from a finished run directory.
std::string render_report(const std::filesystem::path& run_dir);

/// Reads a file of space-tokenized sentences, one per line.
std::vector<Tokens> read_token_lines(const std::filesystem::path& path);

}  // namespace gtag
