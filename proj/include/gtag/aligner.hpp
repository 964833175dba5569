#pragma once

// Locating the target realization of a source entity: exact lexicon matching
// first, IBM Model 1 Viterbi links as the fallback.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gtag/morphlex.hpp"
#include "gtag/tokens.hpp"

namespace gtag {

/// First span of `target` realizing any gender variant of `entity`,
/// article+noun preferred over the bare noun at the same position.
std::optional<Span> lexicon_align(const NounLexeme& entity, TokenView target, const Language& language,
                                  const Lexicon& lexicon);

/// t(tgt | src) from IBM Model 1 (no NULL source word).
class TranslationTable {
 public:
  double prob(const std::string& src, const std::string& tgt) const;
  void set(const std::string& src, const std::string& tgt, double p);
  bool has_source(const std::string& src) const { return table_.count(src) != 0; }
  const std::set<std::string>& target_vocabulary() const { return tgt_vocab_; }
  const std::map<std::string, std::map<std::string, double>>& entries() const { return table_; }

  /// TSV `src <TAB> tgt <TAB> prob`, probabilities printed with 17 significant digits.
  void dump(std::ostream& out) const;
  static TranslationTable load(std::istream& in, std::string_view origin = "<table>");
  static TranslationTable load(const std::filesystem::path& path);

 private:
  std::map<std::string, std::map<std::string, double>> table_;
  std::set<std::string> tgt_vocab_;
};

using SentencePair = std::pair<Tokens, Tokens>;

TranslationTable train_ibm1(const std::vector<SentencePair>& parallel, int iterations);

/// One link per target token to its most probable source token (smaller
/// index on ties). Unknown source words score 1/(|target vocab|+1); a target
/// token whose best score is 0 stays unlinked.
std::vector<std::pair<std::size_t, std::size_t>> viterbi_align(const TranslationTable& table, TokenView src,
                                                               TokenView tgt);

}  // namespace gtag
