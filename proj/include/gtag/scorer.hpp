#pragma once

#include <cstddef>
#include <string>

#include "gtag/tokens.hpp"

namespace gtag {

inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";

/// Order-n Markov scoring contract: the log-probability of `token` may depend
/// only on the last order()-1 tokens of the history (which starts with <s>).
class MarkovScorer {
 public:
  virtual ~MarkovScorer() = default;
  virtual std::size_t order() const = 0;
  /// Natural log. `context` holds at most order()-1 tokens.
  virtual double log_prob(TokenView context, const std::string& token) const = 0;
};

/// Sum of per-token log-probabilities of `tokens` followed by </s>, left to right.
double score_sequence(const MarkovScorer& scorer, TokenView tokens);

/// Keeps the trailing order-1 tokens of a growing history.
class ContextWindow {
 public:
  explicit ContextWindow(std::size_t order) : keep_(order == 0 ? 0 : order - 1) {
    if (keep_) tokens_.emplace_back(kBos);
  }
  void push(const std::string& token) {
    if (!keep_) return;
    tokens_.push_back(token);
    if (tokens_.size() > keep_) tokens_.erase(tokens_.begin());
  }
  const Tokens& tokens() const { return tokens_; }

 private:
  std::size_t keep_;
  Tokens tokens_;
};

}  // namespace gtag
