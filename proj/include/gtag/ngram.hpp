#pragma once

// Count-based n-gram LM with interpolated Witten-Bell smoothing, and linear
// interpolation of two such models (the adaptation step).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gtag/scorer.hpp"

namespace gtag {

inline constexpr std::string_view kUnk = "<unk>";

class NGramModel : public MarkovScorer {
 public:
  /// Counts every n-gram up to `order` over <s> w1 .. wk </s>.
  static NGramModel train(const std::vector<Tokens>& corpus, std::size_t order);

  std::size_t order() const override { return order_; }
  double log_prob(TokenView context, const std::string& token) const override;

  /// P(token | context); out-of-vocabulary tokens (also in the context) act as <unk>.
  double prob(TokenView context, const std::string& token) const;

  /// Predictable words: every trained token plus </s>, excluding <s> and <unk>.
  const std::set<std::string>& vocabulary() const { return vocab_; }
  bool known(const std::string& token) const { return vocab_.count(token) != 0; }

  void save(std::ostream& out) const;
  static NGramModel load(std::istream& in, std::string_view origin = "<model>");
  void save(const std::filesystem::path& path) const;
  static NGramModel load(const std::filesystem::path& path);

  friend bool operator==(const NGramModel& a, const NGramModel& b) {
    return a.order_ == b.order_ && a.counts_ == b.counts_;
  }

 private:
  struct History {
    std::uint64_t total = 0;
    std::map<std::string, std::uint64_t> next;
    friend bool operator==(const History&, const History&) = default;
  };

  double prob_mapped(const Tokens& context, const std::string& token) const;
  void finish();

  std::size_t order_ = 1;
  std::map<std::string, History> counts_;  // keyed by space-joined history
  std::set<std::string> vocab_;
};

class InterpolatedModel : public MarkovScorer {
 public:
  InterpolatedModel(NGramModel base, NGramModel adapted, double lambda);

  std::size_t order() const override;
  double log_prob(TokenView context, const std::string& token) const override;
  /// lambda * P_base + (1 - lambda) * P_adapted, each component with its own <unk>.
  double prob(TokenView context, const std::string& token) const;

  const NGramModel& base() const { return base_; }
  const NGramModel& adapted() const { return adapted_; }
  double lambda() const { return lambda_; }

  void save(std::ostream& out) const;
  static InterpolatedModel load(std::istream& in, std::string_view origin = "<model>");

 private:
  NGramModel base_;
  NGramModel adapted_;
  double lambda_;
};

InterpolatedModel interpolate(NGramModel base, NGramModel adapted, double lambda);

}  // namespace gtag
